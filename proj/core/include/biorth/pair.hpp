// Bi-orthogonal pairs: dual bases of linearly independent sets, pairs built
// from invertible matrices (columns vs conjugated inverse rows), residual
// certification, and the two-sided inequality functional
//   lhs = log n,  product = max_m ||w_m|| * max_k ||sum_{j<=k} v_j||.

#pragma once

#include <cstddef>
#include <vector>

#include "biorth/linalg.hpp"

namespace biorth {

inline constexpr double kDefaultCertTol = 1e-8;

// Ordered family of complex vectors with a common dimension. Order matters:
// partial sums depend on it.
class VectorSet {
 public:
  VectorSet() = default;
  explicit VectorSet(std::vector<CVector> vectors);

  std::size_t n() const { return vectors_.size(); }
  std::size_t dim() const { return vectors_.empty() ? 0 : vectors_[0].size(); }

  const CVector& operator[](std::size_t j) const { return vectors_[j]; }
  const std::vector<CVector>& vectors() const { return vectors_; }

 private:
  std::vector<CVector> vectors_;
};

struct BiorthogonalPair {
  VectorSet v;
  VectorSet w;
  double residual = 0.0;  // max_{j,k} |<v_j, w_k> - delta_jk|
};

struct BiorthCheck {
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct InequalityReport {
  std::size_t n = 0;
  double lhs = 0.0;       // log n (natural)
  double w_max = 0.0;     // max_m ||w_m||
  double sigma_max = 0.0; // max_k ||sum_{j<=k} v_j||
  double product = 0.0;
  double c_empirical = 0.0;  // lhs / product; 0 when n = 1
};

// Max residual of <v_j, w_k> against delta_jk, with pass/fail at tol.
BiorthCheck check_biorthogonal(const VectorSet& v, const VectorSet& w,
                               double tol = kDefaultCertTol);

// The unique W in span(V) with <v_j, w_k> = delta_jk, via the Gram system
// (one Cholesky solve per dual vector). Requires n <= dim and an invertible
// Gram; failure surfaces as linear_dependence_error carrying the condition
// estimate in its message.
VectorSet dual_basis(const VectorSet& v,
                     double condition_cap = kDefaultConditionCap);

// Certified pair (V, dual_basis(V)); throws certification_error if the
// residual exceeds tol.
BiorthogonalPair dual_pair(const VectorSet& v,
                           double tol = kDefaultCertTol,
                           double condition_cap = kDefaultConditionCap);

// Pair from an invertible matrix: V = columns of A, W = conjugated
// transposed rows of A^{-1}.
BiorthogonalPair matrix_pair(const CMatrix& a,
                             double tol = kDefaultCertTol,
                             double condition_cap = kDefaultConditionCap);

// Both sides of the pair inequality, computed with one pass of running
// partial sums. Pre: pair certified (residual <= tol).
InequalityReport inequality_functional(const BiorthogonalPair& pair,
                                       double tol = kDefaultCertTol);

// The same pair taken in the other order (roles of V and W exchanged).
BiorthogonalPair swapped(const BiorthogonalPair& pair);

}  // namespace biorth
