// Discretized function-space layer on the uniform grid x_i = i/N over [0,1)
// with normalized counting measure: trigonometric systems, Dirichlet kernels
// and their L^1 norms, maximal partial-sum functions, the Salem pair
// construction, Fourier truncation maximal functions, and corollary reports.
//
// Domain normalization, once: the circle [0,2pi) with e^{imx} and measure
// dx/2pi is mapped to [0,1) with e^{2pi i m x} and measure dx. All L^p norms
// agree under this map.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "biorth/pair.hpp"

namespace biorth {

// Uniform grid x_i = i/N on [0,1); every point carries weight 1/N.
class Grid {
 public:
  explicit Grid(std::size_t size);
  std::size_t size() const { return size_; }
  double point(std::size_t i) const {
    return static_cast<double>(i) / static_cast<double>(size_);
  }
  bool operator==(const Grid& other) const { return size_ == other.size_; }

 private:
  std::size_t size_ = 0;
};

class GridFunction {
 public:
  GridFunction(Grid grid, std::vector<Complex> samples);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return samples_.size(); }
  const std::vector<Complex>& samples() const { return samples_; }
  std::vector<Complex>& samples() { return samples_; }
  const Complex& operator[](std::size_t i) const { return samples_[i]; }
  Complex& operator[](std::size_t i) { return samples_[i]; }

  double l1() const;    // (1/N) sum |f_i|
  double l2() const;    // ((1/N) sum |f_i|^2)^{1/2}
  double linf() const;  // max |f_i|

 private:
  Grid grid_;
  std::vector<Complex> samples_;
};

// h_1,...,h_n on a common grid with (1/N) sum h_j conj(h_k) = delta_jk.
// The constructor enforces the orthonormality invariant.
class OrthonormalSystem {
 public:
  static constexpr double kOrthonormalTol = 1e-10;

  OrthonormalSystem(Grid grid, std::vector<std::vector<Complex>> functions);

  std::size_t n() const { return functions_.size(); }
  const Grid& grid() const { return grid_; }
  const std::vector<Complex>& function(std::size_t j) const {
    return functions_[j];
  }
  // Worst deviation of the system Gram from the identity.
  double orthonormality_residual() const;

 private:
  Grid grid_;
  std::vector<std::vector<Complex>> functions_;
};

// Non-zero complex coefficients a_1,...,a_n.
class CoefficientSeq {
 public:
  explicit CoefficientSeq(std::vector<Complex> values);
  static CoefficientSeq ones(std::size_t n);

  std::size_t size() const { return values_.size(); }
  const Complex& operator[](std::size_t k) const { return values_[k]; }
  const std::vector<Complex>& values() const { return values_; }
  double min_abs() const;

 private:
  std::vector<Complex> values_;
};

// Running partial sums S_k = sum_{j<=k} a_j h_j, the maximal function
// S*(x) = max_k |S_k(x)|, and M_n = max_j ||h_j||_inf.
struct MaximalData {
  std::vector<GridFunction> partial_sums;  // S_1,...,S_n
  std::vector<double> s_star;              // S*(x) >= 0
  double sup_norm_max = 0.0;               // M_n
  double s_star_l1() const;
};

// h_k(x_i) = exp(2 pi i m_k x_i) for strictly increasing integer m_k.
// Exactly orthonormal on the grid by discrete character orthogonality.
// Pre: N > 2 max|m_k| (alias-free), else resolution_error.
OrthonormalSystem trig_system(const std::vector<long>& freqs, const Grid& grid);

// D_m(x) = sum_{k=-m..m} e^{2 pi i k x} via the closed form
// sin((2m+1) pi x)/sin(pi x), with D_m(0) = 2m+1. Pre: N > 2(2m+1).
GridFunction dirichlet_kernel(std::size_t m, const Grid& grid);

// ||D_m||_1 by midpoint grid quadrature at resolution N.
// Pre: N >= 64(2m+1); relative quadrature error <= 1e-4 there.
double lebesgue_constant(std::size_t m, std::size_t resolution);

MaximalData maximal_data(const CoefficientSeq& a, const OrthonormalSystem& h);

// Salem construction: v_j = a_j h_j (S*)^{-1/2}, w_j = h_j (S*)^{1/2}/conj(a_j)
// where S* > 0; both 0 where S*(x) < 1e-14 ||S*||_inf. Returned as vectors in
// C^N scaled by 1/sqrt(N), so the plain Euclidean inner product equals the
// grid inner product (1/N) sum f conj(g) and L^2 norms carry over.
BiorthogonalPair salem_pair(const CoefficientSeq& a, const OrthonormalSystem& h,
                            const MaximalData& md, double tol = kDefaultCertTol);
BiorthogonalPair salem_pair(const CoefficientSeq& a, const OrthonormalSystem& h,
                            double tol = kDefaultCertTol);

// Fourier coefficients c_k, |k| <= kmax, of a grid function; index k+kmax.
std::vector<Complex> fourier_coefficients(const GridFunction& p,
                                          std::size_t kmax);

// Degree-m Fourier truncation D_m * p (symmetric partial sum).
GridFunction fourier_partial_sum(const GridFunction& p, std::size_t m);

// S*p(x) = max over 0 <= m <= degree of |D_m * p(x)|, via running symmetric
// spectral partial sums. Pre: p is a trigonometric polynomial of degree
// <= degree on its grid (checked by the vanishing of high-frequency energy
// through Parseval), and N > 2*degree.
GridFunction fourier_maximal(const GridFunction& p, std::size_t degree);

enum class CorollaryKind { maxmaxmax, decreasing, littlewood, maximal_lemma };

std::string to_string(CorollaryKind kind);
CorollaryKind corollary_kind_from_string(const std::string& name);

struct CorollaryReport {
  CorollaryKind kind;
  std::size_t n = 0;
  std::size_t grid_size = 0;
  double lhs = 0.0;
  std::vector<double> rhs_factors;
  double product = 0.0;      // product of rhs_factors
  double c_empirical = 0.0;  // smallest c making the designated display true
};

// Designated displays:
//   maxmaxmax:  (min|a_k| log n)^2 <= c * M_n^2 ||S*||_1 max_k||S_k||_1
//   decreasing: (a_n log n)^2      <= c * M^2  ||S*||_1 max_k||S_k||_1
//               (requires positive non-increasing a)
//   littlewood: min|a_k| log n / sqrt(log(2 m_n + 1)) <= c max_k||S_k||_1
//               (requires strictly increasing natural frequencies)
//   maximal_lemma: ||S*p||_1 <= c log(2 m_n + 1) ||p||_1 for p = sum a_j h_j
CorollaryReport corollary_report(CorollaryKind kind, const CoefficientSeq& a,
                                 const std::vector<long>& freqs,
                                 const Grid& grid);

}  // namespace biorth
