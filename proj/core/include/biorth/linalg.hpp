// Dense complex linear algebra used everywhere else: inner products,
// Gram matrices, Hermitian positive-definite solves (Cholesky) and row-wise
// matrix inversion (LU with partial pivoting). Everything is in-repo; desk
// scale is n up to a few hundred.
//
// Inner product convention, stated once and inherited by every module:
// inner(u, v) = sum_i u_i * conj(v_i)  — conjugation on the SECOND argument.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "biorth/errors.hpp"

namespace biorth {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

inline constexpr double kDefaultConditionCap = 1e12;

// Throws input_error if any entry is non-finite.
void require_finite(const CVector& v, const char* what);

Complex inner(const CVector& u, const CVector& v);
double norm2(const CVector& v);

// Row-major dense complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}
  CMatrix(std::size_t rows, std::size_t cols, CVector entries);

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Complex& at(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  const CVector& entries() const { return entries_; }

  CVector row(std::size_t i) const;
  CVector col(std::size_t j) const;

  double frobenius_norm() const;
  double one_norm() const;  // max absolute column sum

  CMatrix conjugate_transpose() const;
  CVector apply(const CVector& x) const;        // A x
  CMatrix multiply(const CMatrix& other) const; // A B

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  CVector entries_;
};

// Hermitian matrix of pairwise inner products, G[j][k] = inner(v_k, v_j).
// Hermitian exactly by construction (upper triangle mirrored).
struct GramMatrix {
  std::size_t n = 0;
  CMatrix m;
};

// Cholesky factorization G = L L^H of a Hermitian positive definite matrix,
// with a Hager-style 1-norm condition estimate computed from the factor.
class CholeskyFactor {
 public:
  // Throws singular_error naming the offending pivot index if a pivot is
  // not positive, or if the condition estimate exceeds `condition_cap`.
  CholeskyFactor(const GramMatrix& g, double condition_cap = kDefaultConditionCap);

  CVector solve(const CVector& rhs) const;  // one refinement step included
  double condition_estimate() const { return condition_; }
  std::size_t size() const { return n_; }

 private:
  CVector solve_raw(const CVector& rhs) const;
  std::size_t n_ = 0;
  CMatrix lower_;
  CMatrix original_;
  double condition_ = 0.0;
};

// LU factorization with partial pivoting, P A = L U.
class LuFactor {
 public:
  // Throws singular_error on a zero pivot after pivoting, or when the
  // condition estimate exceeds `condition_cap`.
  explicit LuFactor(const CMatrix& a, double condition_cap = kDefaultConditionCap);

  CVector solve(const CVector& rhs) const;          // A x = rhs, refined
  CVector solve_adjoint(const CVector& rhs) const;  // A^H x = rhs
  double condition_estimate() const { return condition_; }
  std::size_t size() const { return n_; }

 private:
  CVector solve_raw(const CVector& rhs) const;
  std::size_t n_ = 0;
  CMatrix lu_;
  CMatrix original_;
  std::vector<std::size_t> perm_;  // row i of PA is row perm_[i] of A
  double condition_ = 0.0;
};

GramMatrix gram(const std::vector<CVector>& vectors);

// Solves G x = rhs for Hermitian positive definite G.
CVector solve_hpd(const GramMatrix& g, const CVector& rhs,
                  double condition_cap = kDefaultConditionCap);

// Rows b_1,...,b_n of A^{-1}, in order.
std::vector<CVector> inverse_rows(const CMatrix& a,
                                  double condition_cap = kDefaultConditionCap);

}  // namespace biorth
