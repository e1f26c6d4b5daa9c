#include "biorth/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace biorth {

namespace {

std::string idx_msg(const char* what, std::size_t i) {
  return std::string(what) + " at index " + std::to_string(i);
}

// Hager/Higham 1-norm estimate of ||B^{-1}||_1, given solves with B and B^H.
template <typename Solve, typename SolveAdjoint>
double inverse_one_norm_estimate(std::size_t n, Solve&& solve,
                                 SolveAdjoint&& solve_adjoint) {
  if (n == 0) return 0.0;
  CVector x(n, Complex{1.0 / static_cast<double>(n), 0.0});
  double est = 0.0;
  std::size_t last_j = n;  // sentinel
  for (int iter = 0; iter < 5; ++iter) {
    CVector y = solve(x);
    double y1 = 0.0;
    for (const Complex& v : y) y1 += std::abs(v);
    est = std::max(est, y1);
    // xi = componentwise phase of y (1 where y vanishes)
    CVector xi(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double a = std::abs(y[i]);
      xi[i] = a > 0.0 ? y[i] / a : Complex{1.0, 0.0};
    }
    CVector z = solve_adjoint(xi);
    std::size_t j = 0;
    double zmax = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = std::abs(z[i]);
      if (a > zmax) {
        zmax = a;
        j = i;
      }
    }
    double zx_re = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      zx_re += (z[i] * std::conj(x[i])).real();
    if (zmax <= zx_re + 1e-14 * (1.0 + std::abs(zx_re)) || j == last_j) break;
    std::fill(x.begin(), x.end(), Complex{0.0, 0.0});
    x[j] = Complex{1.0, 0.0};
    last_j = j;
  }
  return est;
}

}  // namespace

void require_finite(const CVector& v, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag()))
      throw input_error(idx_msg(what, i) + ": non-finite entry");
  }
}

Complex inner(const CVector& u, const CVector& v) {
  if (u.size() != v.size())
    throw input_error("inner: length mismatch (" + std::to_string(u.size()) +
                      " vs " + std::to_string(v.size()) + ")");
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * std::conj(v[i]);
  return s;
}

double norm2(const CVector& v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, CVector entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_)
    throw input_error("CMatrix: rows*cols = " + std::to_string(rows_ * cols_) +
                      " but " + std::to_string(entries_.size()) +
                      " entries given");
  require_finite(entries_, "CMatrix entries");
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Complex{1.0, 0.0};
  return m;
}

CVector CMatrix::row(std::size_t i) const {
  CVector r(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

CVector CMatrix::col(std::size_t j) const {
  CVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

double CMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

double CMatrix::one_norm() const {
  double best = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += std::abs(at(i, j));
    best = std::max(best, s);
  }
  return best;
}

CMatrix CMatrix::conjugate_transpose() const {
  CMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = std::conj(at(i, j));
  return t;
}

CVector CMatrix::apply(const CVector& x) const {
  if (x.size() != cols_) throw input_error("CMatrix::apply: size mismatch");
  CVector y(rows_, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < rows_; ++i) {
    Complex s{0.0, 0.0};
    const Complex* r = &entries_[i * cols_];
    for (std::size_t j = 0; j < cols_; ++j) s += r[j] * x[j];
    y[i] = s;
  }
  return y;
}

CMatrix CMatrix::multiply(const CMatrix& other) const {
  if (cols_ != other.rows_)
    throw input_error("CMatrix::multiply: shape mismatch");
  CMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Complex aik = at(i, k);
      if (aik == Complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < other.cols_; ++j)
        out.at(i, j) += aik * other.at(k, j);
    }
  }
  return out;
}

GramMatrix gram(const std::vector<CVector>& vectors) {
  const std::size_t n = vectors.size();
  if (n == 0) throw input_error("gram: empty vector set");
  const std::size_t d = vectors[0].size();
  for (std::size_t j = 0; j < n; ++j) {
    if (vectors[j].size() != d)
      throw input_error(idx_msg("gram: dimension mismatch", j));
  }
  GramMatrix g;
  g.n = n;
  g.m = CMatrix(n, n);
  // G[j][k] = inner(v_k, v_j); fill upper triangle, mirror the conjugate.
  for (std::size_t j = 0; j < n; ++j) {
    g.m.at(j, j) = Complex{std::real(inner(vectors[j], vectors[j])), 0.0};
    for (std::size_t k = j + 1; k < n; ++k) {
      const Complex v = inner(vectors[k], vectors[j]);
      g.m.at(j, k) = v;
      g.m.at(k, j) = std::conj(v);
    }
  }
  return g;
}

CholeskyFactor::CholeskyFactor(const GramMatrix& g, double condition_cap)
    : n_(g.n), lower_(g.n, g.n), original_(g.m) {
  if (g.m.rows() != n_ || g.m.cols() != n_)
    throw input_error("CholeskyFactor: Gram matrix shape mismatch");
  for (std::size_t j = 0; j < n_; ++j) {
    double diag = std::real(g.m.at(j, j));
    for (std::size_t k = 0; k < j; ++k) diag -= std::norm(lower_.at(j, k));
    if (!(diag > 0.0))
      throw singular_error("cholesky: non-positive pivot " +
                           std::to_string(diag) + " at index " +
                           std::to_string(j));
    const double ljj = std::sqrt(diag);
    lower_.at(j, j) = Complex{ljj, 0.0};
    for (std::size_t i = j + 1; i < n_; ++i) {
      Complex s = g.m.at(i, j);
      for (std::size_t k = 0; k < j; ++k)
        s -= lower_.at(i, k) * std::conj(lower_.at(j, k));
      lower_.at(i, j) = s / ljj;
    }
  }
  const double inv_est = inverse_one_norm_estimate(
      n_, [this](const CVector& b) { return solve_raw(b); },
      [this](const CVector& b) { return solve_raw(b); });  // G^H = G
  condition_ = original_.one_norm() * inv_est;
  if (condition_ > condition_cap)
    throw singular_error("cholesky: condition estimate " +
                         std::to_string(condition_) + " exceeds cap " +
                         std::to_string(condition_cap));
}

CVector CholeskyFactor::solve_raw(const CVector& rhs) const {
  CVector y(rhs);
  // L y = rhs
  for (std::size_t i = 0; i < n_; ++i) {
    Complex s = rhs[i];
    for (std::size_t k = 0; k < i; ++k) s -= lower_.at(i, k) * y[k];
    y[i] = s / lower_.at(i, i);
  }
  // L^H x = y
  CVector x(n_);
  for (std::size_t ii = n_; ii-- > 0;) {
    Complex s = y[ii];
    for (std::size_t k = ii + 1; k < n_; ++k)
      s -= std::conj(lower_.at(k, ii)) * x[k];
    x[ii] = s / lower_.at(ii, ii);
  }
  return x;
}

CVector CholeskyFactor::solve(const CVector& rhs) const {
  if (rhs.size() != n_) throw input_error("solve_hpd: rhs length mismatch");
  CVector x = solve_raw(rhs);
  // one step of iterative refinement
  CVector r = original_.apply(x);
  for (std::size_t i = 0; i < n_; ++i) r[i] = rhs[i] - r[i];
  const CVector dx = solve_raw(r);
  for (std::size_t i = 0; i < n_; ++i) x[i] += dx[i];
  return x;
}

LuFactor::LuFactor(const CMatrix& a, double condition_cap)
    : n_(a.rows()), lu_(a), original_(a), perm_(a.rows()) {
  if (a.rows() != a.cols())
    throw input_error("LuFactor: matrix must be square");
  for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;
  for (std::size_t k = 0; k < n_; ++k) {
    // partial pivot
    std::size_t p = k;
    double best = std::abs(lu_.at(k, k));
    for (std::size_t i = k + 1; i < n_; ++i) {
      const double v = std::abs(lu_.at(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (!(best > 0.0))
      throw singular_error("lu: zero pivot at column " + std::to_string(k));
    if (p != k) {
      for (std::size_t j = 0; j < n_; ++j)
        std::swap(lu_.at(p, j), lu_.at(k, j));
      std::swap(perm_[p], perm_[k]);
    }
    const Complex piv = lu_.at(k, k);
    for (std::size_t i = k + 1; i < n_; ++i) {
      const Complex m = lu_.at(i, k) / piv;
      lu_.at(i, k) = m;
      if (m == Complex{0.0, 0.0}) continue;
      for (std::size_t j = k + 1; j < n_; ++j)
        lu_.at(i, j) -= m * lu_.at(k, j);
    }
  }
  const double inv_est = inverse_one_norm_estimate(
      n_, [this](const CVector& b) { return solve_raw(b); },
      [this](const CVector& b) { return solve_adjoint(b); });
  condition_ = original_.one_norm() * inv_est;
  if (condition_ > condition_cap)
    throw singular_error("lu: condition estimate " + std::to_string(condition_) +
                         " exceeds cap " + std::to_string(condition_cap));
}

CVector LuFactor::solve_raw(const CVector& rhs) const {
  // P A = L U, so solve L y = P rhs, then U x = y.
  CVector y(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    Complex s = rhs[perm_[i]];
    for (std::size_t k = 0; k < i; ++k) s -= lu_.at(i, k) * y[k];
    y[i] = s;
  }
  CVector x(n_);
  for (std::size_t ii = n_; ii-- > 0;) {
    Complex s = y[ii];
    for (std::size_t k = ii + 1; k < n_; ++k) s -= lu_.at(ii, k) * x[k];
    x[ii] = s / lu_.at(ii, ii);
  }
  return x;
}

CVector LuFactor::solve(const CVector& rhs) const {
  if (rhs.size() != n_) throw input_error("lu solve: rhs length mismatch");
  CVector x = solve_raw(rhs);
  CVector r = original_.apply(x);
  for (std::size_t i = 0; i < n_; ++i) r[i] = rhs[i] - r[i];
  const CVector dx = solve_raw(r);
  for (std::size_t i = 0; i < n_; ++i) x[i] += dx[i];
  return x;
}

CVector LuFactor::solve_adjoint(const CVector& rhs) const {
  if (rhs.size() != n_)
    throw input_error("lu solve_adjoint: rhs length mismatch");
  // A^H x = rhs with A = P^T L U:  A^H = U^H L^H P, so
  // U^H a = rhs (forward), L^H b = a (backward), x = P^T b.
  CVector a(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    Complex s = rhs[i];
    for (std::size_t k = 0; k < i; ++k) s -= std::conj(lu_.at(k, i)) * a[k];
    a[i] = s / std::conj(lu_.at(i, i));
  }
  CVector b(n_);
  for (std::size_t ii = n_; ii-- > 0;) {
    Complex s = a[ii];
    for (std::size_t k = ii + 1; k < n_; ++k)
      s -= std::conj(lu_.at(k, ii)) * b[k];
    b[ii] = s;  // L has unit diagonal
  }
  CVector x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[perm_[i]] = b[i];
  return x;
}

CVector solve_hpd(const GramMatrix& g, const CVector& rhs,
                  double condition_cap) {
  CholeskyFactor chol(g, condition_cap);
  return chol.solve(rhs);
}

std::vector<CVector> inverse_rows(const CMatrix& a, double condition_cap) {
  if (a.rows() != a.cols())
    throw input_error("inverse_rows: matrix must be square");
  const std::size_t n = a.rows();
  LuFactor lu(a, condition_cap);
  // Solve A x_j = e_j; x_j is column j of A^{-1}.
  std::vector<CVector> rows(n, CVector(n, Complex{0.0, 0.0}));
  CVector e(n, Complex{0.0, 0.0});
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = Complex{1.0, 0.0};
    const CVector x = lu.solve(e);
    e[j] = Complex{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) rows[i][j] = x[i];
  }
  return rows;
}

}  // namespace biorth
