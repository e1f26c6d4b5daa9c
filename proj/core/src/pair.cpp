#include "biorth/pair.hpp"

#include <cmath>
#include <string>

namespace biorth {

VectorSet::VectorSet(std::vector<CVector> vectors)
    : vectors_(std::move(vectors)) {
  if (vectors_.empty()) throw input_error("VectorSet: need at least 1 vector");
  const std::size_t d = vectors_[0].size();
  if (d == 0) throw input_error("VectorSet: zero-dimensional vectors");
  for (std::size_t j = 0; j < vectors_.size(); ++j) {
    if (vectors_[j].size() != d)
      throw input_error("VectorSet: vector " + std::to_string(j) +
                        " has dimension " + std::to_string(vectors_[j].size()) +
                        ", expected " + std::to_string(d));
    require_finite(vectors_[j], "VectorSet vector");
  }
}

BiorthCheck check_biorthogonal(const VectorSet& v, const VectorSet& w,
                               double tol) {
  if (v.n() != w.n() || v.dim() != w.dim())
    throw input_error("check_biorthogonal: shape mismatch (" +
                      std::to_string(v.n()) + "x" + std::to_string(v.dim()) +
                      " vs " + std::to_string(w.n()) + "x" +
                      std::to_string(w.dim()) + ")");
  double worst = 0.0;
  for (std::size_t j = 0; j < v.n(); ++j) {
    for (std::size_t k = 0; k < w.n(); ++k) {
      Complex bjk = inner(v[j], w[k]);
      if (j == k) bjk -= Complex{1.0, 0.0};
      worst = std::max(worst, std::abs(bjk));
    }
  }
  return BiorthCheck{worst, tol, worst <= tol};
}

VectorSet dual_basis(const VectorSet& v, double condition_cap) {
  if (v.n() > v.dim())
    throw input_error("dual_basis: n = " + std::to_string(v.n()) +
                      " exceeds dimension " + std::to_string(v.dim()));
  const GramMatrix g = gram(v.vectors());
  CholeskyFactor chol = [&] {
    try {
      return CholeskyFactor(g, condition_cap);
    } catch (const singular_error& e) {
      throw linear_dependence_error(
          std::string("dual_basis: vector set is linearly dependent or "
                      "ill-conditioned (") +
          e.what() + ")");
    }
  }();
  // w_k = sum_t c_t v_t with G c = e_k.
  const std::size_t n = v.n();
  const std::size_t d = v.dim();
  std::vector<CVector> w(n, CVector(d, Complex{0.0, 0.0}));
  CVector e(n, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    e[k] = Complex{1.0, 0.0};
    const CVector c = chol.solve(e);
    e[k] = Complex{0.0, 0.0};
    for (std::size_t t = 0; t < n; ++t) {
      if (c[t] == Complex{0.0, 0.0}) continue;
      const CVector& vt = v[t];
      for (std::size_t i = 0; i < d; ++i) w[k][i] += c[t] * vt[i];
    }
  }
  return VectorSet(std::move(w));
}

BiorthogonalPair dual_pair(const VectorSet& v, double tol,
                           double condition_cap) {
  VectorSet w = dual_basis(v, condition_cap);
  const BiorthCheck chk = check_biorthogonal(v, w, tol);
  if (!chk.pass)
    throw certification_error("dual_pair: residual " +
                                  std::to_string(chk.residual) +
                                  " exceeds tolerance " + std::to_string(tol),
                              chk.residual);
  return BiorthogonalPair{v, std::move(w), chk.residual};
}

BiorthogonalPair matrix_pair(const CMatrix& a, double tol,
                             double condition_cap) {
  if (a.rows() != a.cols())
    throw input_error("matrix_pair: matrix must be square");
  const std::size_t n = a.rows();
  std::vector<CVector> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j] = a.col(j);
  const std::vector<CVector> rows = inverse_rows(a, condition_cap);
  std::vector<CVector> w(n, CVector(n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) w[k][i] = std::conj(rows[k][i]);
  VectorSet vset(std::move(cols));
  VectorSet wset(std::move(w));
  const BiorthCheck chk = check_biorthogonal(vset, wset, tol);
  if (!chk.pass)
    throw certification_error("matrix_pair: residual " +
                                  std::to_string(chk.residual) +
                                  " exceeds tolerance " + std::to_string(tol),
                              chk.residual);
  return BiorthogonalPair{std::move(vset), std::move(wset), chk.residual};
}

InequalityReport inequality_functional(const BiorthogonalPair& pair,
                                       double tol) {
  if (pair.v.n() != pair.w.n() || pair.v.dim() != pair.w.dim())
    throw input_error("inequality_functional: pair shape mismatch");
  if (pair.residual > tol)
    throw certification_error(
        "inequality_functional: pair residual " +
            std::to_string(pair.residual) + " exceeds tolerance " +
            std::to_string(tol),
        pair.residual);
  const std::size_t n = pair.v.n();
  const std::size_t d = pair.v.dim();
  InequalityReport rep;
  rep.n = n;
  rep.lhs = std::log(static_cast<double>(n));
  for (std::size_t m = 0; m < n; ++m)
    rep.w_max = std::max(rep.w_max, norm2(pair.w[m]));
  CVector running(d, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    const CVector& vk = pair.v[k];
    for (std::size_t i = 0; i < d; ++i) running[i] += vk[i];
    rep.sigma_max = std::max(rep.sigma_max, norm2(running));
  }
  rep.product = rep.w_max * rep.sigma_max;
  rep.c_empirical = (n <= 1 || rep.product <= 0.0) ? 0.0 : rep.lhs / rep.product;
  return rep;
}

BiorthogonalPair swapped(const BiorthogonalPair& pair) {
  return BiorthogonalPair{pair.w, pair.v, pair.residual};
}

}  // namespace biorth
