#include "biorth/proof.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace biorth {

namespace {

constexpr double kTieTol = 1e-12;       // stopping-time argmax ties
constexpr double kStructuralTol = 1e-10;  // structural identity gate

}  // namespace

Complex v_inner(const VField& p, const VField& q) {
  if (p.grid_size != q.grid_size || p.dim != q.dim)
    throw input_error("v_inner: shape mismatch");
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < p.values.size(); ++i)
    s += p.values[i] * std::conj(q.values[i]);
  return s / static_cast<double>(p.grid_size);
}

double v_norm2sq(const VField& p) {
  double s = 0.0;
  for (const Complex& z : p.values) s += std::norm(z);
  return s / static_cast<double>(p.grid_size);
}

VField make_p_field(const OrthonormalSystem& f, std::size_t k,
                    const CVector& w_k) {
  const std::size_t n_grid = f.grid().size();
  VField p(n_grid, w_k.size());
  const auto& fk = f.function(k);
  for (std::size_t x = 0; x < n_grid; ++x) {
    Complex* row = p.at(x);
    for (std::size_t i = 0; i < w_k.size(); ++i) row[i] = fk[x] * w_k[i];
  }
  return p;
}

double bessel_slack(const VField& p, const OrthonormalSystem& f,
                    const VectorSet& w) {
  if (w.n() != f.n()) throw input_error("bessel_slack: n mismatch");
  if (p.grid_size != f.grid().size() || p.dim != w.dim())
    throw input_error("bessel_slack: shape mismatch");
  const std::size_t n = f.n();
  const std::size_t n_grid = p.grid_size;
  double coeff_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& fk = f.function(k);
    const CVector& wk = w[k];
    Complex ip{0.0, 0.0};
    for (std::size_t x = 0; x < n_grid; ++x) {
      const Complex* row = p.at(x);
      Complex px_wk{0.0, 0.0};
      for (std::size_t i = 0; i < wk.size(); ++i)
        px_wk += row[i] * std::conj(wk[i]);
      ip += px_wk * std::conj(fk[x]);
    }
    ip /= static_cast<double>(n_grid);
    const double wn = norm2(wk);
    if (wn > 0.0) coeff_sum += std::norm(ip) / (wn * wn);
  }
  return v_norm2sq(p) - coeff_sum;
}

double StoppingData::maximal_l1() const {
  double s = 0.0;
  for (double v : maximal) s += v;
  return s / static_cast<double>(maximal.size());
}

StoppingData stopping_data(const OrthonormalSystem& f) {
  const std::size_t n = f.n();
  const std::size_t n_grid = f.grid().size();
  StoppingData sd;
  sd.maximal.assign(n_grid, 0.0);
  sd.m_of_x.assign(n_grid, 1);
  sd.stopped_sum.assign(n_grid, Complex{0.0, 0.0});

  // First pass: M(x). Second pass: least index attaining it within the
  // relative tie tolerance, plus the stopped sum there.
  std::vector<Complex> running(n_grid, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    const auto& fk = f.function(k);
    for (std::size_t x = 0; x < n_grid; ++x) {
      running[x] += fk[x];
      sd.maximal[x] = std::max(sd.maximal[x], std::abs(running[x]));
    }
  }
  std::fill(running.begin(), running.end(), Complex{0.0, 0.0});
  std::vector<bool> found(n_grid, false);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& fk = f.function(k);
    for (std::size_t x = 0; x < n_grid; ++x) {
      running[x] += fk[x];
      if (!found[x] &&
          std::abs(running[x]) >= sd.maximal[x] * (1.0 - kTieTol)) {
        found[x] = true;
        sd.m_of_x[x] = static_cast<std::uint32_t>(k + 1);
        sd.stopped_sum[x] = running[x];
      }
    }
  }
  sd.ladder.assign(n + 1, std::vector<std::uint8_t>(n_grid, 0));
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t x = 0; x < n_grid; ++x)
      sd.ladder[k - 1][x] = sd.m_of_x[x] >= k ? 1 : 0;
  return sd;
}

GridFunction phase_witness(const GridFunction& s_at_m) {
  const std::size_t n_grid = s_at_m.size();
  double s_inf = 0.0;
  for (std::size_t x = 0; x < n_grid; ++x)
    s_inf = std::max(s_inf, std::abs(s_at_m[x]));
  const double cut = 1e-14 * s_inf;
  std::vector<Complex> g(n_grid);
  for (std::size_t x = 0; x < n_grid; ++x) {
    const double a = std::abs(s_at_m[x]);
    g[x] = a > cut ? s_at_m[x] / a : Complex{1.0, 0.0};
  }
  return GridFunction(s_at_m.grid(), std::move(g));
}

ChainReport chain_check(const OrthonormalSystem& f, const BiorthogonalPair& pair,
                        const GridFunction& g, double tol) {
  const std::size_t n = f.n();
  const std::size_t n_grid = f.grid().size();
  const std::size_t d = pair.v.dim();
  if (pair.v.n() != n)
    throw input_error("chain_check: pair size " + std::to_string(pair.v.n()) +
                      " does not match system size " + std::to_string(n));
  if (!(g.grid() == f.grid()))
    throw input_error("chain_check: G lives on a different grid");
  if (pair.residual > tol)
    throw certification_error("chain_check: pair residual " +
                                  std::to_string(pair.residual) +
                                  " exceeds tolerance " + std::to_string(tol),
                              pair.residual);
  for (std::size_t x = 0; x < n_grid; ++x) {
    if (std::abs(g[x]) > 1.0 + 1e-12)
      throw input_error("chain_check: |G| exceeds 1 at grid point " +
                        std::to_string(x));
  }

  const StoppingData sd = stopping_data(f);

  // sigma_k = sum_{j<=k} v_j and norms.
  std::vector<CVector> sigma(n, CVector(d, Complex{0.0, 0.0}));
  std::vector<double> sigma_normsq(n, 0.0);
  {
    CVector acc(d, Complex{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
      const CVector& vk = pair.v[k];
      for (std::size_t i = 0; i < d; ++i) acc[i] += vk[i];
      sigma[k] = acc;
      double s = 0.0;
      for (const Complex& z : acc) s += std::norm(z);
      sigma_normsq[k] = s;
    }
  }
  double sigma_normsq_max = 0.0;
  for (double s : sigma_normsq) sigma_normsq_max = std::max(sigma_normsq_max, s);

  std::vector<double> w_normsq(n, 0.0);
  double w_normsq_max = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double wn = norm2(pair.w[k]);
    w_normsq[k] = wn * wn;
    w_normsq_max = std::max(w_normsq_max, w_normsq[k]);
    if (!(w_normsq[k] > 0.0))
      throw input_error("chain_check: w_" + std::to_string(k) + " vanishes");
  }

  // (i) pairwise orthogonality of p_k = F_k w_k in V, via the factorized
  // inner product <p_k, p_j>_V = [(1/N) sum F_k conj(F_j)] <w_k, w_j>_H.
  {
    const double inv_n = 1.0 / static_cast<double>(n_grid);
    for (std::size_t k = 0; k < n; ++k) {
      const auto& fk = f.function(k);
      for (std::size_t j = k + 1; j < n; ++j) {
        const auto& fj = f.function(j);
        Complex cross{0.0, 0.0};
        for (std::size_t x = 0; x < n_grid; ++x)
          cross += fk[x] * std::conj(fj[x]);
        cross *= inv_n;
        const Complex ip = cross * inner(pair.w[k], pair.w[j]);
        const double scale =
            std::sqrt(w_normsq[k] * w_normsq[j]);  // = ||p_k|| ||p_j||
        if (std::abs(ip) > kStructuralTol * std::max(scale, 1.0))
          throw internal_error("chain_check: p_" + std::to_string(j) +
                               ", p_" + std::to_string(k) +
                               " not orthogonal (|ip| = " +
                               std::to_string(std::abs(ip)) + ")");
      }
    }
  }

  // P_G(x) = G(x) sum_j f_j(x) v_j, accumulated through the ladder so the
  // Abel comparison below follows an independent summation path.
  VField p_g(n_grid, d);
  for (std::size_t k = 1; k <= n; ++k) {
    const auto& fk = sd.ladder[k - 1];
    const CVector& vk = pair.v[k - 1];
    for (std::size_t x = 0; x < n_grid; ++x) {
      if (!fk[x]) continue;
      Complex* row = p_g.at(x);
      for (std::size_t i = 0; i < d; ++i) row[i] += vk[i];
    }
  }
  for (std::size_t x = 0; x < n_grid; ++x) {
    Complex* row = p_g.at(x);
    const Complex gx = g[x];
    for (std::size_t i = 0; i < d; ++i) row[i] *= gx;
  }

  double pg_sup = 0.0;  // max_x ||P_G(x)||_H
  std::vector<double> pg_normsq_at(n_grid, 0.0);
  for (std::size_t x = 0; x < n_grid; ++x) {
    const Complex* row = p_g.at(x);
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) s += std::norm(row[i]);
    pg_normsq_at[x] = s;
    pg_sup = std::max(pg_sup, std::sqrt(s));
  }
  const double field_scale = std::max(1.0, pg_sup);

  ChainReport rep;

  // (ii) Abel identity: P_G(x) = G(x) sum_k Delta f_k(x) sigma_k.
  {
    double worst = 0.0;
    for (std::size_t x = 0; x < n_grid; ++x) {
      CVector rhs(d, Complex{0.0, 0.0});
      for (std::size_t k = 1; k <= n; ++k) {
        const int dk = sd.delta(k, x);
        if (dk == 0) continue;
        const CVector& sk = sigma[k - 1];
        const Complex gdk = g[x] * static_cast<double>(dk);
        for (std::size_t i = 0; i < d; ++i) rhs[i] += gdk * sk[i];
      }
      const Complex* row = p_g.at(x);
      double diff = 0.0;
      for (std::size_t i = 0; i < d; ++i) diff += std::norm(row[i] - rhs[i]);
      worst = std::max(worst, std::sqrt(diff));
    }
    rep.abel_residual = worst / field_scale;
    if (rep.abel_residual > kStructuralTol)
      throw internal_error("chain_check: Abel identity residual " +
                           std::to_string(rep.abel_residual));
  }

  // (iii) pointwise norm identity ||P_G(x)||^2 = |G|^2 sum Delta f_k ||sigma_k||^2.
  {
    double worst = 0.0;
    for (std::size_t x = 0; x < n_grid; ++x) {
      double rhs = 0.0;
      for (std::size_t k = 1; k <= n; ++k) {
        const int dk = sd.delta(k, x);
        if (dk != 0) rhs += static_cast<double>(dk) * sigma_normsq[k - 1];
      }
      rhs *= std::norm(g[x]);
      worst = std::max(worst, std::abs(pg_normsq_at[x] - rhs));
    }
    if (worst / (field_scale * field_scale) > kStructuralTol)
      throw internal_error("chain_check: pointwise norm identity residual " +
                           std::to_string(worst));
  }

  const double pg_normsq = v_norm2sq(p_g);
  const double g_l2 = g.l2();

  // z_k = (1/N) sum_x G f_k conj(F_k).
  std::vector<Complex> z(n, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    const auto& fk = f.function(k);
    const auto& lk = sd.ladder[k];
    Complex s{0.0, 0.0};
    for (std::size_t x = 0; x < n_grid; ++x)
      if (lk[x]) s += g[x] * std::conj(fk[x]);
    z[k] = s / static_cast<double>(n_grid);
  }
  double z_sq = 0.0, z_over_w = 0.0;
  Complex z_sum{0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    z_sq += std::norm(z[k]);
    z_over_w += std::norm(z[k]) / w_normsq[k];
    z_sum += z[k];
  }

  // (iv) Bessel for P_G with honest V-inner products against p_k.
  {
    double coeff = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto& fk = f.function(k);
      const CVector& wk = pair.w[k];
      Complex ip{0.0, 0.0};
      for (std::size_t x = 0; x < n_grid; ++x) {
        const Complex* row = p_g.at(x);
        Complex pw{0.0, 0.0};
        for (std::size_t i = 0; i < d; ++i) pw += row[i] * std::conj(wk[i]);
        ip += pw * std::conj(fk[x]);
      }
      ip /= static_cast<double>(n_grid);
      coeff += std::norm(ip) / w_normsq[k];
    }
    rep.bessel_slack = pg_normsq - coeff;
  }

  rep.bigbess_slack = g_l2 * g_l2 * sigma_normsq_max - z_over_w;
  rep.mainpoint_slack = w_normsq_max * g_l2 * g_l2 * sigma_normsq_max - z_sq;

  // Stopped-sum identity and the Cauchy-Schwarz step.
  Complex stopped_ip{0.0, 0.0};
  for (std::size_t x = 0; x < n_grid; ++x)
    stopped_ip += g[x] * std::conj(sd.stopped_sum[x]);
  stopped_ip /= static_cast<double>(n_grid);

  rep.witness_identity_residual =
      std::abs(stopped_ip - z_sum) / std::max(1.0, std::abs(z_sum));
  if (rep.witness_identity_residual > kStructuralTol)
    throw internal_error("chain_check: stopped-sum identity residual " +
                         std::to_string(rep.witness_identity_residual));

  rep.gsf_slack = std::sqrt(static_cast<double>(n)) * std::sqrt(z_sq) -
                  std::abs(stopped_ip);
  return rep;
}

MenshovLevel menshov_level(const OrthonormalSystem& f) {
  const std::size_t n = f.n();
  if (n < 2)
    throw degenerate_input_error(
        "menshov_level: n = 1 is degenerate (log 1 = 0)");
  const StoppingData sd = stopping_data(f);
  std::vector<double> sorted(sd.maximal);
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n_grid = sorted.size();
  // Largest threshold whose super-level set keeps measure >= 1/4: the
  // 75th-percentile order statistic s[N-1-k] with k = ceil(N/4).
  const std::size_t k = (n_grid + 3) / 4;
  const std::size_t idx = n_grid - 1 - k;
  MenshovLevel lvl;
  lvl.t_star = sorted[idx];
  lvl.c0_emp = lvl.t_star / (std::sqrt(static_cast<double>(n)) *
                             std::log(static_cast<double>(n)));
  return lvl;
}

}  // namespace biorth
