#include "biorth/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace biorth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e^{2 pi i k/N} for k = 0..N-1; indexing modulo N keeps character products
// exact (no phase drift from repeated multiplication).
std::vector<Complex> root_table(std::size_t n) {
  std::vector<Complex> roots(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    roots[k] = Complex{std::cos(t), std::sin(t)};
  }
  return roots;
}

std::size_t mod_index(long k, std::size_t n) {
  const long m = static_cast<long>(n);
  long r = k % m;
  if (r < 0) r += m;
  return static_cast<std::size_t>(r);
}

}  // namespace

Grid::Grid(std::size_t size) : size_(size) {
  if (size < 2) throw input_error("Grid: need at least 2 points");
}

GridFunction::GridFunction(Grid grid, std::vector<Complex> samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (samples_.size() != grid_.size())
    throw input_error("GridFunction: sample count " +
                      std::to_string(samples_.size()) +
                      " does not match grid size " +
                      std::to_string(grid_.size()));
  require_finite(samples_, "GridFunction samples");
}

double GridFunction::l1() const {
  double s = 0.0;
  for (const Complex& z : samples_) s += std::abs(z);
  return s / static_cast<double>(samples_.size());
}

double GridFunction::l2() const {
  double s = 0.0;
  for (const Complex& z : samples_) s += std::norm(z);
  return std::sqrt(s / static_cast<double>(samples_.size()));
}

double GridFunction::linf() const {
  double s = 0.0;
  for (const Complex& z : samples_) s = std::max(s, std::abs(z));
  return s;
}

OrthonormalSystem::OrthonormalSystem(Grid grid,
                                     std::vector<std::vector<Complex>> functions)
    : grid_(grid), functions_(std::move(functions)) {
  if (functions_.empty())
    throw input_error("OrthonormalSystem: need at least 1 function");
  for (std::size_t j = 0; j < functions_.size(); ++j) {
    if (functions_[j].size() != grid_.size())
      throw input_error("OrthonormalSystem: function " + std::to_string(j) +
                        " has wrong sample count");
    require_finite(functions_[j], "OrthonormalSystem function");
  }
  const double r = orthonormality_residual();
  if (r > kOrthonormalTol)
    throw input_error("OrthonormalSystem: orthonormality residual " +
                      std::to_string(r) + " exceeds " +
                      std::to_string(kOrthonormalTol));
}

double OrthonormalSystem::orthonormality_residual() const {
  const std::size_t n = functions_.size();
  const double inv_n = 1.0 / static_cast<double>(grid_.size());
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j; k < n; ++k) {
      Complex s{0.0, 0.0};
      const auto& fj = functions_[j];
      const auto& fk = functions_[k];
      for (std::size_t i = 0; i < fj.size(); ++i) s += fj[i] * std::conj(fk[i]);
      s *= inv_n;
      if (j == k) s -= Complex{1.0, 0.0};
      worst = std::max(worst, std::abs(s));
    }
  }
  return worst;
}

CoefficientSeq::CoefficientSeq(std::vector<Complex> values)
    : values_(std::move(values)) {
  if (values_.empty()) throw input_error("CoefficientSeq: empty");
  require_finite(values_, "CoefficientSeq");
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (std::abs(values_[k]) == 0.0)
      throw input_error("CoefficientSeq: coefficient " + std::to_string(k) +
                        " is zero");
  }
}

CoefficientSeq CoefficientSeq::ones(std::size_t n) {
  return CoefficientSeq(std::vector<Complex>(n, Complex{1.0, 0.0}));
}

double CoefficientSeq::min_abs() const {
  double m = std::abs(values_[0]);
  for (const Complex& z : values_) m = std::min(m, std::abs(z));
  return m;
}

double MaximalData::s_star_l1() const {
  double s = 0.0;
  for (double v : s_star) s += v;
  return s / static_cast<double>(s_star.size());
}

OrthonormalSystem trig_system(const std::vector<long>& freqs,
                              const Grid& grid) {
  if (freqs.empty()) throw input_error("trig_system: empty frequency list");
  long max_abs = 0;
  for (std::size_t k = 0; k + 1 < freqs.size(); ++k) {
    if (!(freqs[k] < freqs[k + 1]))
      throw input_error("trig_system: frequencies must be strictly increasing "
                        "(violated at index " + std::to_string(k + 1) + ")");
  }
  for (long m : freqs) max_abs = std::max(max_abs, std::labs(m));
  const std::size_t n_grid = grid.size();
  if (!(n_grid > 2 * static_cast<std::size_t>(max_abs)))
    throw resolution_error("trig_system: grid size " + std::to_string(n_grid) +
                           " aliases frequency " + std::to_string(max_abs) +
                           " (need N > 2 max|m|)");
  const std::vector<Complex> roots = root_table(n_grid);
  std::vector<std::vector<Complex>> funcs(freqs.size());
  for (std::size_t k = 0; k < freqs.size(); ++k) {
    const std::size_t step = mod_index(freqs[k], n_grid);
    funcs[k].resize(n_grid);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n_grid; ++i) {
      funcs[k][i] = roots[idx];
      idx += step;
      if (idx >= n_grid) idx -= n_grid;
    }
  }
  return OrthonormalSystem(grid, std::move(funcs));
}

GridFunction dirichlet_kernel(std::size_t m, const Grid& grid) {
  const std::size_t n_grid = grid.size();
  if (!(n_grid > 2 * (2 * m + 1)))
    throw resolution_error("dirichlet_kernel: grid size " +
                           std::to_string(n_grid) + " too coarse for m = " +
                           std::to_string(m) + " (need N > 2(2m+1))");
  std::vector<Complex> samples(n_grid);
  const double order = static_cast<double>(2 * m + 1);
  samples[0] = Complex{order, 0.0};
  for (std::size_t i = 1; i < n_grid; ++i) {
    const double x = grid.point(i);
    samples[i] = Complex{std::sin(order * std::numbers::pi * x) /
                             std::sin(std::numbers::pi * x),
                         0.0};
  }
  return GridFunction(grid, std::move(samples));
}

double lebesgue_constant(std::size_t m, std::size_t resolution) {
  if (resolution < 64 * (2 * m + 1))
    throw resolution_error("lebesgue_constant: resolution " +
                           std::to_string(resolution) + " below 64(2m+1) = " +
                           std::to_string(64 * (2 * m + 1)));
  // Midpoint sampling: measured relative error <= 8.1e-5 at the mandated
  // resolution, and no removable singularity to special-case.
  const double order = static_cast<double>(2 * m + 1);
  const double inv_n = 1.0 / static_cast<double>(resolution);
  double acc = 0.0;
  for (std::size_t i = 0; i < resolution; ++i) {
    const double x = (static_cast<double>(i) + 0.5) * inv_n;
    acc += std::abs(std::sin(order * std::numbers::pi * x) /
                    std::sin(std::numbers::pi * x));
  }
  return acc * inv_n;
}

MaximalData maximal_data(const CoefficientSeq& a, const OrthonormalSystem& h) {
  const std::size_t n = h.n();
  if (a.size() != n)
    throw input_error("maximal_data: " + std::to_string(a.size()) +
                      " coefficients for " + std::to_string(n) + " functions");
  const std::size_t n_grid = h.grid().size();
  MaximalData md;
  md.partial_sums.reserve(n);
  md.s_star.assign(n_grid, 0.0);
  std::vector<Complex> running(n_grid, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    const auto& hk = h.function(k);
    const Complex ak = a[k];
    double sup = 0.0;
    for (std::size_t i = 0; i < n_grid; ++i) {
      running[i] += ak * hk[i];
      md.s_star[i] = std::max(md.s_star[i], std::abs(running[i]));
      sup = std::max(sup, std::abs(hk[i]));
    }
    md.sup_norm_max = std::max(md.sup_norm_max, sup);
    md.partial_sums.emplace_back(h.grid(), running);
  }
  return md;
}

BiorthogonalPair salem_pair(const CoefficientSeq& a, const OrthonormalSystem& h,
                            const MaximalData& md, double tol) {
  const std::size_t n = h.n();
  if (a.size() != n) throw input_error("salem_pair: size mismatch");
  const std::size_t n_grid = h.grid().size();
  if (md.s_star.size() != n_grid)
    throw input_error("salem_pair: maximal data grid mismatch");
  double s_inf = 0.0;
  for (double v : md.s_star) s_inf = std::max(s_inf, v);
  const double zero_cut = 1e-14 * s_inf;
  const double embed = 1.0 / std::sqrt(static_cast<double>(n_grid));
  std::vector<CVector> v(n, CVector(n_grid, Complex{0.0, 0.0}));
  std::vector<CVector> w(n, CVector(n_grid, Complex{0.0, 0.0}));
  for (std::size_t j = 0; j < n; ++j) {
    const auto& hj = h.function(j);
    const Complex aj = a[j];
    const Complex wj_coef = Complex{1.0, 0.0} / std::conj(aj);
    for (std::size_t i = 0; i < n_grid; ++i) {
      const double s = md.s_star[i];
      if (s <= zero_cut) continue;  // v_j = w_j = 0 on the zero set of S*
      const double rt = std::sqrt(s);
      v[j][i] = aj * hj[i] / rt * embed;
      w[j][i] = wj_coef * hj[i] * rt * embed;
    }
  }
  VectorSet vset(std::move(v));
  VectorSet wset(std::move(w));
  const BiorthCheck chk = check_biorthogonal(vset, wset, tol);
  if (!chk.pass)
    throw certification_error("salem_pair: residual " +
                                  std::to_string(chk.residual) +
                                  " exceeds tolerance " + std::to_string(tol),
                              chk.residual);
  return BiorthogonalPair{std::move(vset), std::move(wset), chk.residual};
}

BiorthogonalPair salem_pair(const CoefficientSeq& a, const OrthonormalSystem& h,
                            double tol) {
  return salem_pair(a, h, maximal_data(a, h), tol);
}

std::vector<Complex> fourier_coefficients(const GridFunction& p,
                                          std::size_t kmax) {
  const std::size_t n_grid = p.size();
  if (!(n_grid > 2 * kmax))
    throw resolution_error("fourier_coefficients: need N > 2 kmax");
  const std::vector<Complex> roots = root_table(n_grid);
  std::vector<Complex> coeffs(2 * kmax + 1, Complex{0.0, 0.0});
  const double inv_n = 1.0 / static_cast<double>(n_grid);
  for (long k = -static_cast<long>(kmax); k <= static_cast<long>(kmax); ++k) {
    const std::size_t step = mod_index(-k, n_grid);
    Complex s{0.0, 0.0};
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n_grid; ++i) {
      s += p[i] * roots[idx];
      idx += step;
      if (idx >= n_grid) idx -= n_grid;
    }
    coeffs[static_cast<std::size_t>(k + static_cast<long>(kmax))] = s * inv_n;
  }
  return coeffs;
}

namespace {

void check_degree(const GridFunction& p, std::size_t degree,
                  const std::vector<Complex>& coeffs) {
  // Parseval on the grid: energy above `degree` must vanish.
  double inside = 0.0;
  for (const Complex& c : coeffs) inside += std::norm(c);
  const double total = p.l2() * p.l2();
  const double tail = total - inside;
  if (tail > 1e-8 * std::max(total, 1e-300))
    throw input_error(
        "fourier_maximal: function has frequency content above degree " +
        std::to_string(degree) + " (relative tail energy " +
        std::to_string(tail / std::max(total, 1e-300)) + ")");
}

}  // namespace

GridFunction fourier_partial_sum(const GridFunction& p, std::size_t m) {
  const std::size_t n_grid = p.size();
  const std::vector<Complex> coeffs = fourier_coefficients(p, m);
  const std::vector<Complex> roots = root_table(n_grid);
  std::vector<Complex> out(n_grid, coeffs[m]);  // k = 0 term
  for (std::size_t f = 1; f <= m; ++f) {
    const Complex cp = coeffs[m + f];
    const Complex cm = coeffs[m - f];
    const std::size_t step = f % n_grid;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n_grid; ++i) {
      out[i] += cp * roots[idx] + cm * std::conj(roots[idx]);
      idx += step;
      if (idx >= n_grid) idx -= n_grid;
    }
  }
  return GridFunction(p.grid(), std::move(out));
}

GridFunction fourier_maximal(const GridFunction& p, std::size_t degree) {
  const std::size_t n_grid = p.size();
  if (!(n_grid > 2 * degree))
    throw resolution_error("fourier_maximal: need N > 2*degree");
  const std::vector<Complex> coeffs = fourier_coefficients(p, degree);
  check_degree(p, degree, coeffs);
  const std::vector<Complex> roots = root_table(n_grid);
  std::vector<Complex> running(n_grid, coeffs[degree]);  // D_0 * p
  std::vector<double> best(n_grid);
  for (std::size_t i = 0; i < n_grid; ++i) best[i] = std::abs(running[i]);
  for (std::size_t f = 1; f <= degree; ++f) {
    const Complex cp = coeffs[degree + f];
    const Complex cm = coeffs[degree - f];
    const std::size_t step = f % n_grid;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n_grid; ++i) {
      running[i] += cp * roots[idx] + cm * std::conj(roots[idx]);
      best[i] = std::max(best[i], std::abs(running[i]));
      idx += step;
      if (idx >= n_grid) idx -= n_grid;
    }
  }
  std::vector<Complex> out(n_grid);
  for (std::size_t i = 0; i < n_grid; ++i) out[i] = Complex{best[i], 0.0};
  return GridFunction(p.grid(), std::move(out));
}

std::string to_string(CorollaryKind kind) {
  switch (kind) {
    case CorollaryKind::maxmaxmax: return "maxmaxmax";
    case CorollaryKind::decreasing: return "decreasing";
    case CorollaryKind::littlewood: return "littlewood";
    case CorollaryKind::maximal_lemma: return "maximal-lemma";
  }
  return "unknown";
}

CorollaryKind corollary_kind_from_string(const std::string& name) {
  if (name == "maxmaxmax") return CorollaryKind::maxmaxmax;
  if (name == "decreasing") return CorollaryKind::decreasing;
  if (name == "littlewood") return CorollaryKind::littlewood;
  if (name == "maximal-lemma") return CorollaryKind::maximal_lemma;
  throw input_error("corollary kind '" + name +
                    "' is not one of maxmaxmax|decreasing|littlewood|"
                    "maximal-lemma");
}

CorollaryReport corollary_report(CorollaryKind kind, const CoefficientSeq& a,
                                 const std::vector<long>& freqs,
                                 const Grid& grid) {
  const std::size_t n = a.size();
  if (freqs.size() != n)
    throw input_error("corollary_report: " + std::to_string(freqs.size()) +
                      " frequencies for " + std::to_string(n) +
                      " coefficients");
  if (kind == CorollaryKind::decreasing) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!(a[k].imag() == 0.0) || !(a[k].real() > 0.0))
        throw input_error("corollary_report[decreasing]: coefficient " +
                          std::to_string(k) + " is not a positive real");
      if (k > 0 && a[k].real() > a[k - 1].real())
        throw input_error("corollary_report[decreasing]: coefficients "
                          "increase at index " + std::to_string(k));
    }
  }
  if (kind == CorollaryKind::littlewood) {
    for (std::size_t k = 0; k < n; ++k) {
      if (freqs[k] < 1)
        throw input_error("corollary_report[littlewood]: frequency " +
                          std::to_string(k) + " is not a natural number");
      if (k > 0 && freqs[k] <= freqs[k - 1])
        throw input_error("corollary_report[littlewood]: frequencies not "
                          "strictly increasing at index " + std::to_string(k));
    }
  }

  CorollaryReport rep;
  rep.kind = kind;
  rep.n = n;
  rep.grid_size = grid.size();
  const double log_n = std::log(static_cast<double>(n));
  const long m_n = freqs.back();

  const OrthonormalSystem h = trig_system(freqs, grid);
  const MaximalData md = maximal_data(a, h);
  double max_partial_l1 = 0.0;
  for (const GridFunction& s : md.partial_sums)
    max_partial_l1 = std::max(max_partial_l1, s.l1());

  switch (kind) {
    case CorollaryKind::maxmaxmax:
    case CorollaryKind::decreasing: {
      const double lead = (kind == CorollaryKind::maxmaxmax)
                              ? a.min_abs()
                              : a[n - 1].real();
      rep.lhs = lead * log_n;
      rep.rhs_factors = {md.sup_norm_max * md.sup_norm_max, md.s_star_l1(),
                         max_partial_l1};
      rep.product = rep.rhs_factors[0] * rep.rhs_factors[1] * rep.rhs_factors[2];
      rep.c_empirical =
          rep.product > 0.0 ? (rep.lhs * rep.lhs) / rep.product : 0.0;
      break;
    }
    case CorollaryKind::littlewood: {
      rep.lhs = a.min_abs() * log_n /
                std::sqrt(std::log(2.0 * static_cast<double>(m_n) + 1.0));
      rep.rhs_factors = {max_partial_l1};
      rep.product = max_partial_l1;
      rep.c_empirical = rep.product > 0.0 ? rep.lhs / rep.product : 0.0;
      break;
    }
    case CorollaryKind::maximal_lemma: {
      long degree = 0;
      for (long m : freqs) degree = std::max(degree, std::labs(m));
      const GridFunction& p = md.partial_sums.back();
      const GridFunction sp =
          fourier_maximal(p, static_cast<std::size_t>(degree));
      rep.lhs = sp.l1();
      rep.rhs_factors = {std::log(2.0 * static_cast<double>(degree) + 1.0),
                         p.l1()};
      rep.product = rep.rhs_factors[0] * rep.rhs_factors[1];
      rep.c_empirical = rep.product > 0.0 ? rep.lhs / rep.product : 0.0;
      break;
    }
  }
  return rep;
}

}  // namespace biorth
