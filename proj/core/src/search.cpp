#include "biorth/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>
#include <thread>

namespace biorth {

namespace {

// Soft-max (log-sum-exp scaled by tau) dominates the max for tau > 0.
double soft_max(const std::vector<double>& xs, double tau) {
  double m = xs[0];
  for (double x : xs) m = std::max(m, x);
  double s = 0.0;
  for (double x : xs) s += std::exp((x - m) / tau);
  return m + tau * std::log(s);
}

struct ObjectiveParts {
  std::vector<double> inv_row_norms;
  std::vector<double> col_partial_norms;
};

ObjectiveParts objective_parts(const CMatrix& a, double condition_cap) {
  const std::size_t n = a.rows();
  ObjectiveParts parts;
  const std::vector<CVector> rows = inverse_rows(a, condition_cap);
  parts.inv_row_norms.reserve(n);
  for (const CVector& r : rows) parts.inv_row_norms.push_back(norm2(r));
  parts.col_partial_norms.reserve(n);
  CVector running(n, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) running[i] += a.at(i, k);
    parts.col_partial_norms.push_back(norm2(running));
  }
  return parts;
}

std::size_t thread_count(const SearchConfig& config) {
  if (config.threads > 0) return config.threads;
  if (const char* env = std::getenv("BIORTH_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? hc : 1;
}

std::size_t param_dim(std::size_t n, Field field) {
  return field == Field::complex ? 2 * n * n : n * n;
}

void encode(const CMatrix& a, Field field, std::vector<double>& out) {
  const std::size_t nn = a.rows() * a.cols();
  out.resize(param_dim(a.rows(), field));
  for (std::size_t t = 0; t < nn; ++t) {
    out[t] = a.entries()[t].real();
    if (field == Field::complex) out[nn + t] = a.entries()[t].imag();
  }
}

// Decode with Frobenius normalization ||A||_F = n; nullopt when the
// parameter vector is numerically the zero matrix.
std::optional<CMatrix> decode(const std::vector<double>& p, std::size_t n,
                              Field field) {
  CMatrix a(n, n);
  const std::size_t nn = n * n;
  for (std::size_t t = 0; t < nn; ++t) {
    const double re = p[t];
    const double im = field == Field::complex ? p[nn + t] : 0.0;
    a.at(t / n, t % n) = Complex{re, im};
  }
  const double fro = a.frobenius_norm();
  if (!(fro > 1e-12)) return std::nullopt;
  const double scale = static_cast<double>(n) / fro;
  for (std::size_t t = 0; t < nn; ++t)
    a.at(t / n, t % n) *= scale;
  return a;
}

CMatrix character_matrix(std::size_t n, Field field) {
  CMatrix a(n, n);
  if (field == Field::complex) {
    const double root = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(j * k) /
                         static_cast<double>(n);
        a.at(j, k) = root * Complex{std::cos(t), std::sin(t)};
      }
    return a;
  }
  // Real DFT basis as columns: constant, cos/sin pairs, alternating column
  // for even n. Orthogonal on the n-point cycle.
  std::size_t col = 0;
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) a.at(i, col) = inv_sqrt_n;
  ++col;
  const double amp = std::sqrt(2.0 / static_cast<double>(n));
  for (std::size_t k = 1; 2 * k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>(k * i) /
                       static_cast<double>(n);
      a.at(i, col) = amp * std::cos(t);
      a.at(i, col + 1) = amp * std::sin(t);
    }
    col += 2;
  }
  if (n % 2 == 0) {
    for (std::size_t i = 0; i < n; ++i)
      a.at(i, col) = (i % 2 == 0 ? 1.0 : -1.0) * inv_sqrt_n;
  }
  return a;
}

// Coordinates of the Salem-pair vectors in an orthonormal basis of their
// span (modified Gram-Schmidt); columns of the result are those coordinates.
CMatrix salem_seed_matrix(std::size_t n, Field field) {
  const std::size_t n_grid = std::max<std::size_t>(256, 8 * n);
  const Grid grid(n_grid);
  std::vector<std::vector<Complex>> funcs(n,
                                          std::vector<Complex>(n_grid, 0.0));
  if (field == Field::complex) {
    std::vector<long> freqs(n);
    for (std::size_t k = 0; k < n; ++k) freqs[k] = static_cast<long>(k + 1);
    const OrthonormalSystem h = trig_system(freqs, grid);
    for (std::size_t k = 0; k < n; ++k) funcs[k] = h.function(k);
  } else {
    // sqrt(2) cos(2 pi k x), k = 1..n: real, exactly orthonormal for N > 2n.
    const double amp = std::sqrt(2.0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n_grid; ++i)
        funcs[k][i] = amp * std::cos(2.0 * std::numbers::pi *
                                     static_cast<double>((k + 1) * i) /
                                     static_cast<double>(n_grid));
  }
  const OrthonormalSystem h(grid, std::move(funcs));
  const BiorthogonalPair pair = salem_pair(CoefficientSeq::ones(n), h);
  // MGS over the v_j (already embedded in C^N with the grid weight).
  const std::size_t dim = pair.v.dim();
  std::vector<CVector> q;
  q.reserve(n);
  CMatrix coords(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    CVector u = pair.v[j];
    for (std::size_t i = 0; i < q.size(); ++i) {
      const Complex r = inner(u, q[i]);
      coords.at(i, j) = r;
      for (std::size_t t = 0; t < dim; ++t) u[t] -= r * q[i][t];
    }
    const double nrm = norm2(u);
    if (!(nrm > 1e-12))
      throw singular_error("salem_seed_matrix: dependent Salem vectors");
    coords.at(j, j) = Complex{nrm, 0.0};
    for (std::size_t t = 0; t < dim; ++t) u[t] /= nrm;
    q.push_back(std::move(u));
  }
  return coords;
}

struct RestartOutcome {
  RestartTrace trace;
  CMatrix best_a;
  std::size_t evaluations = 0;
  double f_seen_min = 0.0;
};

class Evaluator {
 public:
  Evaluator(std::size_t n, Field field, double condition_cap, double penalty)
      : n_(n), field_(field), cap_(condition_cap), penalty_(penalty) {}

  // Smoothed value steers the simplex; the exact value ranks candidates.
  double operator()(const std::vector<double>& p, double tau) {
    ++evaluations_;
    const std::optional<CMatrix> a = decode(p, n_, field_);
    if (!a) return penalty_;
    ObjectiveParts parts;
    try {
      parts = objective_parts(*a, cap_);
    } catch (const singular_error&) {
      return penalty_;
    }
    double row_max = 0.0, col_max = 0.0;
    for (double v : parts.inv_row_norms) row_max = std::max(row_max, v);
    for (double v : parts.col_partial_norms) col_max = std::max(col_max, v);
    const double exact = row_max * col_max;
    const double smoothed = soft_max(parts.inv_row_norms, tau) *
                            soft_max(parts.col_partial_norms, tau);
    if (smoothed < exact * (1.0 - 1e-12))
      throw internal_error("search: smoothed objective fell below exact");
    if (exact < f_seen_min_) {
      f_seen_min_ = exact;
      best_a_ = *a;
    }
    return smoothed;
  }

  std::size_t evaluations() const { return evaluations_; }
  double f_seen_min() const { return f_seen_min_; }
  const CMatrix& best_a() const { return best_a_; }
  bool found_any() const { return f_seen_min_ < penalty_; }

 private:
  std::size_t n_;
  Field field_;
  double cap_;
  double penalty_;
  std::size_t evaluations_ = 0;
  double f_seen_min_ = std::numeric_limits<double>::infinity();
  CMatrix best_a_;
};

RestartOutcome run_restart(const SearchConfig& config, std::size_t restart_id) {
  const std::uint64_t restart_seed =
      splitmix64(config.seed ^ splitmix64(restart_id + 1));
  Rng rng = Rng::stream(config.seed, restart_id);
  const CMatrix seed_matrix =
      search_seed_matrix(config.n, restart_id, rng, config.field);

  Evaluator eval(config.n, config.field, config.condition_cap,
                 singular_penalty(config.n));
  double tau = config.smoothing_tau.initial;

  std::vector<double> x0;
  encode(seed_matrix, config.field, x0);
  const std::size_t dim = x0.size();

  // Initial simplex: seed plus per-coordinate steps. All vertices are
  // evaluated even when dim + 1 exceeds the budget, so the budget floors at
  // the simplex size.
  std::vector<std::vector<double>> simplex(dim + 1, x0);
  std::vector<double> value(dim + 1);
  const double step = 0.2;
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += step;
  for (std::size_t i = 0; i < dim + 1; ++i) value[i] = eval(simplex[i], tau);

  std::vector<std::size_t> order(dim + 1);
  const auto sort_order = [&] {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return value[a] < value[b];
                     });
  };
  sort_order();

  std::vector<double> centroid(dim), candidate(dim);
  double best_so_far = value[order[0]];
  while (eval.evaluations() + 2 <= config.budget) {
    const std::size_t worst = order[dim];
    const std::size_t second_worst = order[dim - 1];
    const std::size_t best = order[0];
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t t = 0; t < dim; ++t)
        centroid[t] += simplex[order[i]][t];
    for (double& c : centroid) c /= static_cast<double>(dim);

    // reflection
    for (std::size_t t = 0; t < dim; ++t)
      candidate[t] = centroid[t] + (centroid[t] - simplex[worst][t]);
    const double f_reflect = eval(candidate, tau);
    if (f_reflect < value[best]) {
      // expansion
      std::vector<double> expanded(dim);
      for (std::size_t t = 0; t < dim; ++t)
        expanded[t] = centroid[t] + 2.0 * (candidate[t] - centroid[t]);
      const double f_expand = eval(expanded, tau);
      if (f_expand < f_reflect) {
        simplex[worst] = expanded;
        value[worst] = f_expand;
      } else {
        simplex[worst] = candidate;
        value[worst] = f_reflect;
      }
    } else if (f_reflect < value[second_worst]) {
      simplex[worst] = candidate;
      value[worst] = f_reflect;
    } else {
      // contraction (outside toward the reflection, inside toward the worst)
      std::vector<double> contracted(dim);
      const bool outside = f_reflect < value[worst];
      for (std::size_t t = 0; t < dim; ++t) {
        const double target = outside ? candidate[t] : simplex[worst][t];
        contracted[t] = centroid[t] + 0.5 * (target - centroid[t]);
      }
      const double f_contract = eval(contracted, tau);
      if (f_contract < std::min(f_reflect, value[worst])) {
        simplex[worst] = contracted;
        value[worst] = f_contract;
      } else {
        // shrink toward the best vertex
        for (std::size_t i = 1; i < dim + 1; ++i) {
          const std::size_t idx = order[i];
          for (std::size_t t = 0; t < dim; ++t)
            simplex[idx][t] =
                simplex[best][t] + 0.5 * (simplex[idx][t] - simplex[best][t]);
          if (eval.evaluations() >= config.budget) break;
          value[idx] = eval(simplex[idx], tau);
        }
      }
    }
    sort_order();
    if (value[order[0]] < best_so_far - 1e-15) {
      best_so_far = value[order[0]];
      tau = std::max(config.smoothing_tau.floor, tau * config.smoothing_tau.decay);
    }
  }

  RestartOutcome out;
  out.trace = RestartTrace{restart_id, restart_seed, eval.f_seen_min()};
  out.evaluations = eval.evaluations();
  out.f_seen_min = eval.f_seen_min();
  if (eval.found_any()) out.best_a = eval.best_a();
  return out;
}

}  // namespace

void SearchConfig::validate() const {
  if (n < 1) throw input_error("search: n must be >= 1");
  if (restarts < 1) throw input_error("search: restarts must be >= 1");
  if (budget < 100) throw input_error("search: budget must be >= 100");
  if (!(smoothing_tau.initial > smoothing_tau.floor) ||
      !(smoothing_tau.floor > 0.0))
    throw input_error("search: tau schedule needs initial > floor > 0");
  if (!(smoothing_tau.decay > 0.0 && smoothing_tau.decay <= 1.0))
    throw input_error("search: tau decay must lie in (0, 1]");
}

double singular_penalty(std::size_t n) {
  return 1e6 * std::log(static_cast<double>(n) + 1.0);
}

double objective(const CMatrix& a, double condition_cap) {
  if (a.rows() != a.cols()) throw input_error("objective: matrix must be square");
  const ObjectiveParts parts = objective_parts(a, condition_cap);
  double row_max = 0.0, col_max = 0.0;
  for (double v : parts.inv_row_norms) row_max = std::max(row_max, v);
  for (double v : parts.col_partial_norms) col_max = std::max(col_max, v);
  return row_max * col_max;
}

ObjectiveTerms objective_terms(const CMatrix& a, double tau,
                               double condition_cap) {
  if (!(tau > 0.0)) throw input_error("objective_terms: tau must be positive");
  const ObjectiveParts parts = objective_parts(a, condition_cap);
  double row_max = 0.0, col_max = 0.0;
  for (double v : parts.inv_row_norms) row_max = std::max(row_max, v);
  for (double v : parts.col_partial_norms) col_max = std::max(col_max, v);
  ObjectiveTerms t;
  t.exact = row_max * col_max;
  t.smoothed = soft_max(parts.inv_row_norms, tau) *
               soft_max(parts.col_partial_norms, tau);
  return t;
}

CMatrix search_seed_matrix(std::size_t n, std::size_t restart_id, Rng& rng,
                           Field field) {
  switch (restart_id) {
    case 0: return CMatrix::identity(n);
    case 1: return character_matrix(n, field);
    case 2: {
      if (n >= 2) return salem_seed_matrix(n, field);
      return CMatrix::identity(n);
    }
    default: return gaussian_matrix(n, rng, field);
  }
}

SearchResult search(const SearchConfig& config) {
  config.validate();
  const std::size_t workers = std::min(thread_count(config), config.restarts);
  std::vector<std::optional<RestartOutcome>> slots(config.restarts);

  if (workers <= 1) {
    for (std::size_t r = 0; r < config.restarts; ++r)
      slots[r] = run_restart(config, r);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t r = w; r < config.restarts; r += workers)
            slots[r] = run_restart(config, r);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  SearchResult result;
  result.f_best = std::numeric_limits<double>::infinity();
  result.f_seen_min = std::numeric_limits<double>::infinity();
  const double penalty = singular_penalty(config.n);
  bool any = false;
  for (std::size_t r = 0; r < config.restarts; ++r) {
    const RestartOutcome& out = *slots[r];
    result.trace.push_back(out.trace);
    result.evaluations += out.evaluations;
    result.f_seen_min = std::min(result.f_seen_min, out.f_seen_min);
    if (out.f_seen_min < penalty && out.f_seen_min < result.f_best) {
      result.f_best = out.f_seen_min;
      result.best_a = out.best_a;
      any = true;
    }
  }
  if (!any)
    throw search_failure(
        "search: every restart stayed in the penalty region (n = " +
        std::to_string(config.n) + ", restarts = " +
        std::to_string(config.restarts) + ")");
  result.c_empirical = config.n > 1 ? std::log(static_cast<double>(config.n)) /
                                          result.f_best
                                    : 0.0;
  return result;
}

namespace {

double oracle_f2(double b, double c) {
  const double r1 = std::sqrt(1.0 + (b / c) * (b / c));
  const double r2 = 1.0 / std::abs(c);
  const double s2 = std::sqrt((1.0 + b) * (1.0 + b) + c * c);
  return std::max(r1, r2) * std::max(1.0, s2);
}

double oracle_f3(double a, double b, double c, double d, double e) {
  const double i12 = -a / c;
  const double i13 = (a * d - b * c) / (c * e);
  const double i23 = -d / (c * e);
  const double r1 = std::sqrt(1.0 + i12 * i12 + i13 * i13);
  const double r2 = std::sqrt(1.0 / (c * c) + i23 * i23);
  const double r3 = 1.0 / std::abs(e);
  const double s2 = std::sqrt((1.0 + a) * (1.0 + a) + c * c);
  const double s3 = std::sqrt((1.0 + a + b) * (1.0 + a + b) +
                              (c + d) * (c + d) + e * e);
  return std::max({r1, r2, r3}) * std::max({1.0, s2, s3});
}

}  // namespace

double small_n_oracle(std::size_t n, std::size_t resolution) {
  if (n == 0) throw input_error("small_n_oracle: n must be >= 1");
  if (n > 3)
    throw input_error("small_n_oracle: n = " + std::to_string(n) +
                      " unsupported (n <= 3)");
  if (n == 1) return 1.0;  // <v,w> = 1 forces ||v|| ||w|| >= 1, attained
  if (resolution < 8) throw input_error("small_n_oracle: resolution too low");

  if (n == 2) {
    const double lim = 4.0;
    double best = std::numeric_limits<double>::infinity();
    double best_b = 0.0, best_c = 1.0;
    const std::size_t res = resolution;
    for (std::size_t i = 0; i < res; ++i) {
      const double b = -lim + 2.0 * lim * static_cast<double>(i) /
                                  static_cast<double>(res - 1);
      for (std::size_t j = 0; j < res; ++j) {
        const double c = 1e-3 + (lim - 1e-3) * static_cast<double>(j) /
                                    static_cast<double>(res - 1);
        const double f = oracle_f2(b, c);
        if (f < best) {
          best = f;
          best_b = b;
          best_c = c;
        }
      }
    }
    double span = 3.0 * 2.0 * lim / static_cast<double>(res - 1);
    for (int pass = 0; pass < 3; ++pass) {
      const std::size_t rres = 41;
      double nb = best_b, nc = best_c;
      for (std::size_t i = 0; i < rres; ++i) {
        const double b = best_b - span + 2.0 * span * static_cast<double>(i) /
                                             static_cast<double>(rres - 1);
        for (std::size_t j = 0; j < rres; ++j) {
          const double c =
              std::max(1e-6, best_c - span + 2.0 * span *
                                                static_cast<double>(j) /
                                                static_cast<double>(rres - 1));
          const double f = oracle_f2(b, c);
          if (f < best) {
            best = f;
            nb = b;
            nc = c;
          }
        }
      }
      best_b = nb;
      best_c = nc;
      span *= 0.1;
    }
    return best;
  }

  // n = 3: coarse scan over (a, b, d) off-diagonal and (c, e) diagonal,
  // then three shrinking refinement passes.
  const double lim = 2.5;
  const std::size_t res_off = std::max<std::size_t>(15, resolution / 20);
  const std::size_t res_diag = std::max<std::size_t>(9, resolution / 40);
  double best = std::numeric_limits<double>::infinity();
  double pa = 0, pb = 0, pc = 1, pd = 0, pe = 1;
  for (std::size_t ia = 0; ia < res_off; ++ia) {
    const double a = -lim + 2 * lim * static_cast<double>(ia) / (res_off - 1);
    for (std::size_t ib = 0; ib < res_off; ++ib) {
      const double b = -lim + 2 * lim * static_cast<double>(ib) / (res_off - 1);
      for (std::size_t id = 0; id < res_off; ++id) {
        const double d =
            -lim + 2 * lim * static_cast<double>(id) / (res_off - 1);
        for (std::size_t ic = 0; ic < res_diag; ++ic) {
          const double c =
              0.05 + (lim - 0.05) * static_cast<double>(ic) / (res_diag - 1);
          for (std::size_t ie = 0; ie < res_diag; ++ie) {
            const double e =
                0.05 + (lim - 0.05) * static_cast<double>(ie) / (res_diag - 1);
            const double f = oracle_f3(a, b, c, d, e);
            if (f < best) {
              best = f;
              pa = a;
              pb = b;
              pc = c;
              pd = d;
              pe = e;
            }
          }
        }
      }
    }
  }
  double span = 2.0 * lim / static_cast<double>(res_off - 1);
  for (int pass = 0; pass < 4; ++pass) {
    const std::size_t r = 9;
    double na = pa, nb = pb, nc = pc, nd = pd, ne = pe;
    for (std::size_t ia = 0; ia < r; ++ia)
      for (std::size_t ib = 0; ib < r; ++ib)
        for (std::size_t id = 0; id < r; ++id)
          for (std::size_t ic = 0; ic < r; ++ic)
            for (std::size_t ie = 0; ie < r; ++ie) {
              const double a = pa + span * (2.0 * ia / (r - 1) - 1.0);
              const double b = pb + span * (2.0 * ib / (r - 1) - 1.0);
              const double d = pd + span * (2.0 * id / (r - 1) - 1.0);
              const double c =
                  std::max(1e-6, pc + span * (2.0 * ic / (r - 1) - 1.0));
              const double e =
                  std::max(1e-6, pe + span * (2.0 * ie / (r - 1) - 1.0));
              const double f = oracle_f3(a, b, c, d, e);
              if (f < best) {
                best = f;
                na = a;
                nb = b;
                nc = c;
                nd = d;
                ne = e;
              }
            }
    pa = na;
    pb = nb;
    pc = nc;
    pd = nd;
    pe = ne;
    span *= 0.25;
  }
  return best;
}

double theorem_floor_cap(std::size_t oracle_resolution) {
  static std::once_flag flag;
  static double cached = 0.0;
  std::call_once(flag, [&] {
    cached = 2.0 * std::log(2.0) / small_n_oracle(2, oracle_resolution);
  });
  return cached;
}

std::vector<ConstantRow> constant_table(const std::vector<std::size_t>& ns,
                                        SearchConfig base) {
  std::vector<std::size_t> sizes;
  for (std::size_t n : ns)
    if (n >= 2) sizes.push_back(n);
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  std::vector<ConstantRow> rows;
  rows.reserve(sizes.size());
  for (std::size_t n : sizes) {
    SearchConfig cfg = base;
    cfg.n = n;
    const SearchResult res = search(cfg);
    ConstantRow row;
    row.n = n;
    row.f_best = res.f_best;
    row.ln_n = std::log(static_cast<double>(n));
    row.c_emp = res.c_empirical;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace biorth
