// biorth: command-line surface of the bi-orthogonal pair laboratory.
//
// Exit codes: 0 = success / checked inequalities hold; 1 = a mathematical
// finding (violated inequality or failed certification); 2 = input or
// usage error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "biorth/ensembles.hpp"
#include "biorth/grid.hpp"
#include "biorth/io.hpp"
#include "biorth/pair.hpp"
#include "biorth/proof.hpp"
#include "biorth/report.hpp"
#include "biorth/search.hpp"
#include "biorth/svg.hpp"
#include "biorth/version.hpp"

namespace {

using biorth::json;

struct OutputOptions {
  std::string format = "json";
  std::string out;  // empty = stdout
};

void add_output_flags(CLI::App* cmd, OutputOptions& opts) {
  cmd->add_option("--format", opts.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out", opts.out, "Write the report here (default stdout)");
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw biorth::input_error("cannot open output file '" + path + "'");
  out << text;
}

int finish(const biorth::ReportEnvelope& env, const OutputOptions& opts,
           const std::vector<std::string>& csv_columns = {}) {
  if (opts.format == "csv")
    write_text(biorth::emit_report_csv(env, csv_columns), opts.out);
  else
    write_text(biorth::emit_report_json(env), opts.out);
  return env.status == biorth::ReportStatus::ok ? 0 : 1;
}

json report_rows(const biorth::BiorthogonalPair& pair, double tol) {
  const biorth::InequalityReport fwd =
      biorth::inequality_functional(pair, tol);
  const biorth::InequalityReport rev =
      biorth::inequality_functional(biorth::swapped(pair), tol);
  const auto row = [](const char* order, const biorth::InequalityReport& r) {
    return json{{"order", order},       {"n", r.n},
                {"lhs", r.lhs},         {"w_max", r.w_max},
                {"sigma_max", r.sigma_max}, {"product", r.product},
                {"c_empirical", r.c_empirical}};
  };
  return json::array({row("v-w", fwd), row("w-v", rev)});
}

const std::vector<std::string> kIneqColumns = {
    "order", "n", "lhs", "w_max", "sigma_max", "product", "c_empirical"};

// ---------------------------------------------------------------- dual ----

int run_dual(const std::string& in, double tol, double cond_cap,
             const OutputOptions& opts) {
  const biorth::VectorSet v = biorth::read_vector_set_file(in);
  const biorth::BiorthogonalPair pair = biorth::dual_pair(v, tol, cond_cap);
  const biorth::CholeskyFactor chol(biorth::gram(v.vectors()), cond_cap);
  json payload{{"n", v.n()},
               {"d", v.dim()},
               {"residual", pair.residual},
               {"gram_condition", chol.condition_estimate()},
               {"dual_vectors", biorth::vector_set_to_json(pair.w)}};
  const json params{{"in", in}, {"tol", tol}, {"cond_cap", cond_cap}};
  return finish(biorth::make_envelope("dual", params, payload,
                                      biorth::ReportStatus::ok),
                opts);
}

// ---------------------------------------------------------------- ineq ----

int run_ineq(const std::string& in, double tol, double cond_cap,
             const OutputOptions& opts) {
  const biorth::VectorSet v = biorth::read_vector_set_file(in);
  const biorth::BiorthogonalPair pair = biorth::dual_pair(v, tol, cond_cap);
  const json rows = report_rows(pair, tol);
  json payload{{"n", v.n()},
               {"d", v.dim()},
               {"residual", pair.residual},
               {"lhs", rows[0]["lhs"]},
               {"w_max", rows[0]["w_max"]},
               {"sigma_max", rows[0]["sigma_max"]},
               {"product", rows[0]["product"]},
               {"c_empirical", rows[0]["c_empirical"]},
               {"rows", rows}};
  const json params{{"in", in}, {"tol", tol}, {"cond_cap", cond_cap}};
  return finish(biorth::make_envelope("ineq", params, payload,
                                      biorth::ReportStatus::ok),
                opts, kIneqColumns);
}

// -------------------------------------------------------------- matrix ----

int run_matrix(const std::string& in, double tol, double cond_cap,
               const OutputOptions& opts) {
  const biorth::CMatrix a = biorth::read_matrix_file(in);
  const biorth::BiorthogonalPair pair = biorth::matrix_pair(a, tol, cond_cap);
  const json rows = report_rows(pair, tol);
  json payload{{"n", a.rows()},
               {"residual", pair.residual},
               {"objective", biorth::objective(a, cond_cap)},
               {"lhs", rows[0]["lhs"]},
               {"w_max", rows[0]["w_max"]},
               {"sigma_max", rows[0]["sigma_max"]},
               {"product", rows[0]["product"]},
               {"c_empirical", rows[0]["c_empirical"]},
               {"rows", rows}};
  const json params{{"in", in}, {"tol", tol}, {"cond_cap", cond_cap}};
  return finish(biorth::make_envelope("matrix", params, payload,
                                      biorth::ReportStatus::ok),
                opts, kIneqColumns);
}

// ------------------------------------------------------------ lebesgue ----

int run_lebesgue(const std::string& m_spec, std::size_t grid_size,
                 const std::string& plot, const OutputOptions& opts) {
  const std::vector<long> ms = biorth::parse_freq_spec(m_spec);
  json rows = json::array();
  std::vector<double> xs, ys;
  for (long m : ms) {
    if (m < 0) throw biorth::input_error("lebesgue: m must be >= 0");
    const std::size_t n =
        grid_size > 0 ? grid_size
                      : 64 * (2 * static_cast<std::size_t>(m) + 1);
    const double l1 = biorth::lebesgue_constant(static_cast<std::size_t>(m), n);
    rows.push_back(json{{"m", m},
                        {"grid", n},
                        {"l1", l1},
                        {"ln_m", m > 0 ? std::log(static_cast<double>(m)) : 0.0}});
    if (m > 0) {
      xs.push_back(std::log(static_cast<double>(m)));
      ys.push_back(l1);
    }
  }
  json payload{{"rows", rows}};
  if (xs.size() >= 2) {
    // least squares of l1 against ln m
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    const double k = static_cast<double>(xs.size());
    const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    payload["slope"] = slope;
    payload["intercept"] = (sy - slope * sx) / k;
  }
  if (!plot.empty()) {
    biorth::emit_plot({{"lebesgue", xs, ys}},
                      {"Dirichlet kernel L1 norms", "ln m", "||D_m||_1"},
                      plot);
    payload["plot"] = plot;
  }
  const json params{{"m", m_spec}, {"grid", grid_size}, {"plot", plot}};
  return finish(biorth::make_envelope("lebesgue", params, payload,
                                      biorth::ReportStatus::ok),
                opts, {"m", "grid", "l1", "ln_m"});
}

// ------------------------------------------------------------- helpers ----

biorth::CoefficientSeq resolve_coeffs(const std::string& inline_spec,
                                      const std::string& file,
                                      std::size_t n) {
  if (!inline_spec.empty() && !file.empty())
    throw biorth::input_error("give either --coeffs or --coeffs-file");
  if (!inline_spec.empty())
    return biorth::CoefficientSeq(biorth::parse_coeff_spec(inline_spec));
  if (!file.empty())
    return biorth::CoefficientSeq(biorth::read_coeff_file(file));
  return biorth::CoefficientSeq::ones(n);
}

// ------------------------------------------------------------- maximal ----

int run_maximal(const std::string& freq_spec, const std::string& coeffs,
                const std::string& coeffs_file, std::size_t grid_size,
                const OutputOptions& opts) {
  const std::vector<long> freqs = biorth::parse_freq_spec(freq_spec);
  const biorth::Grid grid(grid_size);
  const biorth::OrthonormalSystem h = biorth::trig_system(freqs, grid);
  const biorth::CoefficientSeq a =
      resolve_coeffs(coeffs, coeffs_file, freqs.size());
  const biorth::MaximalData md = biorth::maximal_data(a, h);

  double max_partial_l1 = 0.0, s_star_linf = 0.0;
  for (const biorth::GridFunction& s : md.partial_sums)
    max_partial_l1 = std::max(max_partial_l1, s.l1());
  for (double v : md.s_star) s_star_linf = std::max(s_star_linf, v);

  // triangle-inequality bound |a_j h_j| <= 2 S* at every grid point
  double lemma_ratio_max = 0.0;
  bool lemma_ok = true;
  for (std::size_t j = 0; j < h.n(); ++j) {
    const auto& hj = h.function(j);
    for (std::size_t x = 0; x < grid_size; ++x) {
      const double lhs = std::abs(a[j] * hj[x]);
      const double bound = 2.0 * md.s_star[x];
      if (bound > 0.0)
        lemma_ratio_max = std::max(lemma_ratio_max, lhs / bound);
      else if (lhs > 1e-12)
        lemma_ok = false;
    }
  }
  if (lemma_ratio_max > 1.0 + 1e-12) lemma_ok = false;

  json payload{{"n", h.n()},
               {"grid", grid_size},
               {"m_inf", md.sup_norm_max},
               {"s_star_l1", md.s_star_l1()},
               {"s_star_linf", s_star_linf},
               {"max_partial_l1", max_partial_l1},
               {"lemma_ratio_max", lemma_ratio_max},
               {"lemma_ok", lemma_ok}};
  const json params{{"freqs", freq_spec},
                    {"coeffs", coeffs},
                    {"coeffs_file", coeffs_file},
                    {"grid", grid_size}};
  return finish(biorth::make_envelope(
                    "maximal", params, payload,
                    lemma_ok ? biorth::ReportStatus::ok
                             : biorth::ReportStatus::violation),
                opts);
}

// --------------------------------------------------------------- salem ----

int run_salem(const std::string& freq_spec, const std::string& coeffs,
              const std::string& coeffs_file, std::size_t grid_size,
              const std::string& band, std::size_t band_grid_factor,
              double tol, const std::string& plot, const OutputOptions& opts) {
  if (!band.empty()) {
    // Band mode: a == 1, frequencies 1..n for each n in the list;
    // r(n) = product / ln n.
    const std::vector<long> ns = biorth::parse_freq_spec(band);
    json rows = json::array();
    std::vector<double> xs, ys;
    double r_base = 0.0;
    bool band_ok = true;
    for (long n_long : ns) {
      if (n_long < 2) throw biorth::input_error("salem --band: need n >= 2");
      const std::size_t n = static_cast<std::size_t>(n_long);
      const std::size_t n_grid =
          std::max<std::size_t>(1024, band_grid_factor * n);
      const biorth::Grid grid(n_grid);
      std::vector<long> freqs(n);
      for (std::size_t k = 0; k < n; ++k) freqs[k] = static_cast<long>(k + 1);
      const biorth::OrthonormalSystem h = biorth::trig_system(freqs, grid);
      const biorth::BiorthogonalPair pair =
          biorth::salem_pair(biorth::CoefficientSeq::ones(n), h, tol);
      const biorth::InequalityReport rep =
          biorth::inequality_functional(pair, tol);
      const double r = rep.product / rep.lhs;
      if (r_base == 0.0) r_base = r;
      if (r > 1.5 * r_base) band_ok = false;
      rows.push_back(json{{"n", n},
                          {"grid", n_grid},
                          {"residual", pair.residual},
                          {"product", rep.product},
                          {"ln_n", rep.lhs},
                          {"r", r}});
      xs.push_back(rep.lhs);
      ys.push_back(rep.product);
    }
    json payload{{"rows", rows}, {"r_base", r_base}, {"band_ok", band_ok}};
    if (!plot.empty()) {
      biorth::emit_plot({{"salem product", xs, ys}},
                        {"Salem pair product growth", "ln n", "product"},
                        plot);
      payload["plot"] = plot;
    }
    const json params{{"band", band},
                      {"band_grid_factor", band_grid_factor},
                      {"tol", tol},
                      {"plot", plot}};
    return finish(biorth::make_envelope("salem", params, payload,
                                        band_ok
                                            ? biorth::ReportStatus::ok
                                            : biorth::ReportStatus::violation),
                  opts, {"n", "grid", "residual", "product", "ln_n", "r"});
  }

  const std::vector<long> freqs = biorth::parse_freq_spec(freq_spec);
  const biorth::Grid grid(grid_size);
  const biorth::OrthonormalSystem h = biorth::trig_system(freqs, grid);
  const biorth::CoefficientSeq a =
      resolve_coeffs(coeffs, coeffs_file, freqs.size());
  const biorth::MaximalData md = biorth::maximal_data(a, h);
  const biorth::BiorthogonalPair pair = biorth::salem_pair(a, h, md, tol);
  const biorth::InequalityReport rep = biorth::inequality_functional(pair, tol);

  // paper-side norm bounds of the construction
  const double s_star_l1 = md.s_star_l1();
  const double min_a = a.min_abs();
  const double w_bound =
      md.sup_norm_max * md.sup_norm_max / (min_a * min_a) * s_star_l1;
  double w_slack_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < pair.w.n(); ++k) {
    const double wn = biorth::norm2(pair.w[k]);
    w_slack_min = std::min(w_slack_min, w_bound - wn * wn);
  }
  double sigma_slack_min = std::numeric_limits<double>::infinity();
  {
    biorth::CVector running(pair.v.dim(), biorth::Complex{0.0, 0.0});
    for (std::size_t k = 0; k < pair.v.n(); ++k) {
      for (std::size_t i = 0; i < pair.v.dim(); ++i)
        running[i] += pair.v[k][i];
      const double sn = biorth::norm2(running);
      sigma_slack_min =
          std::min(sigma_slack_min,
                   md.partial_sums[k].l1() - sn * sn);
    }
  }
  double max_partial_l1 = 0.0;
  for (const biorth::GridFunction& s : md.partial_sums)
    max_partial_l1 = std::max(max_partial_l1, s.l1());

  const bool bounds_ok = w_slack_min >= -1e-9 && sigma_slack_min >= -1e-9 &&
                         max_partial_l1 <= s_star_l1 + 1e-12;
  json payload{{"n", h.n()},
               {"grid", grid_size},
               {"residual", pair.residual},
               {"lhs", rep.lhs},
               {"w_max", rep.w_max},
               {"sigma_max", rep.sigma_max},
               {"product", rep.product},
               {"c_empirical", rep.c_empirical},
               {"s_star_l1", s_star_l1},
               {"m_inf", md.sup_norm_max},
               {"w_bound_slack_min", w_slack_min},
               {"sigma_bound_slack_min", sigma_slack_min},
               {"max_partial_l1", max_partial_l1},
               {"bounds_ok", bounds_ok}};
  const json params{{"freqs", freq_spec},
                    {"coeffs", coeffs},
                    {"coeffs_file", coeffs_file},
                    {"grid", grid_size},
                    {"tol", tol}};
  return finish(biorth::make_envelope(
                    "salem", params, payload,
                    bounds_ok ? biorth::ReportStatus::ok
                              : biorth::ReportStatus::violation),
                opts);
}

// ----------------------------------------------------------- corollary ----

int run_corollary(const std::string& kind_name, const std::string& freq_spec,
                  const std::string& coeffs, const std::string& coeffs_file,
                  std::size_t grid_size, const OutputOptions& opts) {
  const biorth::CorollaryKind kind =
      biorth::corollary_kind_from_string(kind_name);
  const std::vector<long> freqs = biorth::parse_freq_spec(freq_spec);
  const biorth::CoefficientSeq a =
      resolve_coeffs(coeffs, coeffs_file, freqs.size());
  const biorth::Grid grid(grid_size);
  const biorth::CorollaryReport rep =
      biorth::corollary_report(kind, a, freqs, grid);
  json payload{{"kind", biorth::to_string(rep.kind)},
               {"n", rep.n},
               {"N", rep.grid_size},
               {"lhs", rep.lhs},
               {"rhs_factors", rep.rhs_factors},
               {"product", rep.product},
               {"c_empirical", rep.c_empirical}};
  const json params{{"kind", kind_name},
                    {"freqs", freq_spec},
                    {"coeffs", coeffs},
                    {"coeffs_file", coeffs_file},
                    {"grid", grid_size}};
  return finish(biorth::make_envelope("corollary", params, payload,
                                      biorth::ReportStatus::ok),
                opts,
                {"kind", "n", "N", "lhs", "rhs_factors", "product",
                 "c_empirical"});
}

// ---------------------------------------------------------- proofchain ----

int run_proofchain(std::size_t n, std::size_t grid_size, std::uint64_t seed,
                   double tol, const OutputOptions& opts) {
  const biorth::ChainConfig config =
      biorth::make_chain_config(n, grid_size, seed);
  const biorth::ChainReport rep =
      biorth::chain_check(config.f, config.pair, config.witness, tol);
  const biorth::InequalityReport ineq =
      biorth::inequality_functional(config.pair, tol);
  const double m_l1 = config.stopping.maximal_l1();
  const double conclusion_rhs = std::sqrt(static_cast<double>(n)) *
                                ineq.w_max * ineq.sigma_max *
                                config.witness.l2();
  const double conclusion_slack = conclusion_rhs - m_l1;
  const bool ok = rep.slacks_ok() && conclusion_slack >= -1e-9;
  json payload{{"n", n},
               {"d", config.pair.v.dim()},
               {"grid", grid_size},
               {"seed", seed},
               {"bessel_slack", rep.bessel_slack},
               {"bigbess_slack", rep.bigbess_slack},
               {"mainpoint_slack", rep.mainpoint_slack},
               {"gsf_slack", rep.gsf_slack},
               {"abel_residual", rep.abel_residual},
               {"witness_identity_residual", rep.witness_identity_residual},
               {"m_l1", m_l1},
               {"conclusion_rhs", conclusion_rhs},
               {"conclusion_slack", conclusion_slack},
               {"slacks_ok", ok}};
  const json params{
      {"n", n}, {"grid", grid_size}, {"seed", seed}, {"tol", tol}};
  return finish(biorth::make_envelope("proofchain", params, payload,
                                      ok ? biorth::ReportStatus::ok
                                         : biorth::ReportStatus::violation),
                opts);
}

// ------------------------------------------------------------- menshov ----

int run_menshov(std::size_t n, const std::string& freq_spec,
                std::size_t grid_size, const OutputOptions& opts) {
  std::vector<long> freqs;
  if (!freq_spec.empty()) {
    freqs = biorth::parse_freq_spec(freq_spec);
  } else {
    if (n == 0)
      throw biorth::input_error("menshov: give --n or --freqs");
    freqs.resize(n);
    for (std::size_t k = 0; k < n; ++k) freqs[k] = static_cast<long>(k + 1);
  }
  const biorth::Grid grid(grid_size);
  const biorth::OrthonormalSystem f = biorth::trig_system(freqs, grid);
  const biorth::MenshovLevel lvl = biorth::menshov_level(f);
  json payload{{"n", f.n()},
               {"grid", grid_size},
               {"t_star", lvl.t_star},
               {"c0_emp", lvl.c0_emp}};
  const json params{{"n", n}, {"freqs", freq_spec}, {"grid", grid_size}};
  return finish(biorth::make_envelope("menshov", params, payload,
                                      biorth::ReportStatus::ok),
                opts);
}

// -------------------------------------------------------------- search ----

json search_result_to_json(const biorth::SearchConfig& config,
                           const biorth::SearchResult& result) {
  json trace = json::array();
  for (const biorth::RestartTrace& t : result.trace)
    trace.push_back(json{{"restart", t.restart_id},
                         {"seed", t.seed},
                         {"f", t.f}});
  return json{{"n", config.n},
              {"field",
               config.field == biorth::Field::complex ? "complex" : "real"},
              {"restarts", config.restarts},
              {"budget", config.budget},
              {"seed", config.seed},
              {"f_best", result.f_best},
              {"c_empirical", result.c_empirical},
              {"evaluations", result.evaluations},
              {"f_seen_min", result.f_seen_min},
              {"best_matrix", biorth::matrix_to_json(result.best_a)},
              {"trace", trace}};
}

int run_search(biorth::SearchConfig config, const OutputOptions& opts) {
  const biorth::SearchResult result = biorth::search(config);
  json payload = search_result_to_json(config, result);
  const double c_cap = biorth::theorem_floor_cap();
  const double ratio =
      config.n > 1
          ? std::log(static_cast<double>(config.n)) / result.f_seen_min
          : 0.0;
  const bool cap_exceeded = ratio > c_cap;
  payload["c_cap"] = c_cap;
  payload["cap_exceeded"] = cap_exceeded;
  if (cap_exceeded)
    payload["finding"] =
        "empirical constant ln n / f exceeds the oracle-calibrated cap";
  const json params{{"n", config.n},
                    {"restarts", config.restarts},
                    {"budget", config.budget},
                    {"seed", config.seed},
                    {"field", config.field == biorth::Field::complex
                                  ? "complex"
                                  : "real"}};
  return finish(biorth::make_envelope("search", params, payload,
                                      cap_exceeded
                                          ? biorth::ReportStatus::violation
                                          : biorth::ReportStatus::ok),
                opts);
}

// ----------------------------------------------------------- constants ----

int run_constants(const std::string& ns_spec, biorth::SearchConfig base,
                  const std::string& plot, const OutputOptions& opts) {
  const std::vector<long> ns_raw = biorth::parse_freq_spec(ns_spec);
  std::vector<std::size_t> ns;
  for (long n : ns_raw) {
    if (n <= 1) {
      std::cerr << "warning: n = " << n << " excluded (log 1 = 0)\n";
      continue;
    }
    ns.push_back(static_cast<std::size_t>(n));
  }
  const std::vector<biorth::ConstantRow> table =
      biorth::constant_table(ns, base);
  json rows = json::array();
  std::vector<double> xs, ys;
  const double c_cap = biorth::theorem_floor_cap();
  bool cap_exceeded = false;
  for (const biorth::ConstantRow& row : table) {
    rows.push_back(json{{"n", row.n},
                        {"f_best", row.f_best},
                        {"ln_n", row.ln_n},
                        {"c_emp", row.c_emp}});
    if (row.c_emp > c_cap) cap_exceeded = true;
    xs.push_back(row.ln_n);
    ys.push_back(row.f_best);
  }
  json payload{{"rows", rows},
               {"columns", json::array({"n", "f_best", "ln_n", "c_emp"})},
               {"c_cap", c_cap},
               {"cap_exceeded", cap_exceeded}};
  if (!plot.empty() && xs.size() >= 2) {
    biorth::emit_plot({{"f_best", xs, ys}},
                      {"Best objective vs ln n", "ln n", "f_best"}, plot);
    payload["plot"] = plot;
  }
  const json params{{"ns", ns_spec},
                    {"restarts", base.restarts},
                    {"budget", base.budget},
                    {"seed", base.seed},
                    {"field", base.field == biorth::Field::complex
                                  ? "complex"
                                  : "real"}};
  return finish(biorth::make_envelope("constants", params, payload,
                                      cap_exceeded
                                          ? biorth::ReportStatus::violation
                                          : biorth::ReportStatus::ok),
                opts, {"n", "f_best", "ln_n", "c_emp"});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bi-orthogonal pair inequality laboratory"};
  app.set_version_flag("--version", biorth::kVersion);
  app.require_subcommand(1);

  try {
    // ---- dual
    auto* dual = app.add_subcommand("dual", "Dual basis of a vector set");
    std::string dual_in;
    double dual_tol = biorth::kDefaultCertTol;
    double dual_cap = biorth::kDefaultConditionCap;
    OutputOptions dual_out;
    dual->add_option("--in", dual_in, "Vector-set JSON file (rows = vectors)")
        ->required();
    dual->add_option("--tol", dual_tol, "Certification tolerance")
        ->capture_default_str();
    dual->add_option("--cond-cap", dual_cap, "Condition cap")
        ->capture_default_str();
    add_output_flags(dual, dual_out);

    // ---- ineq
    auto* ineq = app.add_subcommand(
        "ineq", "Pair inequality for a vector set and its dual");
    std::string ineq_in;
    double ineq_tol = biorth::kDefaultCertTol;
    double ineq_cap = biorth::kDefaultConditionCap;
    OutputOptions ineq_out;
    ineq->add_option("--in", ineq_in, "Vector-set JSON file")->required();
    ineq->add_option("--tol", ineq_tol, "Certification tolerance")
        ->capture_default_str();
    ineq->add_option("--cond-cap", ineq_cap, "Condition cap")
        ->capture_default_str();
    add_output_flags(ineq, ineq_out);

    // ---- matrix
    auto* matrix = app.add_subcommand(
        "matrix", "Pair from matrix columns and conjugated inverse rows");
    std::string matrix_in;
    double matrix_tol = biorth::kDefaultCertTol;
    double matrix_cap = biorth::kDefaultConditionCap;
    OutputOptions matrix_out;
    matrix->add_option("--in", matrix_in, "Square matrix JSON file")
        ->required();
    matrix->add_option("--tol", matrix_tol, "Certification tolerance")
        ->capture_default_str();
    matrix->add_option("--cond-cap", matrix_cap, "Condition cap")
        ->capture_default_str();
    add_output_flags(matrix, matrix_out);

    // ---- lebesgue
    auto* lebesgue = app.add_subcommand(
        "lebesgue", "L1 norms of Dirichlet kernels (optionally a sweep)");
    std::string leb_m = "1";
    std::size_t leb_grid = 0;
    std::string leb_plot;
    OutputOptions leb_out;
    lebesgue
        ->add_option("--m", leb_m,
                     "Kernel order(s): '8', '1,2,4' or '16:4096:x2'")
        ->capture_default_str();
    lebesgue
        ->add_option("--grid", leb_grid,
                     "Quadrature resolution (0: the 64(2m+1) rule)")
        ->capture_default_str();
    lebesgue->add_option("--plot", leb_plot, "Write an SVG of l1 vs ln m");
    add_output_flags(lebesgue, leb_out);

    // ---- maximal
    auto* maximal = app.add_subcommand(
        "maximal", "Maximal partial-sum data for a trigonometric system");
    std::string max_freqs, max_coeffs, max_coeffs_file;
    std::size_t max_grid = 4096;
    OutputOptions max_out;
    maximal->add_option("--freqs", max_freqs, "Frequencies, e.g. '1:16'")
        ->required();
    maximal->add_option("--coeffs", max_coeffs, "Inline real coefficients");
    maximal->add_option("--coeffs-file", max_coeffs_file,
                        "JSON array of coefficients");
    maximal->add_option("--grid", max_grid, "Grid size")
        ->capture_default_str();
    add_output_flags(maximal, max_out);

    // ---- salem
    auto* salem = app.add_subcommand(
        "salem", "Salem bi-orthogonal construction (single run or --band)");
    std::string sal_freqs, sal_coeffs, sal_coeffs_file, sal_band, sal_plot;
    std::size_t sal_grid = 4096;
    std::size_t sal_band_factor = 16;
    double sal_tol = biorth::kDefaultCertTol;
    OutputOptions sal_out;
    salem->add_option("--freqs", sal_freqs, "Frequencies, e.g. '1:16'");
    salem->add_option("--coeffs", sal_coeffs, "Inline real coefficients");
    salem->add_option("--coeffs-file", sal_coeffs_file,
                      "JSON array of coefficients");
    salem->add_option("--grid", sal_grid, "Grid size")->capture_default_str();
    salem->add_option("--band", sal_band,
                      "Growth-band mode over n list, e.g. '16:512:x2'");
    salem
        ->add_option("--band-grid-factor", sal_band_factor,
                     "Band mode grid size = max(1024, factor*n)")
        ->capture_default_str();
    salem->add_option("--tol", sal_tol, "Certification tolerance")
        ->capture_default_str();
    salem->add_option("--plot", sal_plot, "Write an SVG of product vs ln n");
    add_output_flags(salem, sal_out);

    // ---- corollary
    auto* corollary =
        app.add_subcommand("corollary", "Corollary inequality reports");
    std::string cor_kind, cor_freqs, cor_coeffs, cor_coeffs_file;
    std::size_t cor_grid = 4096;
    OutputOptions cor_out;
    corollary
        ->add_option("--kind", cor_kind,
                     "maxmaxmax|decreasing|littlewood|maximal-lemma")
        ->required();
    corollary->add_option("--freqs", cor_freqs, "Frequencies")->required();
    corollary->add_option("--coeffs", cor_coeffs, "Inline real coefficients");
    corollary->add_option("--coeffs-file", cor_coeffs_file,
                          "JSON array of coefficients");
    corollary->add_option("--grid", cor_grid, "Grid size")
        ->capture_default_str();
    add_output_flags(corollary, cor_out);

    // ---- proofchain
    auto* proofchain = app.add_subcommand(
        "proofchain", "Verify the full inequality mechanism on a random "
                      "configuration");
    std::size_t pc_n = 16, pc_grid = 2048;
    std::uint64_t pc_seed = 1;
    double pc_tol = biorth::kDefaultCertTol;
    OutputOptions pc_out;
    proofchain->add_option("--n", pc_n, "System size")->capture_default_str();
    proofchain->add_option("--grid", pc_grid, "Grid size")
        ->capture_default_str();
    proofchain->add_option("--seed", pc_seed, "Configuration seed")
        ->capture_default_str();
    proofchain->add_option("--tol", pc_tol, "Certification tolerance")
        ->capture_default_str();
    add_output_flags(proofchain, pc_out);

    // ---- menshov
    auto* menshov = app.add_subcommand(
        "menshov", "Menshov level (t*, c0) of a trigonometric system");
    std::size_t men_n = 0, men_grid = 4096;
    std::string men_freqs;
    OutputOptions men_out;
    menshov->add_option("--n", men_n, "Use frequencies 1..n");
    menshov->add_option("--freqs", men_freqs, "Explicit frequency list");
    menshov->add_option("--grid", men_grid, "Grid size")
        ->capture_default_str();
    add_output_flags(menshov, men_out);

    // ---- search
    auto* search =
        app.add_subcommand("search", "Minimize the matrix objective");
    biorth::SearchConfig sc;
    std::string search_field = "complex";
    OutputOptions search_out;
    search->add_option("--n", sc.n, "Matrix size")->capture_default_str();
    search->add_option("--restarts", sc.restarts, "Restart count")
        ->capture_default_str();
    search->add_option("--budget", sc.budget, "Evaluations per restart")
        ->capture_default_str();
    search->add_option("--seed", sc.seed, "RNG seed")->capture_default_str();
    search->add_option("--field", search_field, "real|complex")
        ->check(CLI::IsMember({"real", "complex"}))
        ->capture_default_str();
    search->add_option("--tau0", sc.smoothing_tau.initial,
                       "Initial softmax temperature")
        ->capture_default_str();
    search->add_option("--tau-decay", sc.smoothing_tau.decay,
                       "Temperature decay per improving step")
        ->capture_default_str();
    search->add_option("--tau-floor", sc.smoothing_tau.floor,
                       "Temperature floor")
        ->capture_default_str();
    search->add_option("--cond-cap", sc.condition_cap, "Condition cap")
        ->capture_default_str();
    add_output_flags(search, search_out);

    // ---- constants
    auto* constants = app.add_subcommand(
        "constants", "Empirical constant table over a list of n");
    biorth::SearchConfig cc;
    cc.restarts = 6;
    cc.budget = 2000;
    std::string const_ns = "2:8";
    std::string const_field = "complex";
    std::string const_plot;
    OutputOptions const_out;
    constants->add_option("--ns", const_ns, "Sizes, e.g. '2,4,8' or '2:8'")
        ->capture_default_str();
    constants->add_option("--restarts", cc.restarts, "Restart count")
        ->capture_default_str();
    constants->add_option("--budget", cc.budget, "Evaluations per restart")
        ->capture_default_str();
    constants->add_option("--seed", cc.seed, "RNG seed")
        ->capture_default_str();
    constants->add_option("--field", const_field, "real|complex")
        ->check(CLI::IsMember({"real", "complex"}))
        ->capture_default_str();
    constants->add_option("--plot", const_plot, "Write an SVG of f_best");
    add_output_flags(constants, const_out);

    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      app.exit(e);
      return 2;  // usage errors are exit 2
    }

    if (*dual) return run_dual(dual_in, dual_tol, dual_cap, dual_out);
    if (*ineq) return run_ineq(ineq_in, ineq_tol, ineq_cap, ineq_out);
    if (*matrix)
      return run_matrix(matrix_in, matrix_tol, matrix_cap, matrix_out);
    if (*lebesgue) return run_lebesgue(leb_m, leb_grid, leb_plot, leb_out);
    if (*maximal)
      return run_maximal(max_freqs, max_coeffs, max_coeffs_file, max_grid,
                         max_out);
    if (*salem)
      return run_salem(sal_freqs, sal_coeffs, sal_coeffs_file, sal_grid,
                       sal_band, sal_band_factor, sal_tol, sal_plot, sal_out);
    if (*corollary)
      return run_corollary(cor_kind, cor_freqs, cor_coeffs, cor_coeffs_file,
                           cor_grid, cor_out);
    if (*proofchain)
      return run_proofchain(pc_n, pc_grid, pc_seed, pc_tol, pc_out);
    if (*menshov) return run_menshov(men_n, men_freqs, men_grid, men_out);
    if (*search) {
      sc.field = search_field == "real" ? biorth::Field::real
                                        : biorth::Field::complex;
      return run_search(sc, search_out);
    }
    if (*constants) {
      cc.field = const_field == "real" ? biorth::Field::real
                                       : biorth::Field::complex;
      return run_constants(const_ns, cc, const_plot, const_out);
    }
    std::cerr << "no subcommand given\n";
    return 2;
  } catch (const biorth::certification_error& e) {
    std::cerr << "finding: " << e.what() << "\n";
    return 1;
  } catch (const biorth::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const biorth::singular_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
