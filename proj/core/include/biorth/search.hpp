// Empirical attack on the best constant: minimize
//   f(A) = max_k ||row_k(A^{-1})|| * max_k ||sum_{j<=k} col_j(A)||
// over invertible matrices with a multi-restart Nelder-Mead core on a
// Frobenius-normalized parametrization (||A||_F = n quotients the scale
// invariance). Early iterations use a temperature-weighted soft-max of both
// max terms; the exact objective ranks every evaluated point.

#pragma once

#include <cstdint>
#include <vector>

#include "biorth/ensembles.hpp"
#include "biorth/linalg.hpp"

namespace biorth {

struct TauSchedule {
  double initial = 0.5;
  double decay = 0.9;   // applied on each improving step
  double floor = 1e-3;
};

struct SearchConfig {
  std::size_t n = 2;
  std::size_t restarts = 8;
  std::size_t budget = 4000;  // objective evaluations per restart
  std::uint64_t seed = 1;
  TauSchedule smoothing_tau;
  Field field = Field::complex;
  double condition_cap = kDefaultConditionCap;
  std::size_t threads = 0;  // 0: BIORTH_THREADS env or hardware concurrency

  void validate() const;
};

struct RestartTrace {
  std::size_t restart_id = 0;
  std::uint64_t seed = 0;
  double f = 0.0;
};

struct SearchResult {
  CMatrix best_a;
  double f_best = 0.0;
  double c_empirical = 0.0;  // log n / f_best
  std::size_t evaluations = 0;
  double f_seen_min = 0.0;  // min exact f over every evaluated matrix
  std::vector<RestartTrace> trace;
};

struct ObjectiveTerms {
  double exact = 0.0;
  double smoothed = 0.0;  // soft-max product; always >= exact
};

// Exact objective; throws singular_error outside the search context.
double objective(const CMatrix& a, double condition_cap = kDefaultConditionCap);

ObjectiveTerms objective_terms(const CMatrix& a, double tau,
                               double condition_cap = kDefaultConditionCap);

// Penalty used inside the search when a candidate is singular.
double singular_penalty(std::size_t n);

SearchResult search(const SearchConfig& config);

// Exhaustive grid search over the invariance-reduced space (positive-diagonal
// upper triangular, unit leading entry), real field, n <= 3; returns the
// minimum of f. Independent of the objective/search implementation path:
// triangular inverses are closed-form.
double small_n_oracle(std::size_t n, std::size_t resolution = 401);

// 2x headroom over the empirical constant at n = 2.
double theorem_floor_cap(std::size_t oracle_resolution = 401);

struct ConstantRow {
  std::size_t n = 0;
  double f_best = 0.0;
  double ln_n = 0.0;
  double c_emp = 0.0;
};

// One search per n >= 2, rows sorted by n; n = 1 entries are skipped (the
// caller is expected to warn).
std::vector<ConstantRow> constant_table(const std::vector<std::size_t>& ns,
                                        SearchConfig base);

// Seed matrices for restart r: identity, character (DFT / real cosine
// basis), a grid-sampled Salem-pair matrix, then Gaussian draws.
CMatrix search_seed_matrix(std::size_t n, std::size_t restart_id, Rng& rng,
                           Field field);

}  // namespace biorth
