// Exception taxonomy shared by all modules.
//
// input_error and its subclasses mean the caller handed us something
// malformed (bad shapes, unmet preconditions, unusable resolution);
// singular_error covers factorization breakdowns; internal_error signals
// an implementation bug (a structural identity that must hold failed).

#pragma once

#include <stdexcept>
#include <string>

namespace biorth {

struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Grid too coarse for the requested frequency content.
struct resolution_error : input_error {
  using input_error::input_error;
};

// n = 1 style degeneracies (log 1 = 0).
struct degenerate_input_error : input_error {
  using input_error::input_error;
};

struct singular_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Gram matrix of a supposedly independent set failed to factor.
struct linear_dependence_error : singular_error {
  using singular_error::singular_error;
};

// A biorthogonality residual exceeded the certification tolerance.
struct certification_error : std::runtime_error {
  double residual;
  certification_error(const std::string& msg, double r)
      : std::runtime_error(msg), residual(r) {}
};

// Every restart of the extremal search ended in the penalty region.
struct search_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A structural identity that holds in exact arithmetic missed by more
// than fp noise allows: implementation bug, not a mathematical finding.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace biorth
