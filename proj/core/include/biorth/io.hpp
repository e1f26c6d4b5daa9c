// File formats and input parsing for the CLI surface.
//
// Matrix / vector-set files are JSON objects
//   {"rows": n, "cols": d, "entries": [[re, im], ...]}
// with entries row-major. Read as a vector set, each row is one vector.
// Frequency and coefficient lists are JSON arrays; coefficients may be
// plain numbers or [re, im] pairs.

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "biorth/grid.hpp"
#include "biorth/pair.hpp"

namespace biorth {

using json = nlohmann::json;

CMatrix read_matrix_file(const std::string& path);
VectorSet read_vector_set_file(const std::string& path);

json matrix_to_json(const CMatrix& a);
json vector_set_to_json(const VectorSet& v);
CMatrix matrix_from_json(const json& j, const std::string& context);

// "1,2,5" or inclusive ranges "1:64" / "16:4096:x2" (x = multiplicative step).
std::vector<long> parse_freq_spec(const std::string& spec);

// Inline comma list of reals, e.g. "1,0.5,-2".
std::vector<Complex> parse_coeff_spec(const std::string& spec);

// JSON array file of numbers or [re, im] pairs.
std::vector<Complex> read_coeff_file(const std::string& path);
std::vector<long> read_freq_file(const std::string& path);

}  // namespace biorth
