#include "biorth/io.hpp"

#include <fstream>
#include <sstream>

namespace biorth {

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw input_error("file '" + path + "': " + e.what());
  }
  return j;
}

Complex entry_from_json(const json& e, const std::string& context,
                        std::size_t index) {
  if (e.is_number()) return Complex{e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return Complex{e[0].get<double>(), e[1].get<double>()};
  throw input_error(context + ": entry " + std::to_string(index) +
                    " must be a number or an [re, im] pair");
}

}  // namespace

CMatrix matrix_from_json(const json& j, const std::string& context) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("entries"))
    throw input_error(context +
                      ": expected object with fields rows, cols, entries");
  if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned())
    throw input_error(context + ": fields rows/cols must be nonnegative "
                                "integers");
  const std::size_t rows = j["rows"].get<std::size_t>();
  const std::size_t cols = j["cols"].get<std::size_t>();
  const json& entries = j["entries"];
  if (!entries.is_array())
    throw input_error(context + ": field entries must be an array");
  if (entries.size() != rows * cols)
    throw input_error(context + ": field entries has " +
                      std::to_string(entries.size()) + " values, expected " +
                      std::to_string(rows * cols));
  CVector data(rows * cols);
  for (std::size_t t = 0; t < entries.size(); ++t)
    data[t] = entry_from_json(entries[t], context + ": field entries", t);
  return CMatrix(rows, cols, std::move(data));
}

CMatrix read_matrix_file(const std::string& path) {
  return matrix_from_json(load_json(path), "file '" + path + "'");
}

VectorSet read_vector_set_file(const std::string& path) {
  const CMatrix m = read_matrix_file(path);
  std::vector<CVector> vectors(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) vectors[i] = m.row(i);
  return VectorSet(std::move(vectors));
}

json matrix_to_json(const CMatrix& a) {
  json entries = json::array();
  for (const Complex& z : a.entries())
    entries.push_back(json::array({z.real(), z.imag()}));
  return json{{"rows", a.rows()}, {"cols", a.cols()}, {"entries", entries}};
}

json vector_set_to_json(const VectorSet& v) {
  json entries = json::array();
  for (std::size_t j = 0; j < v.n(); ++j)
    for (const Complex& z : v[j])
      entries.push_back(json::array({z.real(), z.imag()}));
  return json{{"rows", v.n()}, {"cols", v.dim()}, {"entries", entries}};
}

std::vector<long> parse_freq_spec(const std::string& spec) {
  std::vector<long> out;
  if (spec.empty()) throw input_error("empty frequency spec");
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    // "lo:hi" or "lo:hi:x2" / "lo:hi:3"
    std::string rest = spec;
    long lo = 0, hi = 0;
    long add_step = 1;
    long mul_step = 0;
    try {
      lo = std::stol(rest.substr(0, colon));
      rest = rest.substr(colon + 1);
      const auto colon2 = rest.find(':');
      if (colon2 == std::string::npos) {
        hi = std::stol(rest);
      } else {
        hi = std::stol(rest.substr(0, colon2));
        std::string step = rest.substr(colon2 + 1);
        if (!step.empty() && (step[0] == 'x' || step[0] == 'X'))
          mul_step = std::stol(step.substr(1));
        else
          add_step = std::stol(step);
      }
    } catch (const std::exception&) {
      throw input_error("bad frequency range '" + spec + "'");
    }
    if (hi < lo) throw input_error("bad frequency range '" + spec + "'");
    if (mul_step > 1) {
      if (lo <= 0)
        throw input_error("multiplicative range needs positive start");
      for (long v = lo; v <= hi; v *= mul_step) out.push_back(v);
    } else {
      if (add_step < 1) throw input_error("range step must be >= 1");
      for (long v = lo; v <= hi; v += add_step) out.push_back(v);
    }
    return out;
  }
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stol(tok));
    } catch (const std::exception&) {
      throw input_error("bad frequency value '" + tok + "'");
    }
  }
  if (out.empty()) throw input_error("empty frequency spec");
  return out;
}

std::vector<Complex> parse_coeff_spec(const std::string& spec) {
  std::vector<Complex> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.emplace_back(std::stod(tok), 0.0);
    } catch (const std::exception&) {
      throw input_error("bad coefficient value '" + tok + "'");
    }
  }
  if (out.empty()) throw input_error("empty coefficient spec");
  return out;
}

std::vector<Complex> read_coeff_file(const std::string& path) {
  const json j = load_json(path);
  if (!j.is_array())
    throw input_error("file '" + path + "': expected a JSON array");
  std::vector<Complex> out(j.size());
  for (std::size_t t = 0; t < j.size(); ++t)
    out[t] = entry_from_json(j[t], "file '" + path + "'", t);
  return out;
}

std::vector<long> read_freq_file(const std::string& path) {
  const json j = load_json(path);
  if (!j.is_array())
    throw input_error("file '" + path + "': expected a JSON array");
  std::vector<long> out(j.size());
  for (std::size_t t = 0; t < j.size(); ++t) {
    if (!j[t].is_number_integer())
      throw input_error("file '" + path + "': entry " + std::to_string(t) +
                        " must be an integer");
    out[t] = j[t].get<long>();
  }
  return out;
}

}  // namespace biorth
