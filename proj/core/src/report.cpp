#include "biorth/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>

#include "biorth/errors.hpp"
#include "biorth/version.hpp"

namespace biorth {

namespace {

using nlohmann::json;

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void round_numbers(json& j) {
  if (j.is_number_float()) {
    j = round_sig(j.get<double>());
  } else if (j.is_object() || j.is_array()) {
    for (auto& child : j) round_numbers(child);
  }
}

std::string csv_cell(const json& value) {
  if (value.is_number_float()) return format_sig(value.get<double>());
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  if (value.is_number_unsigned())
    return std::to_string(value.get<unsigned long long>());
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  if (value.is_string()) {
    std::string s = value.get<std::string>();
    if (s.find(',') != std::string::npos ||
        s.find('"') != std::string::npos) {
      std::string quoted = "\"";
      for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      quoted += '"';
      return quoted;
    }
    return s;
  }
  if (value.is_array()) {
    // numeric arrays collapse into one ';'-joined cell
    std::string s;
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (i > 0) s += ';';
      s += csv_cell(value[i]);
    }
    return s;
  }
  return value.dump();
}

bool csv_scalar(const json& value) {
  return value.is_number() || value.is_boolean() || value.is_string() ||
         (value.is_array() &&
          (value.empty() || value[0].is_number() || value[0].is_string()));
}

}  // namespace

std::string to_string(ReportStatus status) {
  switch (status) {
    case ReportStatus::ok: return "ok";
    case ReportStatus::violation: return "violation";
    case ReportStatus::error: return "error";
  }
  return "error";
}

ReportEnvelope make_envelope(const std::string& subcommand, json parameters,
                             json payload, ReportStatus status) {
  ReportEnvelope env;
  env.subcommand = subcommand;
  env.parameters = std::move(parameters);
  env.payload = std::move(payload);
  env.status = status;
  env.timestamp = utc_timestamp();
  return env;
}

double round_sig(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return std::strtod(buf, nullptr);
}

std::string format_sig(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return buf;
}

json envelope_to_json(const ReportEnvelope& envelope) {
  json j;
  j["version"] = kVersion;
  j["subcommand"] = envelope.subcommand;
  j["parameters"] = envelope.parameters;
  j["timestamp"] = envelope.timestamp;
  j["payload"] = envelope.payload;
  j["status"] = to_string(envelope.status);
  round_numbers(j);
  return j;
}

std::string emit_report_json(const ReportEnvelope& envelope) {
  return envelope_to_json(envelope).dump(2) + "\n";
}

std::string emit_report_csv(const ReportEnvelope& envelope,
                            const std::vector<std::string>& columns) {
  json payload = envelope.payload;
  round_numbers(payload);

  json rows = json::array();
  if (payload.is_object() && payload.contains("rows") &&
      payload["rows"].is_array()) {
    rows = payload["rows"];
  } else if (payload.is_object()) {
    json flat = json::object();
    for (auto it = payload.begin(); it != payload.end(); ++it)
      if (csv_scalar(it.value())) flat[it.key()] = it.value();
    rows.push_back(flat);
  }

  std::vector<std::string> header = columns;
  if (header.empty()) {
    if (!rows.empty())
      for (auto it = rows[0].begin(); it != rows[0].end(); ++it)
        header.push_back(it.key());
    else if (payload.is_object() && payload.contains("columns") &&
             payload["columns"].is_array())
      for (const auto& c : payload["columns"])
        header.push_back(c.get<std::string>());
  }

  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i > 0) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const json& row : rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i > 0) out += ',';
      if (row.contains(header[i])) out += csv_cell(row[header[i]]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace biorth
