// Report envelopes and their JSON/CSV renderings. JSON uses canonical
// (lexicographic) key order; numeric fields are rendered with 12 significant
// digits in both formats; CSV is UTF-8 with LF line endings, header row
// first. Everything except the timestamp is reproducible from the
// parameters echo.

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace biorth {

enum class ReportStatus { ok, violation, error };

std::string to_string(ReportStatus status);

struct ReportEnvelope {
  std::string subcommand;
  nlohmann::json parameters;  // flag echo, enough to reproduce the run
  nlohmann::json payload;
  ReportStatus status = ReportStatus::ok;
  std::string timestamp;  // ISO-8601 UTC; filled by make_envelope
};

ReportEnvelope make_envelope(const std::string& subcommand,
                             nlohmann::json parameters, nlohmann::json payload,
                             ReportStatus status);

// Round to `digits` significant decimal digits (applied to every number in
// an envelope before rendering).
double round_sig(double value, int digits = 12);

std::string format_sig(double value, int digits = 12);

nlohmann::json envelope_to_json(const ReportEnvelope& envelope);

std::string emit_report_json(const ReportEnvelope& envelope);

// If the payload holds a "rows" array of flat objects those become the CSV
// body; otherwise the payload's scalar fields form a single row. Arrays of
// numbers (for example rhs_factors) are joined with ';' inside one cell.
// `columns` fixes the column order; empty means lexicographic.
std::string emit_report_csv(const ReportEnvelope& envelope,
                            const std::vector<std::string>& columns = {});

}  // namespace biorth
