#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "etaverify/verify.hpp"

namespace etaverify {

inline constexpr const char* kSchemaVersion = "1";

/// Everything `verify --json` writes.
struct ReportDocument {
  std::string schema_version = kSchemaVersion;
  std::string generated_at;  // ISO 8601, UTC
  SuiteSummary suite;
  std::vector<VerificationReport> reports;
  std::vector<FailureRecord> failures;

  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

ReportDocument make_document(const SuiteResult& result, std::string generated_at);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

/// Pretty-printed JSON; doubles are written in shortest round-trip form.
std::string to_json_text(const ReportDocument& doc);
/// Inverse of to_json_text. Throws std::invalid_argument on malformed input.
ReportDocument parse_json_text(const std::string& text);

/// Parameter columns used in CSV output, in this order when present.
std::vector<std::string> csv_param_columns(const std::vector<VerificationReport>& reports);

/// One row per report x candidate:
///   case_id,candidate,<params>,lhs,lhs_err,rhs,rhs_err,residual,verdict
/// Parameters a case does not have are left empty. Values use %.17g.
void write_csv(std::ostream& out, const std::vector<VerificationReport>& reports);

}  // namespace etaverify
