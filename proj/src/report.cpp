#include "etaverify/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace etaverify {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kCanonicalParams[] = {"a", "b", "c", "z", "alpha", "t"};

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json point_json(const std::vector<std::string>& names, const ParamPoint& point) {
  json p = json::object();
  for (std::size_t i = 0; i < names.size() && i < point.size(); ++i) p[names[i]] = point[i];
  return p;
}

// Parameter order comes from "param_names"; the object form is for readers.
ParamPoint point_from_json(const json& j, const std::vector<std::string>& names) {
  ParamPoint point;
  for (const auto& n : names) point.push_back(j.at("point").at(n).get<double>());
  return point;
}

json report_json(const VerificationReport& r) {
  json cands = json::array();
  for (const auto& c : r.candidates) {
    cands.push_back({{"label", c.label},
                     {"rhs_value", c.rhs_value},
                     {"rhs_err", c.rhs_err},
                     {"residual", c.residual},
                     {"pass", c.pass}});
  }
  return {{"case_id", r.case_id},
          {"param_names", r.param_names},
          {"point", point_json(r.param_names, r.point)},
          {"lhs_value", r.lhs_value},
          {"lhs_err", r.lhs_err},
          {"candidates", cands},
          {"verdict", std::string(to_string(r.verdict))},
          {"tol", r.tol},
          {"gating", r.gating}};
}

VerificationReport report_from_json(const json& j) {
  VerificationReport r;
  r.case_id = j.at("case_id").get<std::string>();
  r.param_names = j.at("param_names").get<std::vector<std::string>>();
  r.point = point_from_json(j, r.param_names);
  r.lhs_value = j.at("lhs_value").get<double>();
  r.lhs_err = j.at("lhs_err").get<double>();
  for (const auto& c : j.at("candidates")) {
    r.candidates.push_back({c.at("label").get<std::string>(), c.at("rhs_value").get<double>(),
                            c.at("rhs_err").get<double>(), c.at("residual").get<double>(),
                            c.at("pass").get<bool>()});
  }
  const auto verdict = verdict_from_string(j.at("verdict").get<std::string>());
  if (!verdict) throw std::invalid_argument("unknown verdict in report");
  r.verdict = *verdict;
  r.tol = j.at("tol").get<double>();
  r.gating = j.at("gating").get<bool>();
  return r;
}

json failure_json(const FailureRecord& f) {
  return {{"case_id", f.case_id},
          {"param_names", f.param_names},
          {"point", point_json(f.param_names, f.point)},
          {"side", f.side},
          {"message", f.message},
          {"gating", f.gating}};
}

FailureRecord failure_from_json(const json& j) {
  FailureRecord f;
  f.case_id = j.at("case_id").get<std::string>();
  f.param_names = j.at("param_names").get<std::vector<std::string>>();
  f.point = point_from_json(j, f.param_names);
  f.side = j.at("side").get<std::string>();
  f.message = j.at("message").get<std::string>();
  f.gating = j.at("gating").get<bool>();
  return f;
}

}  // namespace

ReportDocument make_document(const SuiteResult& result, std::string generated_at) {
  ReportDocument doc;
  doc.generated_at = std::move(generated_at);
  doc.suite = result.summary;
  doc.reports = result.reports;
  doc.failures = result.failures;
  return doc;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string to_json_text(const ReportDocument& doc) {
  json reports = json::array();
  for (const auto& r : doc.reports) reports.push_back(report_json(r));
  json failures = json::array();
  for (const auto& f : doc.failures) failures.push_back(failure_json(f));
  json counts = json::object();
  for (const auto& [k, v] : doc.suite.verdict_counts) counts[k] = v;

  const json j = {{"schema_version", doc.schema_version},
                  {"generated_at", doc.generated_at},
                  {"suite",
                   {{"points", doc.suite.points},
                    {"verdict_counts", counts},
                    {"failures", doc.suite.failures},
                    {"success", doc.suite.success}}},
                  {"reports", reports},
                  {"failures", failures}};
  return j.dump(2) + "\n";
}

ReportDocument parse_json_text(const std::string& text) {
  try {
    const json j = json::parse(text);
    ReportDocument doc;
    doc.schema_version = j.at("schema_version").get<std::string>();
    if (doc.schema_version != kSchemaVersion) {
      throw std::invalid_argument("unsupported schema_version " + doc.schema_version);
    }
    doc.generated_at = j.at("generated_at").get<std::string>();
    const json& s = j.at("suite");
    doc.suite.points = s.at("points").get<std::size_t>();
    doc.suite.failures = s.at("failures").get<std::size_t>();
    doc.suite.success = s.at("success").get<bool>();
    for (const auto& [k, v] : s.at("verdict_counts").items()) {
      doc.suite.verdict_counts[k] = v.get<std::size_t>();
    }
    for (const auto& r : j.at("reports")) doc.reports.push_back(report_from_json(r));
    for (const auto& f : j.at("failures")) doc.failures.push_back(failure_from_json(f));
    return doc;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

std::vector<std::string> csv_param_columns(const std::vector<VerificationReport>& reports) {
  std::vector<std::string> columns;
  for (const char* name : kCanonicalParams) {
    const bool used = std::any_of(reports.begin(), reports.end(), [&](const VerificationReport& r) {
      return std::find(r.param_names.begin(), r.param_names.end(), name) != r.param_names.end();
    });
    if (used) columns.emplace_back(name);
  }
  for (const auto& r : reports) {
    for (const auto& n : r.param_names) {
      if (std::find(columns.begin(), columns.end(), n) == columns.end()) columns.push_back(n);
    }
  }
  return columns;
}

void write_csv(std::ostream& out, const std::vector<VerificationReport>& reports) {
  const std::vector<std::string> columns = csv_param_columns(reports);
  out << "case_id,candidate";
  for (const auto& c : columns) out << ',' << c;
  out << ",lhs,lhs_err,rhs,rhs_err,residual,verdict\n";
  for (const auto& r : reports) {
    for (const auto& c : r.candidates) {
      out << r.case_id << ',' << c.label;
      for (const auto& col : columns) {
        out << ',';
        const auto it = std::find(r.param_names.begin(), r.param_names.end(), col);
        if (it != r.param_names.end()) {
          out << g17(r.point[static_cast<std::size_t>(it - r.param_names.begin())]);
        }
      }
      out << ',' << g17(r.lhs_value) << ',' << g17(r.lhs_err) << ',' << g17(c.rhs_value) << ','
          << g17(c.rhs_err) << ',' << g17(c.residual) << ',' << to_string(r.verdict) << '\n';
    }
  }
}

}  // namespace etaverify
