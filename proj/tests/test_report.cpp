#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "etaverify/report.hpp"

using namespace etaverify;

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream in(line);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

const SuiteResult& sample() {
  static const SuiteResult r = run_suite({"thm1.2-sin", "gr-2.2", "glaisher-3.5", "diag-3.4"}, {});
  return r;
}

}  // namespace

TEST_CASE("JSON round trip") {
  const ReportDocument doc = make_document(sample(), "2024-01-01T00:00:00Z");
  const std::string text = to_json_text(doc);
  const ReportDocument back = parse_json_text(text);
  CHECK(back == doc);
  CHECK(to_json_text(back) == text);

  const auto j = nlohmann::json::parse(text);
  CHECK(j.at("schema_version") == "1");
  CHECK(j.at("reports").size() == sample().reports.size());
  CHECK(j.at("suite").at("points") == sample().summary.points);
}

TEST_CASE("JSON keeps full double precision") {
  ReportDocument doc;
  VerificationReport r;
  r.case_id = "x";
  r.param_names = {"c"};
  r.point = {0.1};
  r.lhs_value = std::nextafter(1.0 / 3.0, 1.0);
  r.lhs_err = std::numeric_limits<double>::denorm_min();
  r.candidates = {{"printed", 2.0 / 3.0, 1e-300, 0.1 + 0.2, true}};
  r.tol = 1e-7;
  doc.reports.push_back(r);
  CHECK(parse_json_text(to_json_text(doc)) == doc);
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(parse_json_text("{"), std::invalid_argument);
  CHECK_THROWS_AS(parse_json_text("{\"schema_version\":\"2\"}"), std::invalid_argument);
  CHECK_THROWS_AS(parse_json_text("{\"schema_version\":\"1\"}"), std::invalid_argument);
}

TEST_CASE("CSV layout and agreement with JSON") {
  const SuiteResult& s = sample();
  std::ostringstream out;
  write_csv(out, s.reports);
  std::stringstream in(out.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "case_id,candidate,a,b,c,z,alpha,t,lhs,lhs_err,rhs,rhs_err,residual,verdict");

  const ReportDocument doc = parse_json_text(to_json_text(make_document(s, "t")));
  std::size_t rows = 0;
  std::string line;
  for (const auto& r : doc.reports) {
    for (const auto& c : r.candidates) {
      REQUIRE(std::getline(in, line));
      const auto f = split(line, ',');
      REQUIRE(f.size() == 14);
      CHECK(f[0] == r.case_id);
      CHECK(f[1] == c.label);
      const std::vector<std::string> cols{"a", "b", "c", "z", "alpha", "t"};
      for (std::size_t k = 0; k < cols.size(); ++k) {
        const auto it = std::find(r.param_names.begin(), r.param_names.end(), cols[k]);
        if (it == r.param_names.end()) {
          CHECK(f[2 + k].empty());
        } else {
          CHECK(std::stod(f[2 + k]) == r.point[static_cast<std::size_t>(it - r.param_names.begin())]);
        }
      }
      CHECK(std::stod(f[8]) == r.lhs_value);
      CHECK(std::stod(f[9]) == r.lhs_err);
      CHECK(std::stod(f[10]) == c.rhs_value);
      CHECK(std::stod(f[11]) == c.rhs_err);
      CHECK(std::stod(f[12]) == c.residual);
      CHECK(f[13] == to_string(r.verdict));
      ++rows;
    }
  }
  CHECK_FALSE(std::getline(in, line));
  CHECK(rows > 0);
}

TEST_CASE("timestamp format") {
  const std::string t = utc_timestamp();
  CHECK(t.size() == 20);
  CHECK(t[10] == 'T');
  CHECK(t.back() == 'Z');
}
