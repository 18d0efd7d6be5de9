// etaverify: verify / eval / errata front end.
//
// Exit codes: 0 success, 1 a gating case ended MISMATCH_ALL, 2 an evaluator
// failed, 64 usage error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "etaverify/arithmetic.hpp"
#include "etaverify/closed_forms.hpp"
#include "etaverify/errors.hpp"
#include "etaverify/eta_series.hpp"
#include "etaverify/report.hpp"
#include "etaverify/verify.hpp"

using namespace etaverify;

namespace {

constexpr int kExitFailure = 2;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string point_text(const std::vector<std::string>& names, const ParamPoint& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ' ';
    s += names[i] + "=" + g17(p[i]);
  }
  return s;
}

// "c=0.5,1,2" -> {"c", {0.5, 1, 2}}
std::pair<std::string, std::vector<double>> parse_grid(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError("--grid expects name=v1,v2,...: " + spec);
  std::vector<double> values;
  std::stringstream in(spec.substr(eq + 1));
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--grid: not a number: '" + item + "'");
    }
  }
  if (values.empty()) throw UsageError("--grid: no values for " + spec.substr(0, eq));
  return {spec.substr(0, eq), values};
}

struct VerifyArgs {
  std::vector<std::string> cases{"all"};
  double tol = 1e-7;
  std::string json_path;
  std::string csv_path;
  std::vector<std::string> grids;
  bool serial = false;
};

int cmd_verify(const VerifyArgs& args) {
  SuiteOptions options;
  options.tol = args.tol;
  options.execution = args.serial ? Execution::serial : Execution::parallel;
  for (const auto& g : args.grids) {
    auto [name, values] = parse_grid(g);
    auto& slot = options.grid_overrides[name];
    slot.insert(slot.end(), values.begin(), values.end());
  }

  SuiteResult result;
  try {
    result = run_suite(args.cases, options);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  for (const auto& r : result.reports) {
    double worst = 0.0;
    double best = r.candidates.empty() ? 0.0 : r.candidates.front().residual;
    for (const auto& c : r.candidates) {
      worst = std::max(worst, c.residual);
      best = std::min(best, c.residual);
    }
    std::printf("%-13s %-24s %-19s best=%.3e worst=%.3e%s\n", r.case_id.c_str(),
                point_text(r.param_names, r.point).c_str(), std::string(to_string(r.verdict)).c_str(),
                best, worst, r.gating ? "" : "  (diagnostic)");
  }
  for (const auto& f : result.failures) {
    std::fprintf(stderr, "FAILED %s %s [%s]: %s\n", f.case_id.c_str(),
                 point_text(f.param_names, f.point).c_str(), f.side.c_str(), f.message.c_str());
  }
  std::printf("points=%zu failures=%zu", result.summary.points, result.summary.failures);
  for (const auto& [k, v] : result.summary.verdict_counts) std::printf(" %s=%zu", k.c_str(), v);
  std::printf(" success=%s\n", result.summary.success ? "true" : "false");

  if (!args.json_path.empty()) {
    std::ofstream out(args.json_path);
    if (!out) throw UsageError("cannot write " + args.json_path);
    out << to_json_text(make_document(result, utc_timestamp()));
  }
  if (!args.csv_path.empty()) {
    std::ofstream out(args.csv_path);
    if (!out) throw UsageError("cannot write " + args.csv_path);
    write_csv(out, result.reports);
  }

  return exit_status(result);
}

struct EvalArgs {
  std::string fn;
  std::optional<double> y, x, s, b, c, z;
  double tol = 1e-12;
  std::string candidate = "printed";
};

double need(const std::optional<double>& v, const char* flag, const std::string& fn) {
  if (!v) throw UsageError(fn + " needs --" + flag);
  return *v;
}

int cmd_eval(const EvalArgs& a) {
  Candidate cand;
  if (a.candidate == "printed") {
    cand = Candidate::printed;
  } else if (a.candidate == "derived") {
    cand = Candidate::derived;
  } else {
    throw UsageError("--candidate must be printed or derived");
  }

  const auto print = [&](const std::string& params, double value, double err) {
    std::printf("%s %s value=%s err<=%s\n", a.fn.c_str(), params.c_str(), g17(value).c_str(),
                g17(err).c_str());
    return 0;
  };
  const auto series = [&](const std::string& params, const SeriesResult& r) {
    return print(params, r.value, r.tail_bound);
  };
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  try {
    if (a.fn == "eta") {
      const double y = need(a.y, "y", a.fn);
      return series("y=" + g17(y), eta_product(y, a.tol));
    }
    if (a.fn == "eta3") {
      const double x = need(a.x, "x", a.fn);
      return series("x=" + g17(x), eta3_scaled(x, a.tol));
    }
    if (a.fn == "eta6") {
      const double x = need(a.x, "x", a.fn);
      return series("x=" + g17(x), eta6_scaled(x, a.tol));
    }
    if (a.fn == "eta12") {
      const double x = need(a.x, "x", a.fn);
      return series("x=" + g17(x), eta_scaled12(x, a.tol));
    }
    if (a.fn == "beta") {
      const double s = need(a.s, "s", a.fn);
      return series("s=" + g17(s), dirichlet_beta(s, a.tol));
    }
    if (a.fn == "ab") {
      const double b = need(a.b, "b", a.fn);
      const double c = need(a.c, "c", a.fn);
      const ABPair p = ab_pair(b, c);
      std::printf("ab b=%s c=%s A=%s B=%s\n", g17(b).c_str(), g17(c).c_str(), g17(p.A).c_str(),
                  g17(p.B).c_str());
      return 0;
    }
    if (a.fn == "rhs11sin" || a.fn == "rhs11cos") {
      const double b = need(a.b, "b", a.fn);
      const double c = need(a.c, "c", a.fn);
      const double v = a.fn == "rhs11sin" ? rhs_thm11_sin(b, c, cand) : rhs_thm11_cos(b, c);
      return print("b=" + g17(b) + " c=" + g17(c), v, 64.0 * kEps * std::fabs(v));
    }
    if (a.fn == "thm31lhs") {
      const double z = need(a.z, "z", a.fn);
      return series("z=" + g17(z), thm31_lhs(z, a.tol));
    }
    if (a.fn == "thm31rhs") {
      const double z = need(a.z, "z", a.fn);
      return series("z=" + g17(z), thm31_rhs(z, a.tol, cand));
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown function: " + a.fn);
}

struct ErrataArgs {
  std::vector<std::string> cases;
  double tol = 1e-7;
};

int cmd_errata(const ErrataArgs& args) {
  std::vector<std::string> ids;
  for (const auto& c : build_registry()) {
    if (c.rhs_candidates.size() == 2) ids.push_back(c.id);
  }
  if (!args.cases.empty()) {
    for (const auto& id : args.cases) {
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
        throw UsageError("errata applies to two-candidate cases only: " + id);
      }
    }
    ids = args.cases;
  }
  if (args.tol > 1e-5) {
    std::fprintf(stderr, "warning: tol %g is loose; candidates may both pass at more points\n",
                 args.tol);
  }

  SuiteOptions options;
  options.tol = args.tol;
  SuiteResult result;
  try {
    result = run_suite(ids, options);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  for (const auto& f : result.failures) {
    std::fprintf(stderr, "FAILED %s %s [%s]: %s\n", f.case_id.c_str(),
                 point_text(f.param_names, f.point).c_str(), f.side.c_str(), f.message.c_str());
  }

  std::map<std::string, std::vector<const VerificationReport*>> by_case;
  for (const auto& r : result.reports) by_case[r.case_id].push_back(&r);
  for (const auto& [id, reports] : by_case) {
    bool printed = false;
    bool derived = false;
    bool unresolved = false;
    for (const auto* r : reports) {
      std::printf("%-13s %-18s lhs=%-24s", id.c_str(), point_text(r->param_names, r->point).c_str(),
                  g17(r->lhs_value).c_str());
      for (const auto& c : r->candidates) std::printf(" %s=%.3e", c.label.c_str(), c.residual);
      std::printf("  %s\n", std::string(to_string(r->verdict)).c_str());
      switch (r->verdict) {
        case Verdict::match_printed_only: printed = true; break;
        case Verdict::match_derived_only: derived = true; break;
        case Verdict::match_both: break;
        default: unresolved = true; break;
      }
    }
    const char* finding = "BOTH";
    if (unresolved || (printed && derived)) {
      finding = "UNRESOLVED";
    } else if (printed) {
      finding = "PRINTED_CONFIRMED";
    } else if (derived) {
      finding = "DERIVED_CONFIRMED";
    }
    std::printf("finding %s %s\n", id.c_str(), finding);
  }
  return result.failures.empty() ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of eta-function integral identities"};
  app.require_subcommand(1);

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "run identity cases over their parameter grids");
  verify_cmd->add_option("--case", verify.cases, "case id or 'all' (repeatable)")->capture_default_str();
  verify_cmd->add_option("--tol", verify.tol, "absolute verdict tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--json", verify.json_path, "write the JSON report here");
  verify_cmd->add_option("--csv", verify.csv_path, "write the CSV report here");
  verify_cmd->add_option("--grid", verify.grids, "override a parameter grid: name=v1,v2,...");
  verify_cmd->add_flag("--serial", verify.serial, "evaluate grid points on one thread");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate one function");
  eval_cmd
      ->add_option("--fn", eval.fn,
                   "eta, eta3, eta6, eta12, beta, ab, rhs11sin, rhs11cos, thm31lhs, thm31rhs")
      ->required();
  eval_cmd->add_option("--y", eval.y);
  eval_cmd->add_option("--x", eval.x);
  eval_cmd->add_option("--s", eval.s);
  eval_cmd->add_option("--b", eval.b);
  eval_cmd->add_option("--c", eval.c);
  eval_cmd->add_option("--z", eval.z);
  eval_cmd->add_option("--tol", eval.tol)->capture_default_str()->check(CLI::PositiveNumber);
  eval_cmd->add_option("--candidate", eval.candidate, "printed or derived")->capture_default_str();

  ErrataArgs errata;
  auto* errata_cmd = app.add_subcommand("errata", "compare printed and derived right-hand sides");
  errata_cmd->add_option("--case", errata.cases, "restrict to these cases (repeatable)");
  errata_cmd->add_option("--tol", errata.tol)->capture_default_str()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify_cmd) return cmd_verify(verify);
    if (*eval_cmd) return cmd_eval(eval);
    if (*errata_cmd) return cmd_errata(errata);
  } catch (const UsageError& e) {
    std::cerr << "etaverify: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NonConvergence& e) {
    std::cerr << "etaverify: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
