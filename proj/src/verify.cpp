#include "etaverify/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "etaverify/arithmetic.hpp"
#include "etaverify/errors.hpp"
#include "etaverify/eta_series.hpp"
#include "etaverify/quadrature.hpp"

namespace etaverify {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;
constexpr std::int64_t kQuadratureBudget = 2'000'000;

// Closed forms carry only rounding error.
Evaluation closed(double v) { return {v, 64.0 * kEps * (std::fabs(v) + kEps)}; }

Evaluation from_series(const SeriesResult& s) { return {s.value, s.tail_bound}; }

Evaluation from_quadrature(const QuadratureResult& q) { return {q.value, q.abs_err_est}; }

// Evaluators inside a suite already run one point per thread.
QuadratureOptions quad_options() { return {kQuadratureBudget, Execution::serial}; }

Evaluation damped(Kernel kernel, Transform transform, double b, double c, double tol) {
  IntegrandSpec spec;
  spec.kernel = kernel;
  spec.transform = transform;
  spec.b = b;
  spec.c = c;
  return from_quadrature(integrate_damped_oscillatory(spec, tol, quad_options()));
}

Evaluation rational(Kernel kernel, double a, double b, double c, double tol) {
  IntegrandSpec spec;
  spec.kernel = kernel;
  spec.transform = Transform::none;
  spec.a = a;
  spec.b = b;
  spec.c = c;
  return from_quadrature(integrate_rational_oscillatory(spec, tol, quad_options()));
}

ParamAxis axis(std::string name, std::vector<double> grid, bool inclusive = false) {
  return {std::move(name), 0.0, inclusive, std::move(grid)};
}

RhsCandidate candidate(Candidate which, std::function<Evaluation(const ParamPoint&, double, Candidate)> fn) {
  return {std::string(to_string(which)),
          [which, fn = std::move(fn)](const ParamPoint& p, double tol) { return fn(p, tol, which); }};
}

std::vector<RhsCandidate> both(const std::function<Evaluation(const ParamPoint&, double, Candidate)>& fn) {
  return {candidate(Candidate::printed, fn), candidate(Candidate::derived, fn)};
}

RhsCandidate printed_only(Evaluator fn) { return {"printed", std::move(fn)}; }

// Where e^{-t x^2} has dropped far below tol.
double gaussian_cutoff(double t, double tol) { return std::sqrt((std::log(1.0 / tol) + 10.0) / t); }

// sum_{n odd} chi(n) int_0^inf x e^{-t x^2} sin(pi x n / 2) dx, each transform by quadrature.
Evaluation diag21_rhs(double t, double tol) {
  const double x_hi = gaussian_cutoff(t, tol);
  CompensatedSum total;
  double err = 0.0;
  for (std::int64_t n = 1;; n += 2) {
    const double k = 0.5 * kPi * static_cast<double>(n);
    // |transform| = sqrt(pi) k e^{-k^2/(4t)} / (4 t^{3/2}); stop once it is negligible.
    const double size = std::sqrt(kPi) * k * std::exp(-k * k / (4.0 * t)) / (4.0 * t * std::sqrt(t));
    if (size < 1e-3 * tol) {
      err += 2.0 * size;  // the omitted terms fall off faster than geometrically
      break;
    }
    const auto f = [=](double x) { return x * std::exp(-t * x * x) * std::sin(k * x); };
    const QuadratureResult q = integrate_adaptive(f, 0.0, x_hi, 0.25 * tol, kQuadratureBudget);
    total.add(chi_int(n) * q.value);
    err += q.abs_err_est;
  }
  return {total.value(), err};
}

// int_0^inf e^{-t x^2} dx + 2 sum_{k>=1} int_0^inf e^{-t x^2} cos(2 pi k x) dx.
Evaluation diag34_rhs(double t, double tol) {
  const double x_hi = gaussian_cutoff(t, tol);
  CompensatedSum total;
  double err = 0.0;
  const auto base = [=](double x) { return std::exp(-t * x * x); };
  const QuadratureResult q0 = integrate_adaptive(base, 0.0, x_hi, 0.25 * tol, kQuadratureBudget);
  total.add(q0.value);
  err += q0.abs_err_est;
  for (std::int64_t k = 1;; ++k) {
    const double w = 2.0 * kPi * static_cast<double>(k);
    const double size = std::sqrt(kPi / t) * std::exp(-w * w / (4.0 * t));
    if (size < 1e-3 * tol) {
      err += 2.0 * size;
      break;
    }
    const auto f = [=](double x) { return std::exp(-t * x * x) * std::cos(w * x); };
    const QuadratureResult q = integrate_adaptive(f, 0.0, x_hi, 0.125 * tol, kQuadratureBudget);
    total.add(2.0 * q.value);
    err += 2.0 * q.abs_err_est;
  }
  return {total.value(), err};
}

// 1/2 + sum_{n>=1} e^{-t n^2}
Evaluation diag34_lhs(double t, double tol) {
  CompensatedSum s;
  s.add(0.5);
  std::int64_t n = 1;
  for (;; ++n) {
    const double term = std::exp(-t * static_cast<double>(n * n));
    s.add(term);
    if (term < 1e-3 * tol * (1.0 - std::exp(-t))) break;
  }
  return {s.value(), 1e-3 * tol + 8.0 * kEps * s.value()};
}

std::string format_point(const std::vector<std::string>& names, const ParamPoint& point) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i) out << ',';
    out << (i < names.size() ? names[i] : "?") << '=' << point[i];
  }
  return out.str();
}

}  // namespace

EvaluationFailure::EvaluationFailure(std::string case_id, ParamPoint point, std::string side,
                                     const std::string& message)
    : std::runtime_error(case_id + " [" + side + "]: " + message),
      case_id_(std::move(case_id)),
      point_(std::move(point)),
      side_(std::move(side)) {}

std::vector<std::string> IdentityCase::param_names() const {
  std::vector<std::string> names;
  for (const auto& p : params) names.push_back(p.name);
  return names;
}

bool IdentityCase::in_domain(const ParamPoint& point) const {
  if (point.size() != params.size()) return false;
  for (std::size_t i = 0; i < point.size(); ++i) {
    const double v = point[i];
    if (!std::isfinite(v)) return false;
    if (params[i].lower_inclusive ? v < params[i].lower : v <= params[i].lower) return false;
  }
  return true;
}

std::vector<ParamPoint> IdentityCase::default_grid() const { return grid({}); }

std::vector<ParamPoint> IdentityCase::grid(
    const std::map<std::string, std::vector<double>>& overrides) const {
  std::vector<ParamPoint> points{ParamPoint{}};
  for (const auto& p : params) {
    const auto it = overrides.find(p.name);
    const std::vector<double>& values = it != overrides.end() ? it->second : p.grid;
    std::vector<ParamPoint> next;
    for (const auto& prefix : points) {
      for (double v : values) {
        ParamPoint q = prefix;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    }
    points = std::move(next);
  }
  return points;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::match: return "MATCH";
    case Verdict::match_derived_only: return "MATCH_DERIVED_ONLY";
    case Verdict::match_printed_only: return "MATCH_PRINTED_ONLY";
    case Verdict::match_both: return "MATCH_BOTH";
    case Verdict::mismatch_all: return "MISMATCH_ALL";
    case Verdict::inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

std::optional<Verdict> verdict_from_string(std::string_view s) {
  for (Verdict v : {Verdict::match, Verdict::match_derived_only, Verdict::match_printed_only,
                    Verdict::match_both, Verdict::mismatch_all, Verdict::inconclusive}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

std::vector<IdentityCase> build_registry() {
  std::vector<IdentityCase> cases;

  cases.push_back({
      "thm1.1-sin",
      "int eta^3(4ix/pi) e^{-b^2 x} sin(cx) dx",
      {axis("b", {0.5, 1, 2, 4}), axis("c", {0.25, 1, 5, 20})},
      [](const ParamPoint& p, double tol) {
        return damped(Kernel::eta3, Transform::sin, p[0], p[1], tol);
      },
      both([](const ParamPoint& p, double, Candidate w) { return closed(rhs_thm11_sin(p[0], p[1], w)); }),
  });

  cases.push_back({
      "thm1.1-cos",
      "int eta^3(4ix/pi) e^{-b^2 x} cos(cx) dx",
      {axis("b", {0.5, 1, 2, 4}), axis("c", {0.25, 1, 5, 20}, true)},
      [](const ParamPoint& p, double tol) {
        return damped(Kernel::eta3, Transform::cos, p[0], p[1], tol);
      },
      {printed_only([](const ParamPoint& p, double) { return closed(rhs_thm11_cos(p[0], p[1])); })},
  });

  cases.push_back({
      "thm1.2-sin",
      "int eta^6(4ix/pi) sin(cx) dx",
      {axis("c", {0.5, 1, 2, 3})},
      [](const ParamPoint& p, double tol) {
        return damped(Kernel::eta6, Transform::sin, 0.0, p[0], tol);
      },
      both([](const ParamPoint& p, double tol, Candidate w) {
        return from_series(rhs_thm12_sin(p[0], tol, w));
      }),
  });

  cases.push_back({
      "thm1.2-cos",
      "int eta^6(4ix/pi) cos(cx) dx",
      {axis("c", {0.5, 1, 2, 3}, true)},
      [](const ParamPoint& p, double tol) {
        return damped(Kernel::eta6, Transform::cos, 0.0, p[0], tol);
      },
      {printed_only([](const ParamPoint& p, double tol) { return from_series(rhs_thm12_cos(p[0], tol)); })},
  });

  cases.push_back({
      "thm1.3",
      "int eta^3(4ix/pi) eta(12ix/pi) sin(cx) dx",
      {axis("c", {0.5, 1, 2, 3})},
      [](const ParamPoint& p, double tol) {
        return damped(Kernel::eta3_eta12, Transform::sin, 0.0, p[0], tol);
      },
      both([](const ParamPoint& p, double tol, Candidate w) {
        return from_series(rhs_thm13(p[0], tol, w));
      }),
  });

  cases.push_back({
      "lemma2.1-sin",
      "sum chi(n) n / ((n^2+b^2)^2+c^2)",
      {axis("b", {0.5, 1, 2}), axis("c", {0.5, 1, 3})},
      [](const ParamPoint& p, double tol) { return from_series(lemma21_sum_sin(p[0], p[1], tol)); },
      {printed_only([](const ParamPoint& p, double) { return closed(lemma21_sin_closed(p[0], p[1])); })},
  });

  cases.push_back({
      "lemma2.1-cos",
      "sum chi(n) n (n^2+b^2) / ((n^2+b^2)^2+c^2)",
      {axis("b", {0.5, 1, 2}), axis("c", {0.5, 1, 3})},
      [](const ParamPoint& p, double tol) { return from_series(lemma21_sum_cos(p[0], p[1], tol)); },
      {printed_only([](const ParamPoint& p, double) { return closed(lemma21_cos_closed(p[0], p[1])); })},
  });

  cases.push_back({
      "gr-2.2",
      "int x sin(ax) / ((x^2+b^2)^2+c^2) dx",
      {axis("a", {0.5, 1, 2}), axis("b", {1, 2}), axis("c", {0.5, 1, 3})},
      [](const ParamPoint& p, double tol) { return rational(Kernel::rational_sin, p[0], p[1], p[2], tol); },
      {printed_only([](const ParamPoint& p, double) { return closed(gr_sin_closed(p[0], p[1], p[2])); })},
  });

  cases.push_back({
      "gr-2.3",
      "int x (x^2+b^2) sin(ax) / ((x^2+b^2)^2+c^2) dx",
      {axis("a", {0.5, 1, 2}), axis("b", {1, 2}), axis("c", {0.5, 1, 3})},
      [](const ParamPoint& p, double tol) { return rational(Kernel::rational_cos, p[0], p[1], p[2], tol); },
      {printed_only([](const ParamPoint& p, double) { return closed(gr_cos_closed(p[0], p[1], p[2])); })},
  });

  cases.push_back({
      "thm3.1",
      "pi/8 + sum chi(n) / (n (e^{n^2 z} - 1))",
      {axis("z", {0.25, 0.5, 1, 2, 5})},
      [](const ParamPoint& p, double tol) { return from_series(thm31_lhs(p[0], tol)); },
      both([](const ParamPoint& p, double tol, Candidate w) {
        return from_series(thm31_rhs(p[0], tol, w));
      }),
  });

  cases.push_back({
      "glaisher-3.5",
      "sum chi(n) e^{-n^2 z alpha} / n against its cosine-transform integral",
      {axis("z", {1, 2, 4}), axis("alpha", {1})},
      [](const ParamPoint& p, double tol) { return from_series(glaisher_series(p[0], p[1], tol)); },
      both([](const ParamPoint& p, double tol, Candidate w) {
        return from_quadrature(integrate_glaisher(p[0], p[1], tol, w, quad_options()));
      }),
  });

  return cases;
}

std::vector<IdentityCase> build_diagnostics() {
  std::vector<IdentityCase> cases;
  cases.push_back({
      "diag-2.1",
      "character sine-transform summation on x e^{-t x^2}",
      {axis("t", {0.5, 1, 2})},
      [](const ParamPoint& p, double tol) { return from_series(eta3_scaled(p[0], tol)); },
      {printed_only([](const ParamPoint& p, double tol) { return diag21_rhs(p[0], tol); })},
      false,
  });
  cases.push_back({
      "diag-3.4",
      "cosine-transform summation on e^{-t x^2}",
      {axis("t", {0.5, 1, 2})},
      [](const ParamPoint& p, double tol) { return diag34_lhs(p[0], tol); },
      {printed_only([](const ParamPoint& p, double tol) { return diag34_rhs(p[0], tol); })},
      false,
  });
  return cases;
}

std::vector<IdentityCase> all_cases() {
  std::vector<IdentityCase> cases = build_registry();
  for (auto& d : build_diagnostics()) cases.push_back(std::move(d));
  return cases;
}

std::optional<IdentityCase> find_case(std::string_view id) {
  for (auto& c : all_cases()) {
    if (c.id == id) return c;
  }
  return std::nullopt;
}

Verdict decide_verdict(const std::vector<CandidateResult>& candidates, double lhs_err, double tol) {
  bool printed = false;
  bool derived = false;
  bool any = false;
  for (const auto& c : candidates) {
    if (!c.pass) continue;
    any = true;
    if (c.label == "printed") printed = true;
    if (c.label == "derived") derived = true;
  }
  if (any) {
    if (candidates.size() == 1) return Verdict::match;
    if (printed && derived) return Verdict::match_both;
    if (derived) return Verdict::match_derived_only;
    if (printed) return Verdict::match_printed_only;
    return Verdict::match;
  }
  const bool tight = std::all_of(candidates.begin(), candidates.end(), [&](const CandidateResult& c) {
    return lhs_err + c.rhs_err < tol / 10.0;
  });
  return tight && !candidates.empty() ? Verdict::mismatch_all : Verdict::inconclusive;
}

VerificationReport run_case(const IdentityCase& identity, const ParamPoint& point, double tol,
                            Execution execution) {
  if (!(tol > 0.0)) throw DomainError("run_case: tol must be positive");
  if (!identity.in_domain(point)) {
    throw DomainError("run_case: point " + format_point(identity.param_names(), point) +
                      " outside the domain of " + identity.id);
  }
  const double side_tol = tol / 20.0;

  const auto evaluate = [&](const std::string& side, const Evaluator& fn) {
    try {
      return fn(point, side_tol);
    } catch (const NonConvergence& e) {
      throw EvaluationFailure(identity.id, point, side, e.what());
    } catch (const DomainError& e) {
      throw EvaluationFailure(identity.id, point, side, e.what());
    }
  };

  VerificationReport report;
  report.case_id = identity.id;
  report.param_names = identity.param_names();
  report.point = point;
  report.tol = tol;
  report.gating = identity.gating;

  const Evaluation lhs = evaluate("lhs", identity.lhs);
  report.lhs_value = lhs.value;
  report.lhs_err = lhs.error;

  report.candidates.resize(identity.rhs_candidates.size());
  for_each_index(identity.rhs_candidates.size(), execution, [&](std::size_t i) {
    const RhsCandidate& cand = identity.rhs_candidates[i];
    const Evaluation rhs = evaluate(cand.label, cand.evaluate);
    CandidateResult& r = report.candidates[i];
    r.label = cand.label;
    r.rhs_value = rhs.value;
    r.rhs_err = rhs.error;
    r.residual = std::fabs(lhs.value - rhs.value);
    r.pass = r.residual <= tol;
  });
  report.verdict = decide_verdict(report.candidates, report.lhs_err, tol);
  return report;
}

SuiteSummary summarize(const std::vector<VerificationReport>& reports,
                       const std::vector<FailureRecord>& failures) {
  SuiteSummary s;
  s.points = reports.size() + failures.size();
  s.failures = failures.size();
  for (const auto& r : reports) {
    ++s.verdict_counts[std::string(to_string(r.verdict))];
    if (r.gating && r.verdict == Verdict::mismatch_all) s.success = false;
  }
  for (const auto& f : failures) {
    if (f.gating) s.success = false;
  }
  return s;
}

int exit_status(const SuiteResult& result) {
  for (const auto& f : result.failures) {
    if (f.gating) return 2;
  }
  for (const auto& r : result.reports) {
    if (r.gating && r.verdict == Verdict::mismatch_all) return 1;
  }
  return 0;
}

SuiteResult run_suite(const std::vector<std::string>& case_ids, const SuiteOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("tol must be positive");

  std::vector<IdentityCase> selected;
  const std::vector<IdentityCase> everything = all_cases();
  for (const auto& id : case_ids) {
    if (id == "all") {
      selected = everything;
      break;
    }
    const auto it = std::find_if(everything.begin(), everything.end(),
                                 [&](const IdentityCase& c) { return c.id == id; });
    if (it == everything.end()) throw std::invalid_argument("unknown case id: " + id);
    if (std::none_of(selected.begin(), selected.end(),
                     [&](const IdentityCase& c) { return c.id == id; })) {
      selected.push_back(*it);
    }
  }
  std::sort(selected.begin(), selected.end(),
            [](const IdentityCase& l, const IdentityCase& r) { return l.id < r.id; });

  for (const auto& [name, values] : options.grid_overrides) {
    if (values.empty()) throw std::invalid_argument("grid override for " + name + " is empty");
    bool used = false;
    for (const auto& c : selected) {
      for (const auto& p : c.params) {
        if (p.name != name) continue;
        used = true;
        for (double v : values) {
          if (!std::isfinite(v) || (p.lower_inclusive ? v < p.lower : v <= p.lower)) {
            throw std::invalid_argument("grid value for " + name + " outside the domain of " + c.id);
          }
        }
      }
    }
    if (!used && !selected.empty()) {
      throw std::invalid_argument("no selected case has a parameter named " + name);
    }
  }

  struct Job {
    const IdentityCase* identity;
    ParamPoint point;
  };
  std::vector<Job> jobs;
  for (const auto& c : selected) {
    std::vector<ParamPoint> points = c.grid(options.grid_overrides);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    for (auto& p : points) jobs.push_back({&c, std::move(p)});
  }

  std::vector<std::optional<VerificationReport>> reports(jobs.size());
  std::vector<std::optional<FailureRecord>> failures(jobs.size());
  for_each_index(jobs.size(), options.execution, [&](std::size_t i) {
    const Job& job = jobs[i];
    try {
      reports[i] = run_case(*job.identity, job.point, options.tol, Execution::serial);
    } catch (const EvaluationFailure& e) {
      failures[i] = FailureRecord{job.identity->id, job.identity->param_names(), job.point,
                                  e.side(), e.what(), job.identity->gating};
    }
  });

  SuiteResult result;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (reports[i]) result.reports.push_back(std::move(*reports[i]));
    if (failures[i]) result.failures.push_back(std::move(*failures[i]));
  }
  result.summary = summarize(result.reports, result.failures);
  return result;
}

double estimate_beta3(double z, double tol, Candidate candidate) {
  if (!(z > 0.0)) throw DomainError("estimate_beta3: z must be positive");
  const SeriesResult lhs = thm31_lhs(z, 0.5 * tol / z);
  const SeriesResult corr = thm31_correction(z, 0.5 * tol / z, candidate);
  return z * (lhs.value - corr.value);
}

}  // namespace etaverify
