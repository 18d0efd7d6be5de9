#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "etaverify/closed_forms.hpp"
#include "etaverify/execution.hpp"

namespace etaverify {

/// One side of an identity evaluated at a parameter point.
struct Evaluation {
  double value = 0.0;
  double error = 0.0;
};

/// Parameter values in the order of IdentityCase::params.
using ParamPoint = std::vector<double>;
using Evaluator = std::function<Evaluation(const ParamPoint&, double tol)>;

struct RhsCandidate {
  std::string label;  // "printed" or "derived"
  Evaluator evaluate;
};

/// A named parameter, its admissible range and its default grid values.
struct ParamAxis {
  std::string name;
  double lower = 0.0;
  bool lower_inclusive = false;
  std::vector<double> grid;
};

struct IdentityCase {
  std::string id;
  std::string description;
  std::vector<ParamAxis> params;
  Evaluator lhs;
  std::vector<RhsCandidate> rhs_candidates;
  bool gating = true;  // diagnostics do not affect the suite's exit status

  std::vector<std::string> param_names() const;
  bool in_domain(const ParamPoint& point) const;
  /// Cartesian product of the axis grids, first axis slowest.
  std::vector<ParamPoint> default_grid() const;
  /// Same, with some axes' values replaced.
  std::vector<ParamPoint> grid(const std::map<std::string, std::vector<double>>& overrides) const;
};

enum class Verdict {
  match,
  match_derived_only,
  match_printed_only,
  match_both,
  mismatch_all,
  inconclusive,
};

std::string_view to_string(Verdict v);
std::optional<Verdict> verdict_from_string(std::string_view s);

struct CandidateResult {
  std::string label;
  double rhs_value = 0.0;
  double rhs_err = 0.0;
  double residual = 0.0;
  bool pass = false;

  friend bool operator==(const CandidateResult&, const CandidateResult&) = default;
};

struct VerificationReport {
  std::string case_id;
  std::vector<std::string> param_names;
  ParamPoint point;
  double lhs_value = 0.0;
  double lhs_err = 0.0;
  std::vector<CandidateResult> candidates;
  Verdict verdict = Verdict::inconclusive;
  double tol = 0.0;
  bool gating = true;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

/// An evaluator failed (typically NonConvergence); `side` is "lhs" or the
/// candidate label.
class EvaluationFailure : public std::runtime_error {
 public:
  EvaluationFailure(std::string case_id, ParamPoint point, std::string side,
                    const std::string& message);
  const std::string& case_id() const noexcept { return case_id_; }
  const ParamPoint& point() const noexcept { return point_; }
  const std::string& side() const noexcept { return side_; }

 private:
  std::string case_id_;
  ParamPoint point_;
  std::string side_;
};

struct FailureRecord {
  std::string case_id;
  std::vector<std::string> param_names;
  ParamPoint point;
  std::string side;
  std::string message;
  bool gating = true;

  friend bool operator==(const FailureRecord&, const FailureRecord&) = default;
};

struct SuiteSummary {
  std::size_t points = 0;
  std::map<std::string, std::size_t> verdict_counts;  // keyed by to_string(Verdict)
  std::size_t failures = 0;
  bool success = true;

  friend bool operator==(const SuiteSummary&, const SuiteSummary&) = default;
};

struct SuiteResult {
  std::vector<VerificationReport> reports;
  std::vector<FailureRecord> failures;
  SuiteSummary summary;
};

/// The eleven gating identity cases.
std::vector<IdentityCase> build_registry();
/// Non-gating numerical checks of the two Poisson summation formulas.
std::vector<IdentityCase> build_diagnostics();
/// Registry and diagnostics together.
std::vector<IdentityCase> all_cases();
/// Lookup over all_cases(); nullopt when the id is unknown.
std::optional<IdentityCase> find_case(std::string_view id);

/// Verdict rules: a candidate passes when its residual is <= tol. With no
/// passing candidate the verdict is MISMATCH_ALL only if every candidate's
/// lhs_err + rhs_err < tol/10, otherwise INCONCLUSIVE.
Verdict decide_verdict(const std::vector<CandidateResult>& candidates, double lhs_err, double tol);

/// Evaluates both sides with tol/20 each and assembles the report.
/// Throws DomainError for a point outside the case's domain and
/// EvaluationFailure when an evaluator fails.
VerificationReport run_case(const IdentityCase& identity, const ParamPoint& point, double tol,
                            Execution execution = Execution::serial);

struct SuiteOptions {
  double tol = 1e-7;
  Execution execution = Execution::parallel;
  std::map<std::string, std::vector<double>> grid_overrides;
};

/// Runs every point of the selected cases. Empty `case_ids` runs nothing;
/// {"all"} runs all_cases(). Reports are sorted by case id, then by the
/// parameter tuple. Success iff no gating MISMATCH_ALL and no gating failure.
/// Throws std::invalid_argument for unknown ids or unusable grid overrides.
SuiteResult run_suite(const std::vector<std::string>& case_ids, const SuiteOptions& options);

/// Process exit status for a suite run: 2 if a gating point failed to
/// evaluate, else 1 if a gating point is MISMATCH_ALL, else 0.
int exit_status(const SuiteResult& result);

SuiteSummary summarize(const std::vector<VerificationReport>& reports,
                       const std::vector<FailureRecord>& failures);

/// z * (thm31_lhs(z) - thm31_correction(z)): an independent route to beta(3).
double estimate_beta3(double z, double tol, Candidate candidate);

}  // namespace etaverify
