#include "etaverify/eta_series.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "etaverify/arithmetic.hpp"
#include "etaverify/errors.hpp"

namespace etaverify {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive");
}

[[noreturn]] void budget_exhausted(const char* op, double arg, std::int64_t budget) {
  throw NonConvergence(std::string(op) + ": term budget " + std::to_string(budget) +
                       " exhausted at argument " + std::to_string(arg));
}

}  // namespace

SeriesResult log_eta_product(double y, double tol, std::int64_t budget) {
  require_positive(y, "log_eta_product: y");
  require_positive(tol, "log_eta_product: tol");

  // |sum_{n>N} log(1 - q^n)| <= sum_{n>N} q^n/(1 - q^n) <= q^{N+1} / ((1-q)(1-q^{N+1})).
  const double one_minus_q = -std::expm1(-2.0 * kPi * y);
  CompensatedSum log_sum;
  double abs_sum = 0.0;
  std::int64_t n = 0;
  double bound = std::numeric_limits<double>::infinity();
  while (true) {
    const double q_next = std::exp(-2.0 * kPi * static_cast<double>(n + 1) * y);
    bound = q_next / (one_minus_q * (1.0 - q_next));
    if (bound <= 0.5 * tol) break;
    if (n + 1 > budget) budget_exhausted("log_eta_product", y, budget);
    ++n;
    const double term = std::log1p(-q_next);
    log_sum.add(term);
    abs_sum += std::fabs(term);
  }
  const double lead = -kPi * y / 12.0;
  log_sum.add(lead);

  SeriesResult r;
  r.value = log_sum.value();
  r.tail_bound = bound + 4.0 * kEps * (abs_sum + std::fabs(lead));
  r.terms_used = n;
  r.converged = r.tail_bound <= tol;
  if (!r.converged) budget_exhausted("log_eta_product", y, budget);
  return r;
}

SeriesResult eta_product(double y, double tol, std::int64_t budget) {
  require_positive(y, "eta_product: y");
  require_positive(tol, "eta_product: tol");
  // A log error of d gives a relative error of expm1(d) in the value.
  const SeriesResult log_eta = log_eta_product(y, 0.5 * std::log1p(tol), budget);
  const double value = std::exp(log_eta.value);
  const double rel = std::expm1(log_eta.tail_bound) + kEps;

  SeriesResult r;
  r.value = value;
  r.tail_bound = value * rel;
  r.terms_used = log_eta.terms_used;
  r.converged = rel <= tol;
  return r;
}

SeriesResult eta3_scaled(double x, double tol, std::int64_t budget) {
  require_positive(x, "eta3_scaled: x");
  require_positive(tol, "eta3_scaled: tol");

  // Tail over odd n >= M: h(t) = t e^{-t^2 x} decreases for t >= 1/sqrt(2x), so
  //   sum_{n>=M, odd} h(n) <= h(M) + (1/2) int_M^inf h = e^{-M^2 x} (M + 1/(4x)).
  const double monotone_from = 1.0 / std::sqrt(2.0 * x);
  CompensatedSum sum;
  double abs_sum = 0.0;
  std::int64_t terms = 0;
  double bound = 0.0;
  for (std::int64_t n = 1;; n += 2) {
    const double m = static_cast<double>(n);
    if (m >= monotone_from) {
      bound = std::exp(-m * m * x) * (m + 0.25 / x);
      if (bound <= 0.5 * tol) break;
    }
    if (terms >= budget) budget_exhausted("eta3_scaled", x, budget);
    const double term = m * std::exp(-m * m * x);
    sum.add(chi_int(n) * term);
    abs_sum += term;
    ++terms;
  }
  SeriesResult r;
  r.value = sum.value();
  r.tail_bound = bound + 4.0 * kEps * abs_sum;
  r.terms_used = terms;
  r.converged = r.tail_bound <= tol;
  if (!r.converged) budget_exhausted("eta3_scaled", x, budget);
  return r;
}

SeriesResult eta_scaled12(double x, double tol, std::int64_t budget) {
  require_positive(x, "eta_scaled12: x");
  require_positive(tol, "eta_scaled12: tol");

  // After all |n| <= K are included the omitted exponents are m = M + 6j and
  // M + 2 + 6j with M = 6K + 5, so the tail is <= 2 e^{-M^2 x} / (1 - e^{-12 M x}).
  CompensatedSum sum;
  double abs_sum = 0.0;
  std::int64_t terms = 0;
  double bound = 0.0;
  for (std::int64_t k = 0;; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    if (terms + 2 > budget) budget_exhausted("eta_scaled12", x, budget);
    if (k == 0) {
      const double t = std::exp(-x);
      sum.add(t);
      abs_sum += t;
      ++terms;
    } else {
      for (double m : {6.0 * k - 1.0, 6.0 * k + 1.0}) {
        const double t = std::exp(-m * m * x);
        sum.add(sign * t);
        abs_sum += t;
        ++terms;
      }
    }
    const double big_m = 6.0 * k + 5.0;
    bound = 2.0 * std::exp(-big_m * big_m * x) / (-std::expm1(-12.0 * big_m * x));
    if (bound <= 0.5 * tol) break;
  }
  SeriesResult r;
  r.value = sum.value();
  r.tail_bound = bound + 4.0 * kEps * abs_sum;
  r.terms_used = terms;
  r.converged = r.tail_bound <= tol;
  if (!r.converged) budget_exhausted("eta_scaled12", x, budget);
  return r;
}

SeriesResult eta6_scaled(double x, double tol, std::int64_t budget) {
  require_positive(tol, "eta6_scaled: tol");
  // Scale the cube's tolerance by its size so that 2|v|t + t^2 <= tol/2.
  const double size = std::fabs(eta3_kernel(x));
  const SeriesResult cube = eta3_scaled(x, 0.25 * tol / (size + std::sqrt(tol)), budget);
  const double v = cube.value;
  const double t = cube.tail_bound;
  SeriesResult r;
  r.value = v * v;
  r.tail_bound = 2.0 * std::fabs(v) * t + t * t + 2.0 * kEps * v * v;
  r.terms_used = cube.terms_used;
  r.converged = r.tail_bound <= tol;
  if (!r.converged) budget_exhausted("eta6_scaled", x, budget);
  return r;
}

double eta3_kernel(double x) {
  const double monotone_from = 1.0 / std::sqrt(2.0 * x);
  double sum = 0.0;
  double abs_sum = 0.0;
  for (std::int64_t n = 1;; n += 2) {
    const double m = static_cast<double>(n);
    if (m >= monotone_from) {
      const double bound = std::exp(-m * m * x) * (m + 0.25 / x);
      if (bound <= 0.0625 * kEps * abs_sum || bound < 1e-300) break;
    }
    const double term = m * std::exp(-m * m * x);
    sum += chi_int(n) * term;
    abs_sum += term;
  }
  return sum;
}

double eta12_kernel(double x) {
  double sum = std::exp(-x);
  double abs_sum = sum;
  for (std::int64_t k = 1;; ++k) {
    const double big_m = 6.0 * k - 1.0;
    const double bound = 2.0 * std::exp(-big_m * big_m * x) / (-std::expm1(-12.0 * big_m * x));
    if (bound <= 0.0625 * kEps * abs_sum || bound < 1e-300) break;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const double lo = std::exp(-big_m * big_m * x);
    const double hi = std::exp(-(big_m + 2.0) * (big_m + 2.0) * x);
    sum += sign * (lo + hi);
    abs_sum += lo + hi;
  }
  return sum;
}

}  // namespace etaverify
