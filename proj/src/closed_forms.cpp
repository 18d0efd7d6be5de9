#include "etaverify/closed_forms.hpp"

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

void require(bool ok, const char* message) {
  if (!ok) throw DomainError(message);
}

bool positive(double v) { return v > 0.0 && std::isfinite(v); }
bool nonnegative(double v) { return v >= 0.0 && std::isfinite(v); }

[[noreturn]] void budget_exhausted(const char* op, double arg) {
  throw NonConvergence(std::string(op) + ": term budget exhausted at argument " +
                       std::to_string(arg));
}

// sinh(u) sin(u) / (cosh 2u + cos 2u), scaled by 2e^{-2u} top and bottom.
double glaisher_ratio(double u) {
  const double w = std::exp(-2.0 * u);
  return std::exp(-u) * (-std::expm1(-2.0 * u)) * std::sin(u) /
         (1.0 + w * w + 2.0 * w * std::cos(2.0 * u));
}

double lemma_sin_term(double n, double b, double c) {
  const double p = n * n + b * b;
  return n / (p * p + c * c);
}

double lemma_cos_term(double n, double b, double c) {
  const double p = n * n + b * b;
  return n * p / (p * p + c * c);
}

// Index from which the odd-index lemma sequences are treated as completely
// monotone: well past the modulus of the poles of the rational term.
std::int64_t lemma_monotone_from(double b, double c) {
  const double pole = std::pow(b * b * b * b + c * c, 0.25);
  return static_cast<std::int64_t>(16.0 * (pole + 1.0)) + 16;
}

}  // namespace

std::string_view to_string(Candidate c) {
  return c == Candidate::printed ? "printed" : "derived";
}

ABPair ab_pair(double b, double c) {
  require(nonnegative(b) && nonnegative(c), "ab_pair: b and c must be nonnegative");
  if (b == 0.0 && c == 0.0) throw DegenerateInput("ab_pair: b = c = 0");
  const double b2 = b * b;
  const double root = std::hypot(b2, c);
  ABPair r;
  r.A = std::sqrt(0.5 * (root + b2));
  r.B = c / (2.0 * r.A);
  return r;
}

double sin_shape(double u, double v) {
  // Multiply through by 4e^{-2u}: sinh u -> 2e^{-u}(1-w), sinh^2 u -> (1-w)^2.
  const double w = std::exp(-2.0 * u);
  const double one_minus_w = -std::expm1(-2.0 * u);
  const double cv = std::cos(v);
  return 2.0 * std::exp(-u) * one_minus_w * std::sin(v) /
         (one_minus_w * one_minus_w + 4.0 * w * cv * cv);
}

double cos_shape(double u, double v) {
  const double w = std::exp(-2.0 * u);
  const double sv = std::sin(v);
  return 2.0 * std::exp(-u) * (1.0 + w) * std::cos(v) / ((1.0 + w) * (1.0 + w) - 4.0 * w * sv * sv);
}

// Derived prefactor. Expanding eta^3(i4x/pi) = sum chi(n) n e^{-n^2 x} and
// integrating term by term,
//   int_0^inf eta^3 e^{-b^2 x} sin(cx) dx = sum chi(n) n c / ((n^2+b^2)^2 + c^2)
//                                        = c * (pi/(4c)) * sin_shape
// by the lemma sum, so the prefactor is pi/4. The printed pi/(4c) agrees only at c = 1.
double rhs_thm11_sin(double b, double c, Candidate candidate) {
  require(positive(b) && positive(c), "rhs_thm11_sin: b and c must be positive");
  const ABPair ab = ab_pair(b, c);
  const double prefactor = candidate == Candidate::printed ? kPi / (4.0 * c) : kPi / 4.0;
  return prefactor * sin_shape(0.5 * kPi * ab.A, 0.5 * kPi * ab.B);
}

double rhs_thm11_cos(double b, double c) {
  require(positive(b) && nonnegative(c), "rhs_thm11_cos: need b > 0, c >= 0");
  const ABPair ab = ab_pair(b, c);
  return 0.25 * kPi * cos_shape(0.5 * kPi * ab.A, 0.5 * kPi * ab.B);
}

double lemma21_sum_sin_oracle(double b, double c, std::int64_t n_max) {
  require(n_max >= 1, "lemma21_sum_sin_oracle: N must be >= 1");
  CompensatedSum s;
  for (std::int64_t n = 1; n <= n_max; n += 2) {
    s.add(chi_int(n) * lemma_sin_term(static_cast<double>(n), b, c));
  }
  return s.value();
}

double lemma21_sum_cos_oracle(double b, double c, std::int64_t n_max) {
  require(n_max >= 1, "lemma21_sum_cos_oracle: N must be >= 1");
  CompensatedSum s;
  for (std::int64_t n = 1; n <= n_max; n += 4) {
    const double lead = lemma_cos_term(static_cast<double>(n), b, c);
    if (n + 2 <= n_max) {
      s.add(lead - lemma_cos_term(static_cast<double>(n + 2), b, c));
    } else {
      s.add(lead);
    }
  }
  return s.value();
}

SeriesResult lemma21_sum_cos_midpoint(double b, double c, std::int64_t n_max) {
  const double partial = lemma21_sum_cos_oracle(b, c, n_max);
  std::int64_t next = (n_max % 2 == 0) ? n_max + 1 : n_max + 2;
  const double a0 = lemma_cos_term(static_cast<double>(next), b, c);
  const double a1 = lemma_cos_term(static_cast<double>(next + 2), b, c);
  const double diff = a0 - a1;
  // Tail T = a0 - a1 + a2 - ... lies in [a0/2, a0/2 + diff/2] for a convex
  // decreasing sequence; take the centre.
  const double tail = 0.5 * a0 + 0.25 * diff;
  SeriesResult r;
  r.value = partial + chi_int(next) * tail;
  r.tail_bound = 0.25 * std::fabs(diff) + 4.0 * kEps * (std::fabs(partial) + 1.0);
  r.terms_used = next / 2 + 2;
  r.converged = true;
  return r;
}

SeriesResult lemma21_sum_sin(double b, double c, double tol) {
  require(positive(b) && positive(c), "lemma21_sum_sin: b and c must be positive");
  return alternating_sum(
      [b, c](std::int64_t k) { return lemma_sin_term(2.0 * k + 1.0, b, c); }, tol,
      lemma_monotone_from(b, c));
}

SeriesResult lemma21_sum_cos(double b, double c, double tol) {
  require(positive(b) && nonnegative(c), "lemma21_sum_cos: need b > 0, c >= 0");
  return alternating_sum(
      [b, c](std::int64_t k) { return lemma_cos_term(2.0 * k + 1.0, b, c); }, tol,
      lemma_monotone_from(b, c));
}

double lemma21_sin_closed(double b, double c) { return rhs_thm11_sin(b, c, Candidate::printed); }

double lemma21_cos_closed(double b, double c) { return rhs_thm11_cos(b, c); }

double gr_sin_closed(double a, double b, double c) {
  require(positive(a) && positive(b) && positive(c), "gr_sin_closed: a, b, c must be positive");
  const ABPair ab = ab_pair(b, c);
  return kPi / (2.0 * c) * std::exp(-a * ab.A) * std::sin(a * ab.B);
}

double gr_cos_closed(double a, double b, double c) {
  require(positive(a) && positive(b) && positive(c), "gr_cos_closed: a, b, c must be positive");
  const ABPair ab = ab_pair(b, c);
  return 0.5 * kPi * std::exp(-a * ab.A) * std::cos(a * ab.B);
}

namespace {

// sum_{n odd} chi(n) n shape(n, c), with |shape| <= bound_factor(w) e^{-pi n / 2}
// because A(n, c) >= n. Tail over odd n >= M with r = e^{-pi}:
//   sum_j (M+2j) e^{-pi(M+2j)/2} = e^{-pi M/2} (M/(1-r) + 2r/(1-r)^2).
template <class Shape, class Factor>
SeriesResult eta6_series(double c, double tol, double prefactor, Shape shape, Factor bound_factor) {
  const double r = std::exp(-kPi);
  CompensatedSum sum;
  double abs_sum = 0.0;
  std::int64_t terms = 0;
  double bound = 0.0;
  for (std::int64_t n = 1;; n += 2) {
    const double m = static_cast<double>(n);
    bound = prefactor * bound_factor(std::exp(-kPi * m)) * std::exp(-0.5 * kPi * m) *
            (m / (1.0 - r) + 2.0 * r / ((1.0 - r) * (1.0 - r)));
    if (bound <= 0.5 * tol) break;
    if (terms >= kDefaultTermBudget) budget_exhausted("eta6 series", c);
    const ABPair ab = ab_pair(m, c);
    const double t = prefactor * m * shape(0.5 * kPi * ab.A, 0.5 * kPi * ab.B);
    sum.add(chi_int(n) * t);
    abs_sum += std::fabs(t);
    ++terms;
  }
  SeriesResult res;
  res.value = sum.value();
  res.tail_bound = bound + 8.0 * kEps * abs_sum;
  res.terms_used = terms;
  res.converged = res.tail_bound <= tol;
  if (!res.converged) budget_exhausted("eta6 series", c);
  return res;
}

// |sin_shape(u, v)| <= 2 e^{-u} / (1 - w);  |cos_shape(u, v)| <= 2 e^{-u} (1 + w) / (1 - w)^2,
// with w = e^{-2u}.
double sin_shape_factor(double w) { return 2.0 / (1.0 - w); }
double cos_shape_factor(double w) { return 2.0 * (1.0 + w) / ((1.0 - w) * (1.0 - w)); }

}  // namespace

// Derived candidate. eta^6(i4x/pi) = sum_{m,n} chi(m) chi(n) m n e^{-(m^2+n^2) x}.
// For fixed n the inner sum over m is the damped sine integral with b = n, i.e.
//   c * sum_m chi(m) m / ((m^2+n^2)^2 + c^2) = (pi/4) sin_shape(A(n,c), B(n,c)),
// so the integral is (pi/4) sum_n chi(n) n sin_shape(n, c). The printed prefactor
// pi/(2c) coincides with pi/4 only at c = 2.
SeriesResult rhs_thm12_sin(double c, double tol, Candidate candidate) {
  require(positive(c), "rhs_thm12_sin: c must be positive");
  require(positive(tol), "rhs_thm12_sin: tol must be positive");
  const double prefactor = candidate == Candidate::printed ? kPi / (2.0 * c) : kPi / 4.0;
  return eta6_series(c, tol, prefactor, sin_shape, sin_shape_factor);
}

SeriesResult rhs_thm12_cos(double c, double tol) {
  require(nonnegative(c), "rhs_thm12_cos: c must be nonnegative");
  require(positive(tol), "rhs_thm12_cos: tol must be positive");
  return eta6_series(c, tol, kPi / 4.0, cos_shape, cos_shape_factor);
}

// Derived candidate. With Euler's eta(i12x/pi) = sum_k (-1)^k e^{-(6k+1)^2 x},
//   int eta^3(i4x/pi) e^{-(6k+1)^2 x} sin(cx) dx = (pi/4) sin_shape(A(b,c), B(b,c)),
// b = |6k+1|, by the damped sine integral; summing over k gives the sinh/sin
// shape. The printed right side uses the cosh/cos shape of the cosine transform.
SeriesResult rhs_thm13(double c, double tol, Candidate candidate) {
  require(positive(c), "rhs_thm13: c must be positive");
  require(positive(tol), "rhs_thm13: tol must be positive");
  const auto shape = [candidate](double u, double v) {
    return candidate == Candidate::printed ? cos_shape(u, v) : sin_shape(u, v);
  };
  const auto factor = [candidate](double w) {
    return candidate == Candidate::printed ? cos_shape_factor(w) : sin_shape_factor(w);
  };
  const double prefactor = kPi / 4.0;

  CompensatedSum sum;
  double abs_sum = 0.0;
  std::int64_t terms = 0;
  double bound = 0.0;
  for (std::int64_t k = 0;; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const auto add = [&](double b) {
      const ABPair ab = ab_pair(b, c);
      const double t = prefactor * shape(0.5 * kPi * ab.A, 0.5 * kPi * ab.B);
      sum.add(sign * t);
      abs_sum += std::fabs(t);
      ++terms;
    };
    if (k == 0) {
      add(1.0);
    } else {
      add(static_cast<double>(thm13_b(-k)));
      add(static_cast<double>(thm13_b(k)));
    }
    // Omitted b >= M = 6k + 5, in two arithmetic progressions of step 6.
    const double big_m = 6.0 * k + 5.0;
    bound = prefactor * 2.0 * factor(std::exp(-kPi * big_m)) * std::exp(-0.5 * kPi * big_m) /
            (1.0 - std::exp(-3.0 * kPi));
    if (bound <= 0.5 * tol) break;
    if (terms >= kDefaultTermBudget) budget_exhausted("rhs_thm13", c);
  }
  SeriesResult res;
  res.value = sum.value();
  res.tail_bound = bound + 8.0 * kEps * abs_sum;
  res.terms_used = terms;
  res.converged = res.tail_bound <= tol;
  if (!res.converged) budget_exhausted("rhs_thm13", c);
  return res;
}

std::int64_t thm13_b(std::int64_t n) {
  const std::int64_t v = 6 * n + 1;
  return v < 0 ? -v : v;
}

SeriesResult thm31_lhs(double z, double tol) {
  require(positive(z), "thm31_lhs: z must be positive");
  require(positive(tol), "thm31_lhs: tol must be positive");
  // Tail over odd n >= M: e^{-M^2 z} / (M (1 - e^{-M^2 z}) (1 - e^{-4 M z})).
  CompensatedSum sum;
  const double head = kPi / 8.0;
  double abs_sum = head;
  std::int64_t terms = 0;
  double bound = 0.0;
  for (std::int64_t n = 1;; n += 2) {
    const double m = static_cast<double>(n);
    bound = std::exp(-m * m * z) / (m * -std::expm1(-m * m * z) * -std::expm1(-4.0 * m * z));
    if (bound <= 0.5 * tol) break;
    if (terms >= kDefaultTermBudget) budget_exhausted("thm31_lhs", z);
    const double t = 1.0 / (m * std::expm1(m * m * z));
    sum.add(chi_int(n) * t);
    abs_sum += t;
    ++terms;
  }
  sum.add(head);
  SeriesResult res;
  res.value = sum.value();
  res.tail_bound = bound + 8.0 * kEps * abs_sum;
  res.terms_used = terms;
  res.converged = res.tail_bound <= tol;
  if (!res.converged) budget_exhausted("thm31_lhs", z);
  return res;
}

// Derived coefficient. Poisson summation with f(x) = sum chi(m) e^{-m^2 x z} / m
// needs 2 sum_n int_0^inf f(x) cos(2 pi n x) dx. The Glaisher pair
//   sum chi(m) e^{-m^2 t} / m = int_0^inf cos(t w) G(w) dw,
//   G(w) = sinh(s) sin(s) / (w (cosh 2s + cos 2s)),  s = (pi/2) sqrt(w/2),
// inverts to int_0^inf F(t) cos(k t) dt = (pi/2) G(k), so each Poisson term is
// (pi/z) G(2 pi n / z) = (1/(2n)) sinh(u_n) sin(u_n) / (cosh 2u_n + cos 2u_n).
// The coefficient is therefore 1/2; the printed 1/(2 pi) is off by a factor pi.
SeriesResult thm31_correction(double z, double tol, Candidate candidate) {
  require(positive(z), "thm31_correction: z must be positive");
  require(positive(tol), "thm31_correction: tol must be positive");
  const double k = candidate == Candidate::printed ? 1.0 / (2.0 * kPi) : 0.5;
  const double kappa = 0.5 * kPi * std::sqrt(kPi / z);

  // |ratio(u)| <= e^{-u} / (1 - e^{-2u}); with u_n = kappa sqrt(n) and
  // e^{-kappa sqrt n} <= int_{n-1}^n e^{-kappa sqrt t} dt,
  //   sum_{n>N} <= (2/kappa^2)(1 + kappa sqrt N) e^{-kappa sqrt N} / ((N+1)(1 - e^{-2 kappa sqrt N})).
  CompensatedSum sum;
  double abs_sum = 0.0;
  std::int64_t n = 0;
  double bound = 0.0;
  while (true) {
    ++n;
    const double m = static_cast<double>(n);
    const double t = k * glaisher_ratio(kappa * std::sqrt(m)) / m;
    sum.add(t);
    abs_sum += std::fabs(t);
    const double root = kappa * std::sqrt(m);
    bound = k * (2.0 / (kappa * kappa)) * (1.0 + root) * std::exp(-root) /
            ((m + 1.0) * -std::expm1(-2.0 * root));
    if (bound <= 0.5 * tol) break;
    if (n >= kDefaultTermBudget) budget_exhausted("thm31_correction", z);
  }
  SeriesResult res;
  res.value = sum.value();
  res.tail_bound = bound + 8.0 * kEps * abs_sum;
  res.terms_used = n;
  res.converged = res.tail_bound <= tol;
  if (!res.converged) budget_exhausted("thm31_correction", z);
  return res;
}

SeriesResult thm31_rhs(double z, double tol, Candidate candidate) {
  require(positive(z), "thm31_rhs: z must be positive");
  require(positive(tol), "thm31_rhs: tol must be positive");
  const SeriesResult beta3 = dirichlet_beta(3.0, 0.25 * tol * std::min(1.0, z));
  const SeriesResult corr = thm31_correction(z, 0.5 * tol, candidate);
  SeriesResult res;
  res.value = beta3.value / z + corr.value;
  res.tail_bound = beta3.tail_bound / z + corr.tail_bound + 2.0 * kEps * std::fabs(res.value);
  res.terms_used = beta3.terms_used + corr.terms_used;
  res.converged = res.tail_bound <= tol;
  return res;
}

double glaisher_kernel(double x, double alpha, Candidate candidate) {
  require(positive(x) && positive(alpha), "glaisher_kernel: x and alpha must be positive");
  const double k = candidate == Candidate::printed ? 0.5 : 1.0;
  const double w = 0.5 * kPi * std::sqrt(x / (2.0 * alpha));
  return k * glaisher_ratio(w) / x;
}

double glaisher_envelope(double x, double alpha, Candidate candidate) {
  const double k = candidate == Candidate::printed ? 0.5 : 1.0;
  const double w = 0.5 * kPi * std::sqrt(x / (2.0 * alpha));
  return k * std::exp(-w) / (x * -std::expm1(-2.0 * w));
}

SeriesResult glaisher_series(double z, double alpha, double tol) {
  require(positive(z) && positive(alpha), "glaisher_series: z and alpha must be positive");
  require(positive(tol), "glaisher_series: tol must be positive");
  const double t = z * alpha;
  // Tail over odd n >= M: e^{-M^2 t} / (M (1 - e^{-4 M t})).
  CompensatedSum sum;
  double abs_sum = 0.0;
  std::int64_t terms = 0;
  double bound = 0.0;
  for (std::int64_t n = 1;; n += 2) {
    const double m = static_cast<double>(n);
    bound = std::exp(-m * m * t) / (m * -std::expm1(-4.0 * m * t));
    if (bound <= 0.5 * tol) break;
    if (terms >= kDefaultTermBudget) budget_exhausted("glaisher_series", z);
    const double term = std::exp(-m * m * t) / m;
    sum.add(chi_int(n) * term);
    abs_sum += term;
    ++terms;
  }
  SeriesResult res;
  res.value = sum.value();
  res.tail_bound = bound + 8.0 * kEps * abs_sum;
  res.terms_used = terms;
  res.converged = res.tail_bound <= tol;
  if (!res.converged) budget_exhausted("glaisher_series", z);
  return res;
}

}  // namespace etaverify
