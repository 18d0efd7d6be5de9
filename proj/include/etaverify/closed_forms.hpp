#pragma once

#include <cstdint>
#include <string_view>

#include "etaverify/series.hpp"

namespace etaverify {

/// Which right-hand side of an identity to evaluate: the formula as typeset
/// ("printed"), or the one obtained by re-deriving it from the theta
/// expansions and the lemma sums ("derived").
enum class Candidate { printed, derived };

std::string_view to_string(Candidate c);

/// The pair defined by 2A^2 = sqrt(b^4+c^2) + b^2 and 2B^2 = sqrt(b^4+c^2) - b^2.
/// Satisfies A^2 - B^2 = b^2, 2AB = c, A >= B >= 0.
struct ABPair {
  double A = 0.0;
  double B = 0.0;
};

/// b, c >= 0, not both zero (DegenerateInput). B is formed as c/(2A) to avoid
/// the cancellation in sqrt(b^4+c^2) - b^2 when c << b^2.
ABPair ab_pair(double b, double c);

/// sinh(u) sin(v) / (sinh^2 u + cos^2 v), evaluated without overflow for large u.
double sin_shape(double u, double v);
/// cosh(u) cos(v) / (cosh^2 u - sin^2 v), evaluated without overflow for large u.
double cos_shape(double u, double v);

/// Right side of the damped eta^3 sine integral. Printed prefactor pi/(4c);
/// derived prefactor pi/4 (see closed_forms.cpp for the derivation).
double rhs_thm11_sin(double b, double c, Candidate candidate = Candidate::printed);

/// Right side of the damped eta^3 cosine integral; c = 0 gives (pi/4) sech(pi b/2).
double rhs_thm11_cos(double b, double c);

/// Partial sum  sum_{n=1..N} chi(n) n / ((n^2+b^2)^2 + c^2).
double lemma21_sum_sin_oracle(double b, double c, std::int64_t n_max);

/// Partial sum  sum_{n=1..N} chi(n) n (n^2+b^2) / ((n^2+b^2)^2 + c^2), accumulated
/// as pair sums (n, n+2) of opposite sign. N is rounded down to close the last pair.
double lemma21_sum_cos_oracle(double b, double c, std::int64_t n_max);

/// Midpoint estimate for the cosine lemma sum: paired partial sum to n <= N plus
/// half of the first omitted term. For a convex decreasing tail the error is at
/// most a quarter of the first omitted difference; that bound is `tail_bound`.
SeriesResult lemma21_sum_cos_midpoint(double b, double c, std::int64_t n_max);

/// Certified sums of the two lemma series (alternating in the odd index).
SeriesResult lemma21_sum_sin(double b, double c, double tol);
SeriesResult lemma21_sum_cos(double b, double c, double tol);

/// Closed forms of the two lemma sums as printed.
double lemma21_sin_closed(double b, double c);
double lemma21_cos_closed(double b, double c);

/// int_0^inf x sin(ax) / ((x^2+b^2)^2+c^2) dx = (pi/(2c)) e^{-aA} sin(aB).
double gr_sin_closed(double a, double b, double c);
/// int_0^inf x (x^2+b^2) sin(ax) / ((x^2+b^2)^2+c^2) dx = (pi/2) e^{-aA} cos(aB).
double gr_cos_closed(double a, double b, double c);

/// Series right side of the eta^6 sine integral.
SeriesResult rhs_thm12_sin(double c, double tol, Candidate candidate);
/// Series right side of the eta^6 cosine integral (single candidate). c >= 0.
SeriesResult rhs_thm12_cos(double c, double tol);
/// Series right side of the eta^3(4x/pi) eta(12x/pi) sine integral.
SeriesResult rhs_thm13(double c, double tol, Candidate candidate);
/// The b-parameter of the n-th term of the bilateral sum: |6n + 1|.
std::int64_t thm13_b(std::int64_t n);

/// pi/8 + sum_{n odd} chi(n) / (n (e^{n^2 z} - 1)).
SeriesResult thm31_lhs(double z, double tol);
/// The correction series  k * sum_{n>=1} sinh(u_n) sin(u_n) / (n (cosh 2u_n + cos 2u_n)),
/// u_n = (pi/2) sqrt(n pi / z), with k = 1/(2 pi) printed and k = 1/2 derived.
SeriesResult thm31_correction(double z, double tol, Candidate candidate);
/// beta(3)/z + thm31_correction(z).
SeriesResult thm31_rhs(double z, double tol, Candidate candidate);

/// Kernel of the Glaisher cosine transform with scale alpha:
///   k * sinh(w) sin(w) / (x (cosh 2w + cos 2w)),  w = (pi/2) sqrt(x / (2 alpha)),
/// with k = 1/2 printed and k = 1 derived. The x -> 0 limit is k pi^2 / (16 alpha).
double glaisher_kernel(double x, double alpha, Candidate candidate = Candidate::printed);

/// Upper bound on |glaisher_kernel(x, alpha, candidate)|, decreasing in x.
double glaisher_envelope(double x, double alpha, Candidate candidate);

/// sum_{n odd} chi(n) e^{-n^2 z alpha} / n, the series side of the Glaisher integral.
SeriesResult glaisher_series(double z, double alpha, double tol);

}  // namespace etaverify
