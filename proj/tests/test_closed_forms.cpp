#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "etaverify/closed_forms.hpp"
#include "etaverify/errors.hpp"

using namespace etaverify;

namespace {
constexpr double kPi = std::numbers::pi;

double naive_sin_shape(double u, double v) {
  return std::sinh(u) * std::sin(v) / (std::sinh(u) * std::sinh(u) + std::cos(v) * std::cos(v));
}
double naive_cos_shape(double u, double v) {
  return std::cosh(u) * std::cos(v) / (std::cosh(u) * std::cosh(u) - std::sin(v) * std::sin(v));
}
}  // namespace

// Frozen references: mpmath at 30 digits (nsum / quadosc), scipy for the
// quadrature values of the integrals.

TEST_CASE("ab_pair examples") {
  const ABPair p = ab_pair(1.0, 0.0);
  CHECK(p.A == 1.0);
  CHECK(p.B == 0.0);
  const ABPair q = ab_pair(0.0, 2.0);
  CHECK(q.A == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(q.B == doctest::Approx(1.0).epsilon(1e-15));
  const ABPair r = ab_pair(1.0, 1.0);
  CHECK(std::fabs(r.A - 1.0986841134678100) <= 1e-15);
  CHECK(std::fabs(r.B - 0.45508986056222734) <= 1e-15);
  CHECK_THROWS_AS(ab_pair(0.0, 0.0), DegenerateInput);
  CHECK_THROWS_AS(ab_pair(-1.0, 1.0), DomainError);
}

TEST_CASE("ab_pair invariants on random inputs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> logu(-6.0, 6.0);
  for (int i = 0; i < 2000; ++i) {
    const double b = std::exp(logu(rng));
    const double c = std::exp(logu(rng));
    const ABPair p = ab_pair(b, c);
    CAPTURE(b);
    CAPTURE(c);
    REQUIRE(p.A >= p.B);
    REQUIRE(p.B >= 0.0);
    CHECK(std::fabs(2.0 * p.A * p.B - c) <= 4e-16 * c);
    CHECK(std::fabs((p.A - p.B) * (p.A + p.B) - b * b) <= 1e-14 * (b * b + c));
  }
}

TEST_CASE("shape functions agree with the textbook form and survive large u") {
  for (double u = 0.05; u < 20.0; u *= 1.3) {
    for (double v = -3.0; v <= 3.0; v += 0.37) {
      CHECK(sin_shape(u, v) == doctest::Approx(naive_sin_shape(u, v)).epsilon(1e-12));
      CHECK(cos_shape(u, v) == doctest::Approx(naive_cos_shape(u, v)).epsilon(1e-12));
    }
  }
  const double s = sin_shape(1000.0, 0.5);
  CHECK(std::isfinite(s));
  CHECK(s == doctest::Approx(2.0 * std::exp(-1000.0) * std::sin(0.5)).epsilon(1e-12));
}

TEST_CASE("theorem 1.1 right sides") {
  CHECK(std::fabs(rhs_thm11_sin(1.0, 1.0) - 0.17575754089491272) <= 1e-14);
  CHECK(rhs_thm11_sin(1.0, 1.0, Candidate::derived) == rhs_thm11_sin(1.0, 1.0));
  CHECK(std::fabs(rhs_thm11_sin(2.0, 5.0) - 0.0086421192394826612) <= 1e-15);
  CHECK(std::fabs(rhs_thm11_sin(0.5, 20.0) + 5.1680752837210370e-4) <= 1e-16);
  // Quadrature of the integral itself (scipy):
  CHECK(std::fabs(rhs_thm11_sin(1.0, 0.5, Candidate::derived) - 0.10541845691622619) <= 1e-9);
  CHECK(std::fabs(rhs_thm11_sin(1.0, 3.0, Candidate::derived) - 0.1643461122172099) <= 1e-9);

  CHECK(std::fabs(rhs_thm11_cos(1.0, 1.0) - 0.21574024295617711) <= 1e-14);
  CHECK(std::fabs(rhs_thm11_cos(1.0, 0.5) - 0.2842863386075807) <= 1e-9);
  CHECK(std::fabs(rhs_thm11_cos(1.0, 3.0) + 0.010505951793345016) <= 1e-9);
  CHECK(std::fabs(rhs_thm11_cos(2.0, 5.0) + 0.0065869906787828486) <= 1e-15);
}

TEST_CASE("c -> 0 anchor of the cosine form") {
  for (double b : {0.5, 1.0, 2.0, 4.0}) {
    CHECK(std::fabs(rhs_thm11_cos(b, 0.0) - kPi / 4.0 / std::cosh(kPi * b / 2.0)) <= 1e-15);
  }
  CHECK(std::fabs(rhs_thm11_cos(1.0, 0.0) - 0.31301) < 1e-5);
}

TEST_CASE("lemma partial sums") {
  CHECK(lemma21_sum_sin_oracle(1.0, 1.0, 1) == 0.2);
  CHECK(lemma21_sum_cos_oracle(1.0, 1.0, 1) == 0.4);
  CHECK(std::fabs(lemma21_sum_sin_oracle(1.0, 1.0, 10'000) - 0.17575754089491272) <= 1e-12);
  CHECK(std::fabs(lemma21_sum_sin_oracle(100.0, 1.0, 10'000)) < 1e-6);
  CHECK(std::fabs(lemma21_sum_cos_oracle(1.0, 1.0, 100'000) - rhs_thm11_cos(1.0, 1.0)) <= 1e-5);

  const SeriesResult mid = lemma21_sum_cos_midpoint(1.0, 1.0, 1001);
  CHECK(std::fabs(mid.value - rhs_thm11_cos(1.0, 1.0)) <= mid.tail_bound);
}

TEST_CASE("certified lemma sums match the closed forms") {
  CHECK(std::fabs(lemma21_sin_closed(1.0, 0.25) - 0.2216424384322) <= 1e-12);
  for (double b : {0.3, 1.0, 2.5}) {
    for (double c : {0.1, 1.0, 7.0}) {
      CAPTURE(b);
      CAPTURE(c);
      const SeriesResult s = lemma21_sum_sin(b, c, 1e-12);
      const SeriesResult k = lemma21_sum_cos(b, c, 1e-12);
      CHECK(s.tail_bound <= 1e-12);
      CHECK(std::fabs(s.value - lemma21_sin_closed(b, c)) <= 1e-12 + 1e-14);
      CHECK(std::fabs(k.value - lemma21_cos_closed(b, c)) <= 1e-12 + 1e-14);
    }
  }
}

TEST_CASE("Gradshteyn-Ryzhik closed forms") {
  CHECK(std::fabs(gr_sin_closed(kPi / 2, 1.0, 1.0) - 0.18331067177356811) <= 1e-14);
  CHECK(std::fabs(gr_cos_closed(1.0, 1.0, 1.0) - 0.47027391699136493) <= 1e-14);
  CHECK(std::fabs(gr_cos_closed(2.0, 1.0, 3.0) + 0.042726143750060463) <= 1e-14);
  // c -> 0: int x sin(x)/(x^2+1)^2 dx = (pi/4) e^{-1}
  CHECK(std::fabs(gr_sin_closed(1.0, 1.0, 1e-4) - 0.28893183744773043) <= 1e-8);
  CHECK(std::fabs(gr_sin_closed(50.0, 1.0, 1.0)) < 1e-23);
  CHECK(std::fabs(gr_cos_closed(50.0, 1.0, 1.0)) < 1e-23);
}

TEST_CASE("theorem 1.2 series") {
  struct Row {
    double c, printed, derived, cosine;
  };
  const Row rows[] = {
      {0.5, 0.40054224285600932, 0.10013556071400233, 0.2452586926128928},
      {1.0, 0.33071021760998163, 0.16535510880499081, 0.1779762786735488},
      {3.0, 0.091899377813655256, 0.13784906672048288, -0.036380573638204565},
  };
  for (const auto& r : rows) {
    CAPTURE(r.c);
    const SeriesResult p = rhs_thm12_sin(r.c, 1e-13, Candidate::printed);
    const SeriesResult d = rhs_thm12_sin(r.c, 1e-13, Candidate::derived);
    CHECK(p.tail_bound <= 1e-13);
    CHECK(std::fabs(p.value - r.printed) <= 1e-13);
    CHECK(std::fabs(d.value - r.derived) <= 1e-13);
    CHECK(std::fabs(rhs_thm12_cos(r.c, 1e-12).value - r.cosine) <= 1e-9);
  }
  CHECK(std::fabs(rhs_thm12_cos(0.0, 1e-12).value - 0.2735549519033093) <= 1e-9);
  // c = 2 makes the two prefactors equal.
  CHECK(rhs_thm12_sin(2.0, 1e-12, Candidate::printed).value ==
        doctest::Approx(rhs_thm12_sin(2.0, 1e-12, Candidate::derived).value).epsilon(1e-14));
  CHECK(std::fabs(rhs_thm12_sin(100.0, 1e-12, Candidate::derived).value) < 1e-4);
  CHECK(std::fabs(rhs_thm12_cos(100.0, 1e-12).value) < 1e-4);
}

TEST_CASE("theorem 1.3 bilateral series") {
  CHECK(thm13_b(0) == 1);
  CHECK(thm13_b(-1) == 5);
  CHECK(thm13_b(2) == 13);
  struct Row {
    double c, printed, derived;
  };
  const Row rows[] = {
      {0.5, 0.28365241394522037, 0.10536915919734487},
      {1.0, 0.21511278474855308, 0.17565937264377881},
      {3.0, -0.011066609880158001, 0.16406495098987940},
  };
  for (const auto& r : rows) {
    CAPTURE(r.c);
    CHECK(std::fabs(rhs_thm13(r.c, 1e-13, Candidate::printed).value - r.printed) <= 1e-13);
    CHECK(std::fabs(rhs_thm13(r.c, 1e-13, Candidate::derived).value - r.derived) <= 1e-13);
  }
  CHECK(std::fabs(rhs_thm13(100.0, 1e-12, Candidate::printed).value) < 1e-4);
}

TEST_CASE("theorem 3.1 sides") {
  const SeriesResult lhs = thm31_lhs(1.0, 1e-14);
  CHECK(std::fabs(lhs.value - 0.97463464689217944) <= 1e-14);
  CHECK(std::fabs(thm31_lhs(200.0, 1e-14).value - kPi / 8) <= 1e-14);

  CHECK(std::fabs(thm31_correction(1.0, 1e-13, Candidate::printed).value - 0.0018107059889861911) <= 1e-13);
  CHECK(std::fabs(thm31_correction(1.0, 1e-13, Candidate::derived).value - 0.0056885006328100591) <= 1e-13);
  CHECK(std::fabs(thm31_correction(0.5, 1e-13, Candidate::derived).value + 0.0074429805205705400) <= 1e-13);
  CHECK(std::fabs(thm31_correction(5.0, 1e-10, Candidate::printed).value - 0.065474276914327322) <= 1e-10);

  for (double z : {0.1, 0.25, 0.5, 1.0, 2.0, 5.0}) {
    CAPTURE(z);
    const SeriesResult l = thm31_lhs(z, 1e-12);
    const SeriesResult r = thm31_rhs(z, 1e-11, Candidate::derived);
    CHECK(std::fabs(l.value - r.value) <= l.tail_bound + r.tail_bound);
    CHECK(std::fabs(l.value - r.value) <= 1e-10);
  }
}

TEST_CASE("Glaisher kernel and series") {
  CHECK(std::fabs(glaisher_kernel(1e-8, 1.0) - kPi * kPi / 32) <= 1e-4);
  CHECK(std::fabs(glaisher_kernel(1e-8, 1.0, Candidate::derived) - kPi * kPi / 16) <= 1e-4);
  CHECK(glaisher_kernel(1e-10, 2.0) == doctest::Approx(kPi * kPi / 64));
  CHECK_THROWS_AS(glaisher_kernel(0.0, 1.0), DomainError);
  for (double x = 0.01; x < 1e4; x *= 1.5) {
    CHECK(std::fabs(glaisher_kernel(x, 1.0)) <= glaisher_envelope(x, 1.0, Candidate::printed));
  }
  CHECK(std::fabs(glaisher_series(1.0, 1.0, 1e-14).value - 0.367838304572858) <= 1e-14);
  CHECK(std::fabs(glaisher_series(2.0, 1.0, 1e-14).value - 0.135335278159953) <= 1e-14);
  CHECK(std::fabs(glaisher_series(4.0, 1.0, 1e-14).value - 0.018315638888734) <= 1e-14);
  CHECK(glaisher_series(2.0, 0.5, 1e-14).value == doctest::Approx(glaisher_series(1.0, 1.0, 1e-14).value));
}
