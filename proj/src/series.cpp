#include "etaverify/series.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "etaverify/errors.hpp"

namespace etaverify {

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

double compensated_sum(std::span<const double> values) noexcept {
  CompensatedSum s;
  for (double v : values) s.add(v);
  return s.value();
}

namespace {

constexpr int kEulerLevels = 48;
constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

SeriesResult alternating_sum(const std::function<double(std::int64_t)>& a, double tol,
                             std::int64_t first_monotone, std::int64_t budget) {
  if (!(tol > 0.0)) throw DomainError("alternating_sum: tol must be positive");

  std::int64_t n_direct = std::max<std::int64_t>(first_monotone, 16);
  CompensatedSum head;
  double head_abs = 0.0;
  std::int64_t summed = 0;
  std::vector<double> diff(kEulerLevels + 1);

  while (true) {
    if (n_direct + kEulerLevels + 1 > budget) {
      throw NonConvergence("alternating_sum: term budget of " + std::to_string(budget) +
                           " exhausted before tail bound reached " + std::to_string(tol));
    }
    for (; summed < n_direct; ++summed) {
      const double term = a(summed);
      head.add((summed % 2 == 0) ? term : -term);
      head_abs += std::fabs(term);
    }
    for (int i = 0; i <= kEulerLevels; ++i) diff[i] = a(n_direct + i);
    const double lead = diff[0];

    // diff[0] holds Δ^j a(N) at level j; Δ a(n) = a(n) - a(n+1).
    CompensatedSum tail;
    double remainder = std::numeric_limits<double>::infinity();
    int level = 0;
    for (; level < kEulerLevels; ++level) {
      const double dj = diff[0];
      if (dj < 0.0) break;  // complete monotonicity lost to rounding
      remainder = std::ldexp(dj, -level);
      if (remainder <= 0.5 * tol) break;
      tail.add(std::ldexp(dj, -(level + 1)));
      for (int i = 0; i < kEulerLevels - level; ++i) diff[i] -= diff[i + 1];
    }

    const double rounding =
        (level + 2) * kEps * lead + 4.0 * kEps * head_abs + 2.0 * kEps * std::fabs(head.value());
    const double bound = remainder + rounding;
    if (bound <= tol) {
      const double signed_tail = (n_direct % 2 == 0) ? tail.value() : -tail.value();
      SeriesResult r;
      r.value = head.value() + signed_tail;
      r.tail_bound = bound;
      r.terms_used = n_direct + level + 1;
      r.converged = true;
      return r;
    }
    n_direct *= 2;
  }
}

}  // namespace etaverify
