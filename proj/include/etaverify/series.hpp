#pragma once

#include <cstdint>
#include <functional>
#include <span>

namespace etaverify {

inline constexpr std::int64_t kDefaultTermBudget = 1'000'000;

/// Value of a truncated infinite sum together with a certified bound on the
/// absolute truncation error.
struct SeriesResult {
  double value = 0.0;
  double tail_bound = 0.0;
  std::int64_t terms_used = 0;
  bool converged = false;
};

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Compensated sum of a range in the given order.
double compensated_sum(std::span<const double> values) noexcept;

/// Sum of (-1)^k a(k) over k >= 0, where a(k) > 0 and the sequence
/// a(first_monotone), a(first_monotone + 1), ... is completely monotone.
///
/// The first N terms are summed directly; the tail is evaluated with the
/// Euler transform  sum_j Δ^j a(N) / 2^(j+1).  For a completely monotone
/// sequence the Euler remainder after J levels lies in [0, Δ^J a(N) / 2^J],
/// which is the reported tail bound (plus a rounding allowance). N doubles
/// until the bound reaches tol.
///
/// Throws NonConvergence when N would exceed `budget`.
SeriesResult alternating_sum(const std::function<double(std::int64_t)>& a, double tol,
                             std::int64_t first_monotone = 0,
                             std::int64_t budget = kDefaultTermBudget);

}  // namespace etaverify
