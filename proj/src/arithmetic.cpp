#include "etaverify/arithmetic.hpp"

#include <cmath>

#include "etaverify/errors.hpp"

namespace etaverify {

ChiValue chi(std::int64_t n) {
  if (n < 0) throw DomainError("chi: argument must be nonnegative");
  switch (n % 4) {
    case 1:
      return {1};
    case 3:
      return {-1};
    default:
      return {0};
  }
}

SeriesResult dirichlet_beta(double s, double tol, std::int64_t budget) {
  if (!(s > 0.0)) throw DomainError("dirichlet_beta: s must be positive");
  if (!(tol > 0.0)) throw DomainError("dirichlet_beta: tol must be positive");
  // (2n+1)^{-s} is completely monotone in n for every s > 0.
  return alternating_sum([s](std::int64_t n) { return std::pow(2.0 * n + 1.0, -s); }, tol, 0,
                         budget);
}

}  // namespace etaverify
