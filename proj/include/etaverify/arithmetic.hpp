#pragma once

#include <cstdint>

#include "etaverify/series.hpp"

namespace etaverify {

/// Value of the non-principal character mod 4.
struct ChiValue {
  int value = 0;  // one of -1, 0, +1
  friend bool operator==(ChiValue, ChiValue) = default;
};

/// chi(n) = 0 for even n, +1 for n = 1 (mod 4), -1 for n = 3 (mod 4).
/// Defined for n >= 0 only; negative n throws DomainError.
ChiValue chi(std::int64_t n);

/// chi as a plain integer, for use inside sums.
inline int chi_int(std::int64_t n) { return chi(n).value; }

/// Dirichlet beta  sum_{n>=0} (-1)^n / (2n+1)^s  for s > 0, certified to tol.
SeriesResult dirichlet_beta(double s, double tol, std::int64_t budget = kDefaultTermBudget);

}  // namespace etaverify
