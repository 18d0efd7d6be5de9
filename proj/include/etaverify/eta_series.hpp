#pragma once

#include <cstdint>

#include "etaverify/series.hpp"

namespace etaverify {

/// Dedekind eta on the imaginary axis, eta(iy), from the defining product
///   e^{-pi y/12} prod_{n>=1} (1 - e^{-2 pi n y}).
/// The product is truncated once the omitted factors change the value by a
/// relative amount <= tol; tail_bound is the corresponding absolute bound.
SeriesResult eta_product(double y, double tol, std::int64_t budget = kDefaultTermBudget);

/// log eta(iy) from the product form. Used where eta(iy) itself underflows.
/// tail_bound bounds the absolute error of the logarithm.
SeriesResult log_eta_product(double y, double tol, std::int64_t budget = kDefaultTermBudget);

/// eta^3(i 4x/pi) via the Jacobi theta expansion  sum_{n odd} chi(n) n e^{-n^2 x}.
/// Practical floor: x >~ 1e-4 at tol = 1e-12 before the budget is exhausted.
SeriesResult eta3_scaled(double x, double tol, std::int64_t budget = kDefaultTermBudget);

/// eta(i 12x/pi) via Euler's expansion  sum_{n in Z} (-1)^n e^{-(6n+1)^2 x}.
SeriesResult eta_scaled12(double x, double tol, std::int64_t budget = kDefaultTermBudget);

/// eta^6(i 4x/pi) as the square of eta3_scaled.
SeriesResult eta6_scaled(double x, double tol, std::int64_t budget = kDefaultTermBudget);

/// Integrand-grade evaluations of the theta expansions: summed until the
/// omitted tail is below rounding of the accumulated magnitude. No certificate;
/// quadrature accounts for its own error.
double eta3_kernel(double x);
double eta12_kernel(double x);

}  // namespace etaverify
