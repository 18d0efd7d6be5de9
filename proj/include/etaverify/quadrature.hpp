#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "etaverify/closed_forms.hpp"
#include "etaverify/execution.hpp"

namespace etaverify {

struct QuadratureResult {
  double value = 0.0;
  double abs_err_est = 0.0;
  std::int64_t evaluations = 0;
  bool converged = false;
};

enum class Kernel { eta3, eta6, eta3_eta12, rational_sin, rational_cos, glaisher };
enum class Transform { sin, cos, none };

/// What to integrate over (0, inf). Parameters that a kernel does not use are
/// ignored: a for the rational kernels, b and c for the damped and rational
/// kernels, z and alpha for the Glaisher kernel.
struct IntegrandSpec {
  Kernel kernel = Kernel::eta3;
  Transform transform = Transform::sin;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double alpha = 1.0;
  double z = 0.0;
  Candidate candidate = Candidate::printed;  // Glaisher normalisation only
};

struct QuadratureOptions {
  std::int64_t max_evaluations = 100'000;
  Execution execution = Execution::parallel;
};

/// Gauss-Kronrod 7/15 estimate on one panel; err is |K15 - G7|.
struct PanelEstimate {
  double value = 0.0;
  double err = 0.0;
  double abs_value = 0.0;  // K15 applied to |f|, for the rounding floor
};
PanelEstimate gauss_kronrod15(const std::function<double(double)>& f, double lo, double hi);

/// Globally adaptive G7K15 on [lo, hi]: the panel with the largest error is
/// bisected until the summed error is <= tol. Throws NonConvergence when the
/// evaluation budget runs out.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                    double tol, std::int64_t max_evaluations = 100'000);

/// Integrates each of the consecutive segments [edges[i], edges[i+1]]
/// adaptively to tol / segments, possibly in parallel, and sums them in
/// index order with compensation. The result does not depend on `execution`.
QuadratureResult integrate_segments(const std::function<double(double)>& f,
                                    const std::vector<double>& edges, double tol,
                                    const QuadratureOptions& options);

/// eta-power kernel times e^{-b^2 x} times sin/cos(cx). The small-x end is cut
/// at 1e-2 with the discarded mass bounded from the product form; the large-x
/// end is cut where the exponential envelope falls below the tolerance.
/// Segments follow half-periods pi/c of the oscillation.
QuadratureResult integrate_damped_oscillatory(const IntegrandSpec& spec, double tol,
                                              const QuadratureOptions& options = {});

/// x sin(ax) / ((x^2+b^2)^2+c^2)  (rational_sin), or
/// x (x^2+b^2) sin(ax) / ((x^2+b^2)^2+c^2)  (rational_cos; named for its
/// cosine closed form). Half-period segments past the hump of the rational
/// factor form an alternating series that is Euler-accelerated. Each segment
/// may use max_evaluations / (head segments + 32) evaluations.
QuadratureResult integrate_rational_oscillatory(const IntegrandSpec& spec, double tol,
                                                const QuadratureOptions& options = {});

/// int_0^inf cos(zx) glaisher_kernel(x, alpha, candidate) dx, truncated where
/// the kernel envelope's integral drops below the tolerance.
QuadratureResult integrate_glaisher(double z, double alpha, double tol,
                                    Candidate candidate = Candidate::printed,
                                    const QuadratureOptions& options = {});

/// Bound on int_0^{x_lo} |kernel| for the eta kernels, from product-form
/// samples on a geometric grid in [x_lo/100, x_lo]. Throws NonConvergence if
/// the samples are not increasing (the kernel is not in its rising regime).
double eta_small_x_mass(Kernel kernel, double x_lo);

}  // namespace etaverify
