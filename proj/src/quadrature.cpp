#include "etaverify/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include "etaverify/errors.hpp"
#include "etaverify/eta_series.hpp"
#include "etaverify/series.hpp"

namespace etaverify {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;

// Kronrod abscissae (descending), Kronrod weights, and the Gauss weights for
// the 7-point rule on the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr int kPanelEvaluations = 15;

struct Panel {
  double lo;
  double hi;
  PanelEstimate est;
  double effective_err() const { return std::max(est.err, 50.0 * kEps * est.abs_value); }
};

struct WorseFirst {
  bool operator()(const Panel& l, const Panel& r) const {
    const double le = l.effective_err();
    const double re = r.effective_err();
    if (le != re) return le < re;
    return l.lo > r.lo;
  }
};

}  // namespace

PanelEstimate gauss_kronrod15(const std::function<double(double)>& f, double lo, double hi) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(centre);
  double kronrod = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  double abs_k = kWgk[7] * std::fabs(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(centre - dx);
    const double f2 = f(centre + dx);
    kronrod += kWgk[j] * (f1 + f2);
    abs_k += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  PanelEstimate e;
  e.value = kronrod * half;
  e.err = std::fabs((kronrod - gauss) * half);
  e.abs_value = abs_k * std::fabs(half);
  return e;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                    double tol, std::int64_t max_evaluations) {
  if (!(tol > 0.0)) throw DomainError("integrate_adaptive: tol must be positive");
  if (max_evaluations < kPanelEvaluations) {
    throw NonConvergence("integrate_adaptive: evaluation budget below one panel");
  }
  std::priority_queue<Panel, std::vector<Panel>, WorseFirst> queue;
  queue.push(Panel{lo, hi, gauss_kronrod15(f, lo, hi)});
  std::int64_t evaluations = kPanelEvaluations;
  double total_err = queue.top().effective_err();

  while (true) {
    if (total_err <= tol) {
      // The running total may have drifted; confirm before stopping.
      double exact = 0.0;
      auto copy = queue;
      while (!copy.empty()) {
        exact += copy.top().effective_err();
        copy.pop();
      }
      total_err = exact;
      if (total_err <= tol) break;
    }
    if (evaluations + 2 * kPanelEvaluations > max_evaluations) {
      throw NonConvergence("integrate_adaptive: budget of " + std::to_string(max_evaluations) +
                           " evaluations exhausted on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "] with error " + std::to_string(total_err));
    }
    const Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    Panel left{worst.lo, mid, gauss_kronrod15(f, worst.lo, mid)};
    Panel right{mid, worst.hi, gauss_kronrod15(f, mid, worst.hi)};
    evaluations += 2 * kPanelEvaluations;
    total_err += left.effective_err() + right.effective_err() - worst.effective_err();
    queue.push(left);
    queue.push(right);
  }

  std::vector<Panel> panels;
  panels.reserve(queue.size());
  while (!queue.empty()) {
    panels.push_back(queue.top());
    queue.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel& l, const Panel& r) { return l.lo < r.lo; });
  CompensatedSum value;
  double err = 0.0;
  for (const Panel& p : panels) {
    value.add(p.est.value);
    err += p.effective_err();
  }
  QuadratureResult r;
  r.value = value.value();
  r.abs_err_est = err;
  r.evaluations = evaluations;
  r.converged = true;
  return r;
}

namespace {

std::vector<QuadratureResult> segment_results(const std::function<double(double)>& f,
                                              const std::vector<double>& edges,
                                              double tol_each, std::int64_t budget_each,
                                              Execution execution) {
  const std::size_t count = edges.size() - 1;
  std::vector<QuadratureResult> results(count);
  for_each_index(count, execution, [&](std::size_t i) {
    results[i] = integrate_adaptive(f, edges[i], edges[i + 1], tol_each, budget_each);
  });
  return results;
}

QuadratureResult sum_results(const std::vector<QuadratureResult>& parts) {
  CompensatedSum value;
  QuadratureResult r;
  for (const auto& p : parts) {
    value.add(p.value);
    r.abs_err_est += p.abs_err_est;
    r.evaluations += p.evaluations;
  }
  r.value = value.value();
  r.converged = true;
  return r;
}

// Edges lo = e_0 < e_1 < ... with interior points at multiples of `period`
// (subdivided so no piece exceeds max_piece), ending at the first such point >= hi.
std::vector<double> periodic_edges(double lo, double hi, double period, double max_piece) {
  std::vector<double> edges{lo};
  const int pieces = std::max(1, static_cast<int>(std::ceil(period / max_piece)));
  const double step = period / pieces;
  auto k = static_cast<std::int64_t>(std::floor(lo / step)) + 1;
  while (edges.back() < hi) {
    const double next = static_cast<double>(k) * step;
    if (next > edges.back() * (1.0 + 1e-14) + 1e-300) edges.push_back(next);
    ++k;
  }
  return edges;
}

double small_x_mass_uncached(Kernel kernel, double x_lo) {
  constexpr int kSamples = 4;
  double previous = -std::numeric_limits<double>::infinity();
  double log_at_lo = 0.0;
  for (int i = kSamples - 1; i >= 0; --i) {
    const double x = x_lo * std::pow(100.0, -static_cast<double>(i) / (kSamples - 1));
    const SeriesResult l4 = log_eta_product(4.0 * x / kPi, 1e-6);
    double log_k = 0.0;
    double log_err = 0.0;
    switch (kernel) {
      case Kernel::eta3:
        log_k = 3.0 * l4.value;
        log_err = 3.0 * l4.tail_bound;
        break;
      case Kernel::eta6:
        log_k = 6.0 * l4.value;
        log_err = 6.0 * l4.tail_bound;
        break;
      case Kernel::eta3_eta12: {
        const SeriesResult l12 = log_eta_product(12.0 * x / kPi, 1e-6);
        log_k = 3.0 * l4.value + l12.value;
        log_err = 3.0 * l4.tail_bound + l12.tail_bound;
        break;
      }
      default:
        throw DomainError("eta_small_x_mass: not an eta kernel");
    }
    if (!(log_k > previous)) {
      throw NonConvergence("eta_small_x_mass: kernel not increasing below x_lo");
    }
    previous = log_k;
    log_at_lo = log_k + log_err;
  }
  // Increasing on (0, x_lo], so the mass is at most x_lo times the value at x_lo.
  return x_lo * std::exp(log_at_lo);
}

// Bound C(X) with |kernel(x)| <= C e^{-k0 x} for x >= X >= 1.
double eta_envelope_constant(Kernel kernel, double x_min) {
  double c3 = 1.0;
  for (int n = 3; n < 64; n += 2) c3 += n * std::exp(-(n * n - 1.0) * x_min);
  double c12 = 1.0;
  for (int k = 1; k < 16; ++k) {
    const double lo = 6.0 * k - 1.0;
    const double hi = 6.0 * k + 1.0;
    c12 += std::exp(-(lo * lo - 1.0) * x_min) + std::exp(-(hi * hi - 1.0) * x_min);
  }
  switch (kernel) {
    case Kernel::eta3:
      return c3;
    case Kernel::eta6:
      return c3 * c3;
    default:
      return c3 * c12;
  }
}

constexpr double kEtaLowerCut = 1e-2;

}  // namespace

double eta_small_x_mass(Kernel kernel, double x_lo) {
  if (x_lo == kEtaLowerCut) {
    static const std::array<double, 3> cached = {
        small_x_mass_uncached(Kernel::eta3, kEtaLowerCut),
        small_x_mass_uncached(Kernel::eta6, kEtaLowerCut),
        small_x_mass_uncached(Kernel::eta3_eta12, kEtaLowerCut)};
    switch (kernel) {
      case Kernel::eta3:
        return cached[0];
      case Kernel::eta6:
        return cached[1];
      case Kernel::eta3_eta12:
        return cached[2];
      default:
        break;
    }
  }
  return small_x_mass_uncached(kernel, x_lo);
}

QuadratureResult integrate_segments(const std::function<double(double)>& f,
                                    const std::vector<double>& edges, double tol,
                                    const QuadratureOptions& options) {
  if (edges.size() < 2) throw DomainError("integrate_segments: need at least two edges");
  const auto count = static_cast<std::int64_t>(edges.size() - 1);
  const std::int64_t budget_each = options.max_evaluations / count;
  if (budget_each < kPanelEvaluations) {
    throw NonConvergence("integrate_segments: evaluation budget too small for " +
                         std::to_string(count) + " segments");
  }
  return sum_results(
      segment_results(f, edges, tol / static_cast<double>(count), budget_each, options.execution));
}

QuadratureResult integrate_damped_oscillatory(const IntegrandSpec& spec, double tol,
                                              const QuadratureOptions& options) {
  if (spec.kernel != Kernel::eta3 && spec.kernel != Kernel::eta6 &&
      spec.kernel != Kernel::eta3_eta12) {
    throw DomainError("integrate_damped_oscillatory: kernel must be an eta power");
  }
  if (!(spec.b >= 0.0) || !(spec.c >= 0.0) || !(tol > 0.0)) {
    throw DomainError("integrate_damped_oscillatory: need b >= 0, c >= 0, tol > 0");
  }

  const double b2 = spec.b * spec.b;
  const double c = spec.c;
  const Kernel kernel = spec.kernel;
  const Transform transform = spec.transform;
  const auto integrand = [=](double x) {
    double k = eta3_kernel(x);
    if (kernel == Kernel::eta6) {
      k *= k;
    } else if (kernel == Kernel::eta3_eta12) {
      k *= eta12_kernel(x);
    }
    double w = std::exp(-b2 * x);
    if (transform == Transform::sin) {
      w *= std::sin(c * x);
    } else if (transform == Transform::cos) {
      w *= std::cos(c * x);
    }
    return k * w;
  };

  const double lower_mass = eta_small_x_mass(kernel, kEtaLowerCut);
  if (lower_mass > 0.25 * tol) {
    throw NonConvergence("integrate_damped_oscillatory: small-x mass exceeds tolerance");
  }

  // Large-x cut: |integrand| <= C e^{-lambda x} for x >= 1.
  const double decay = (kernel == Kernel::eta3 ? 1.0 : 2.0) + b2;
  const double envelope = eta_envelope_constant(kernel, 1.0);
  const double x_hi = std::max(1.0, std::log(envelope / (decay * 0.25 * tol)) / decay);

  const double period = c > 0.0 ? kPi / c : 1.0;
  const std::vector<double> edges = periodic_edges(kEtaLowerCut, x_hi, period, 1.0);
  const double tail = envelope * std::exp(-decay * edges.back()) / decay;

  QuadratureResult r = integrate_segments(integrand, edges, 0.5 * tol, options);
  r.abs_err_est += lower_mass + tail;
  r.converged = r.abs_err_est <= tol;
  return r;
}

QuadratureResult integrate_rational_oscillatory(const IntegrandSpec& spec, double tol,
                                                const QuadratureOptions& options) {
  if (spec.kernel != Kernel::rational_sin && spec.kernel != Kernel::rational_cos) {
    throw DomainError("integrate_rational_oscillatory: kernel must be rational");
  }
  if (!(spec.a > 0.0) || !(spec.b > 0.0) || !(spec.c > 0.0) || !(tol > 0.0)) {
    throw DomainError("integrate_rational_oscillatory: a, b, c, tol must be positive");
  }
  const double a = spec.a;
  const double b2 = spec.b * spec.b;
  const double c2 = spec.c * spec.c;
  const bool cubic = spec.kernel == Kernel::rational_cos;
  const auto integrand = [=](double x) {
    const double p = x * x + b2;
    const double g = cubic ? x * p / (p * p + c2) : x / (p * p + c2);
    return g * std::sin(a * x);
  };

  const double period = kPi / a;
  const double hump = 2.0 * (spec.b + std::sqrt(spec.c)) + 2.0;
  const auto head_segments = std::max<std::int64_t>(2, static_cast<std::int64_t>(std::ceil(hump / period)));
  std::vector<double> head_edges;
  for (std::int64_t k = 0; k <= head_segments; ++k) head_edges.push_back(k * period);

  constexpr int kChunk = 32;
  constexpr int kWindow = 20;
  constexpr int kMaxTailSegments = 2048;
  const double tol_each = tol / 512.0;
  // Per-segment budget: the head plus one chunk share max_evaluations.
  const std::int64_t budget_each = std::max<std::int64_t>(
      kPanelEvaluations, options.max_evaluations / (head_segments + kChunk));

  std::vector<QuadratureResult> head =
      segment_results(integrand, head_edges, tol_each, budget_each, options.execution);
  const QuadratureResult head_sum = sum_results(head);

  std::vector<double> partial;  // partial sums of the tail segments
  CompensatedSum running;
  double tail_err = 0.0;
  std::int64_t evaluations = head_sum.evaluations;

  // Iterated averaging (Euler transform) of the last `window` partial sums ending at `end`.
  const auto accelerate = [&](std::size_t end) {
    std::vector<double> row(partial.begin() + static_cast<std::ptrdiff_t>(end - kWindow),
                            partial.begin() + static_cast<std::ptrdiff_t>(end));
    for (int level = kWindow - 1; level > 0; --level) {
      for (int i = 0; i < level; ++i) row[i] = 0.5 * (row[i] + row[i + 1]);
    }
    return row[0];
  };

  std::int64_t next = head_segments;
  while (true) {
    if (static_cast<int>(partial.size()) + kChunk > kMaxTailSegments) {
      throw NonConvergence("integrate_rational_oscillatory: acceleration did not settle");
    }
    std::vector<double> edges;
    for (int k = 0; k <= kChunk; ++k) edges.push_back(static_cast<double>(next + k) * period);
    next += kChunk;
    for (const auto& seg :
         segment_results(integrand, edges, tol_each, budget_each, options.execution)) {
      running.add(seg.value);
      partial.push_back(running.value());
      tail_err += seg.abs_err_est;
      evaluations += seg.evaluations;
    }
    if (partial.size() < static_cast<std::size_t>(kWindow + 1)) continue;
    const double latest = accelerate(partial.size());
    const double before = accelerate(partial.size() - 1);
    const double settle = std::fabs(latest - before);
    if (settle < 0.25 * tol) {
      QuadratureResult r;
      r.value = head_sum.value + latest;
      r.abs_err_est = head_sum.abs_err_est + tail_err + settle;
      r.evaluations = evaluations;
      r.converged = r.abs_err_est <= tol;
      return r;
    }
  }
}

QuadratureResult integrate_glaisher(double z, double alpha, double tol, Candidate candidate,
                                    const QuadratureOptions& options) {
  if (!(z > 0.0) || !(alpha > 0.0) || !(tol > 0.0)) {
    throw DomainError("integrate_glaisher: z, alpha, tol must be positive");
  }
  const auto integrand = [=](double x) {
    return std::cos(z * x) * glaisher_kernel(x, alpha, candidate);
  };

  // For x >= X: |kernel| <= k e^{-kappa sqrt x} / (X (1 - e^{-2 kappa sqrt X})), and
  // int_X^inf e^{-kappa sqrt x} dx = (2/kappa^2)(1 + kappa sqrt X) e^{-kappa sqrt X}.
  const double kappa = 0.5 * kPi / std::sqrt(2.0 * alpha);
  const double k = candidate == Candidate::printed ? 0.5 : 1.0;
  const auto tail_bound = [=](double x_hi) {
    const double root = kappa * std::sqrt(x_hi);
    return k * 2.0 / (kappa * kappa) * (1.0 + root) * std::exp(-root) /
           (x_hi * -std::expm1(-2.0 * root));
  };
  double x_hi = 1.0;
  while (tail_bound(x_hi) > 0.25 * tol) x_hi *= 1.1;

  const std::vector<double> edges = periodic_edges(0.0, x_hi, kPi / z, 2.0);
  QuadratureResult r = integrate_segments(integrand, edges, 0.5 * tol, options);
  r.abs_err_est += tail_bound(edges.back());
  r.converged = r.abs_err_est <= tol;
  return r;
}

}  // namespace etaverify
