// Acceptance criteria. Each prints one "criterion N PASS|FAIL" line, followed
// by indented detail lines. Exit status is 0 only if every selected criterion
// passed.
//
//   acceptance [--criterion N] [--cli path/to/etaverify]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "etaverify/arithmetic.hpp"
#include "etaverify/closed_forms.hpp"
#include "etaverify/eta_series.hpp"
#include "etaverify/quadrature.hpp"
#include "etaverify/verify.hpp"

using namespace etaverify;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> details;
};

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double damped(Kernel k, Transform t, double b, double c, double tol) {
  IntegrandSpec s;
  s.kernel = k;
  s.transform = t;
  s.b = b;
  s.c = c;
  return integrate_damped_oscillatory(s, tol).value;
}

double rational(Kernel k, double a, double b, double c, double tol) {
  IntegrandSpec s;
  s.kernel = k;
  s.transform = Transform::none;
  s.a = a;
  s.b = b;
  s.c = c;
  return integrate_rational_oscillatory(s, tol).value;
}

double max3(double a, double b, double c) { return std::max(a, std::max(b, c)); }

// Quadrature, closed form and c * (lemma sum to n <= 1e4) pairwise.
Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  int sin_bad = 0;
  int cos_bad = 0;
  double sin_worst = 0.0;
  double cos_worst = 0.0;
  double quad_vs_sum = 0.0;
  double quad_vs_derived = 0.0;
  for (double b : {0.5, 1.0, 2.0, 4.0}) {
    for (double c : {0.25, 1.0, 5.0, 20.0}) {
      const double q = damped(Kernel::eta3, Transform::sin, b, c, 1e-10);
      const double r = rhs_thm11_sin(b, c, Candidate::printed);
      const double s = c * lemma21_sum_sin_oracle(b, c, 10'000);
      const double gap = max3(std::fabs(q - r), std::fabs(q - s), std::fabs(r - s));
      sin_worst = std::max(sin_worst, gap);
      quad_vs_sum = std::max(quad_vs_sum, std::fabs(q - s));
      quad_vs_derived = std::max(quad_vs_derived, std::fabs(q - rhs_thm11_sin(b, c, Candidate::derived)));
      if (gap > 2e-8) {
        ++sin_bad;
        o.details.push_back(fmt("sine  b=%-4g c=%-5g quad=%.12f closed=%.12f c*sum=%.12f", b, c, q, r, s));
      }

      const double qc = damped(Kernel::eta3, Transform::cos, b, c, 1e-10);
      const double rc = rhs_thm11_cos(b, c);
      // Paired sum to n <= 1e4 plus half the first omitted term.
      const double sc = lemma21_sum_cos_midpoint(b, c, 10'000).value;
      const double gap_c = max3(std::fabs(qc - rc), std::fabs(qc - sc), std::fabs(rc - sc));
      cos_worst = std::max(cos_worst, gap_c);
      if (gap_c > 1e-6) ++cos_bad;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.pass = sin_bad == 0 && cos_bad == 0 && secs < 30.0;
  o.summary = fmt("sine triple: %d/16 points over 2e-8 (worst %.2e); cosine triple: %d/16 over 1e-6 (worst %.2e); %.2fs",
                  sin_bad, sin_worst, cos_bad, cos_worst, secs);
  o.details.push_back(fmt("quadrature vs c*sum, all 16 points: max %.2e", quad_vs_sum));
  o.details.push_back(fmt("quadrature vs closed form with prefactor pi/4: max %.2e", quad_vs_derived));
  return o;
}

Outcome criterion2() {
  Outcome o;
  double worst = 0.0;
  for (double b : {0.5, 1.0, 2.0}) {
    worst = std::max(worst, std::fabs(rhs_thm11_cos(b, 0.0) - kPi / 4 / std::cosh(kPi * b / 2)));
  }
  o.pass = worst <= 1e-12;
  o.summary = fmt("max |rhs(b,0) - (pi/4)sech(pi b/2)| = %.2e (limit 1e-12)", worst);
  return o;
}

Outcome criterion3() {
  Outcome o;
  double worst = 0.0;
  int bad = 0;
  for (double a : {0.5, 1.0, 2.0}) {
    for (double b : {1.0, 2.0}) {
      for (double c : {0.5, 1.0, 3.0}) {
        const double es = std::fabs(rational(Kernel::rational_sin, a, b, c, 1e-8) - gr_sin_closed(a, b, c));
        const double ec = std::fabs(rational(Kernel::rational_cos, a, b, c, 1e-8) - gr_cos_closed(a, b, c));
        worst = max3(worst, es, ec);
        if (es > 1e-6 || ec > 1e-6) ++bad;
      }
    }
  }
  o.pass = bad == 0;
  o.summary = fmt("%d/18 points over 1e-6, max residual %.2e", bad, worst);
  return o;
}

Outcome criterion4() {
  Outcome o;
  const double beta3 = dirichlet_beta(3.0, 1e-14).value;
  double side_worst = 0.0;
  double derived_worst = 0.0;
  for (double z : {0.25, 0.5, 1.0, 2.0, 5.0}) {
    const double l = thm31_lhs(z, 1e-12).value;
    const double r = thm31_rhs(z, 1e-11, Candidate::printed).value;
    side_worst = std::max(side_worst, std::fabs(l - r));
    derived_worst = std::max(derived_worst, std::fabs(l - thm31_rhs(z, 1e-11, Candidate::derived).value));
    o.details.push_back(fmt("z=%-4g lhs=%.15f rhs=%.15f diff=%.2e", z, l, r, l - r));
  }
  double beta_worst = 0.0;
  double beta_derived = 0.0;
  for (double z : {0.5, 1.0, 2.0}) {
    const double e = estimate_beta3(z, 1e-10, Candidate::printed);
    beta_worst = std::max(beta_worst, std::fabs(e - beta3));
    beta_derived = std::max(beta_derived, std::fabs(estimate_beta3(z, 1e-10, Candidate::derived) - beta3));
    o.details.push_back(fmt("estimate_beta3(%g) = %.12f (beta(3) = %.12f)", z, e, beta3));
  }
  o.pass = side_worst <= 1e-8 && beta_worst <= 2e-6;
  o.summary = fmt("max |lhs - rhs| = %.2e (limit 1e-8); max |estimate - beta(3)| = %.2e (limit 2e-6)",
                  side_worst, beta_worst);
  o.details.push_back(fmt("with correction coefficient 1/2: max |lhs - rhs| = %.2e, beta(3) off by %.2e",
                          derived_worst, beta_derived));
  return o;
}

Outcome criterion5() {
  Outcome o;
  int bad = 0;
  const auto errata = [&](const char* name, double c, double q, double q_err, const SeriesResult& p,
                          const SeriesResult& d) {
    const double rp = std::fabs(q - p.value);
    const double rd = std::fabs(q - d.value);
    const bool one = (rp <= 1e-6) != (rd <= 1e-6);
    const bool tight = q_err + std::max(p.tail_bound, d.tail_bound) <= 1e-8;
    if (!one || !tight) ++bad;
    o.details.push_back(fmt("%-10s c=%-3g printed %.2e derived %.2e budget %.1e %s", name, c, rp, rd,
                            q_err + std::max(p.tail_bound, d.tail_bound), one && tight ? "ok" : "BAD"));
  };
  for (double c : {0.5, 1.0, 3.0}) {
    IntegrandSpec s;
    s.kernel = Kernel::eta6;
    s.transform = Transform::sin;
    s.c = c;
    const QuadratureResult q = integrate_damped_oscillatory(s, 5e-9);
    errata("thm1.2-sin", c, q.value, q.abs_err_est, rhs_thm12_sin(c, 1e-10, Candidate::printed),
           rhs_thm12_sin(c, 1e-10, Candidate::derived));
  }
  for (double c : {0.5, 1.0, 3.0}) {
    IntegrandSpec s;
    s.kernel = Kernel::eta3_eta12;
    s.transform = Transform::sin;
    s.c = c;
    const QuadratureResult q = integrate_damped_oscillatory(s, 5e-9);
    errata("thm1.3", c, q.value, q.abs_err_est, rhs_thm13(c, 1e-10, Candidate::printed),
           rhs_thm13(c, 1e-10, Candidate::derived));
  }
  double cos_worst = 0.0;
  for (double c : {0.5, 1.0, 2.0, 3.0}) {
    const double q = damped(Kernel::eta6, Transform::cos, 0.0, c, 1e-9);
    cos_worst = std::max(cos_worst, std::fabs(q - rhs_thm12_cos(c, 1e-10).value));
  }
  if (cos_worst > 1e-7) ++bad;
  o.pass = bad == 0;
  o.summary = fmt("single-candidate separation at 6 points, cosine case max residual %.2e (limit 1e-7)", cos_worst);
  return o;
}

Outcome criterion6() {
  Outcome o;
  double w3 = 0.0, w12 = 0.0, w6 = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double x = 0.05 * std::pow(100.0, i / 49.0);
    const double p4 = eta_product(4.0 * x / kPi, 1e-14).value;
    const double p12 = eta_product(12.0 * x / kPi, 1e-14).value;
    w3 = std::max(w3, std::fabs(eta3_scaled(x, 1e-13).value - p4 * p4 * p4));
    w12 = std::max(w12, std::fabs(eta_scaled12(x, 1e-13).value - p12));
    w6 = std::max(w6, std::fabs(eta6_scaled(x, 1e-13).value - std::pow(p4, 6)));
  }
  o.pass = max3(w3, w12, w6) <= 1e-11;
  o.summary = fmt("max differences eta^3 %.1e, eta(12x/pi) %.1e, eta^6 %.1e (limit 1e-11)", w3, w12, w6);
  return o;
}

Outcome criterion7() {
  Outcome o;
  double worst = 0.0;
  double derived = 0.0;
  for (double z : {1.0, 2.0, 4.0}) {
    const double s = glaisher_series(z, 1.0, 1e-12).value;
    const double q = integrate_glaisher(z, 1.0, 1e-8, Candidate::printed).value;
    worst = std::max(worst, std::fabs(q - s));
    derived = std::max(derived, std::fabs(integrate_glaisher(z, 1.0, 1e-8, Candidate::derived).value - s));
    o.details.push_back(fmt("z=%g series=%.12f quadrature=%.12f ratio=%.9f", z, s, q, q / s));
  }
  o.pass = worst <= 1e-6;
  o.summary = fmt("max |quadrature - series| = %.2e (limit 1e-6)", worst);
  o.details.push_back(fmt("kernel without the leading 1/2: max residual %.2e", derived));
  return o;
}

std::string strip_timestamp(const std::string& path) {
  std::ifstream in(path);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.find("\"generated_at\"") == std::string::npos) out += line + "\n";
  }
  return out;
}

Outcome criterion8(const std::string& cli) {
  Outcome o;
  if (cli.empty()) {
    o.pass = false;
    o.summary = "no --cli path given";
    return o;
  }
  int status[2];
  for (int i = 0; i < 2; ++i) {
    const std::string cmd = "'" + cli + "' verify --json acceptance_run" + std::to_string(i) + ".json > /dev/null";
    status[i] = std::system(cmd.c_str());
  }
  const std::string a = strip_timestamp("acceptance_run0.json");
  const std::string b = strip_timestamp("acceptance_run1.json");
  o.pass = status[0] == 0 && status[1] == 0 && !a.empty() && a == b;
  o.summary = fmt("two full verify runs: exit %d/%d, %zu bytes each, identical=%s", status[0], status[1],
                  a.size(), a == b ? "yes" : "no");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  std::string cli;
  app.add_option("--criterion", only, "run just this one (1-8)")->check(CLI::Range(1, 8));
  app.add_option("--cli", cli, "path to the etaverify executable");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Outcome()>> criteria{
      criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7,
      [&] { return criterion8(cli); }};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i + 1) != only) continue;
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("exception: ") + e.what();
    }
    std::printf("criterion %zu %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.summary.c_str());
    for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
