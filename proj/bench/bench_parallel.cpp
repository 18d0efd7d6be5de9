// Wall-clock comparison of the serial and OpenMP paths.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "etaverify/quadrature.hpp"
#include "etaverify/verify.hpp"

using namespace etaverify;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* what, double serial, double parallel, bool same) {
  std::printf("%-28s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  identical=%s\n", what, serial,
              parallel, serial / parallel, same ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> cases{"thm1.1-sin", "thm1.1-cos", "gr-2.2", "gr-2.3", "glaisher-3.5"};
  if (argc > 1) cases.assign(argv + 1, argv + argc);
  std::printf("threads: %d\n", omp_get_max_threads());

  SuiteResult s, p;
  SuiteOptions opt;
  opt.execution = Execution::serial;
  const double ts = seconds([&] { s = run_suite(cases, opt); });
  opt.execution = Execution::parallel;
  const double tp = seconds([&] { p = run_suite(cases, opt); });
  report("run_suite", ts, tp, s.reports == p.reports && s.failures == p.failures);

  IntegrandSpec spec;
  spec.kernel = Kernel::eta3;
  spec.transform = Transform::sin;
  spec.b = 0.5;
  spec.c = 20.0;
  QuadratureResult qs, qp;
  const double qts = seconds([&] {
    for (int i = 0; i < 20; ++i) qs = integrate_damped_oscillatory(spec, 1e-10, {2'000'000, Execution::serial});
  });
  const double qtp = seconds([&] {
    for (int i = 0; i < 20; ++i) qp = integrate_damped_oscillatory(spec, 1e-10, {2'000'000, Execution::parallel});
  });
  report("damped quadrature x20", qts, qtp, qs.value == qp.value && qs.abs_err_est == qp.abs_err_est);
  return 0;
}
