#include "scissors/metrics.hpp"

#include <cmath>

namespace scissors {

namespace {

constexpr double kVacuumMean = 1e-14;

const LadderWord kNumber{Ladder::raise, Ladder::lower};
const LadderWord kNumberSquared{Ladder::raise, Ladder::lower, Ladder::raise, Ladder::lower};
const LadderWord kLower{Ladder::lower};
const LadderWord kLowerTwice{Ladder::lower, Ladder::lower};

template <typename State>
double mandel_q_impl(const State& st) {
  const double mean = expectation(st, kNumber).real();
  if (mean < kVacuumMean) throw UndefinedMetric("Mandel Q is undefined on vacuum");
  const double second = expectation(st, kNumberSquared).real();
  return (second - mean * mean) / mean - 1.0;
}

template <typename State>
double quadrature_variance_impl(const State& st) {
  const double mean_n = expectation(st, kNumber).real();
  const cplx a = expectation(st, kLower);
  const cplx a2 = expectation(st, kLowerTwice);
  // X = (a + a†)/2, so <X> = Re<a> and <X^2> = (2 Re<a^2> + 2<n> + 1)/4.
  const double mean_x = a.real();
  const double mean_x2 = (2.0 * a2.real() + 2.0 * mean_n + 1.0) / 4.0;
  return mean_x2 - mean_x * mean_x;
}

}  // namespace

double mandel_q(const FockVector& state) { return mandel_q_impl(state); }
double mandel_q(const DensityMatrix& rho) { return mandel_q_impl(rho); }

double quadrature_variance(const FockVector& state) { return quadrature_variance_impl(state); }
double quadrature_variance(const DensityMatrix& rho) { return quadrature_variance_impl(rho); }

double skew_information(const FockVector& state) {
  const double mean_n = expectation(state, kNumber).real();
  const cplx a = expectation(state, kLower);
  return 0.5 + mean_n - std::norm(a);
}

MetricReport metric_report(const FockVector& state) {
  MetricReport r;
  r.mean_n = expectation(state, kNumber).real();
  if (r.mean_n >= kVacuumMean) r.mandel_q = mandel_q(state);
  r.var_x = quadrature_variance(state);
  r.skew_w = skew_information(state);
  return r;
}

MetricReport metric_report(const DensityMatrix& rho) {
  MetricReport r;
  r.mean_n = expectation(rho, kNumber).real();
  if (r.mean_n >= kVacuumMean) r.mandel_q = mandel_q(rho);
  r.var_x = quadrature_variance(rho);
  return r;
}

}  // namespace scissors
