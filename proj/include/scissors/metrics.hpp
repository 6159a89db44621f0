#pragma once

#include <optional>

#include "scissors/fock.hpp"

namespace scissors {

/// Photon-statistics summary of a single-mode state. mandel_q is absent on
/// (numerical) vacuum; skew_w is absent for mixed states.
struct MetricReport {
  double mean_n = 0.0;
  std::optional<double> mandel_q;
  double var_x = 0.0;
  std::optional<double> skew_w;
};

/// Mandel Q = (<n^2> - <n>^2)/<n> - 1: negative means sub-Poissonian
/// statistics (-1 on number states, 0 on coherent states). Undefined on
/// vacuum (throws UndefinedMetric).
double mandel_q(const FockVector& state);
double mandel_q(const DensityMatrix& rho);

/// Variance of X = (a + a†)/2; equals 1/4 on vacuum and coherent states,
/// below 1/4 means quadrature squeezing.
double quadrature_variance(const FockVector& state);
double quadrature_variance(const DensityMatrix& rho);

/// Skew-information nonclassicality witness W = 1/2 + <a†a> - <a†><a>;
/// W = 1/2 on coherent states, larger values indicate nonclassicality.
/// Defined here for pure states only.
double skew_information(const FockVector& state);
double skew_information(const DensityMatrix&) = delete;  // pure-state quantity

MetricReport metric_report(const FockVector& state);
MetricReport metric_report(const DensityMatrix& rho);

}  // namespace scissors
