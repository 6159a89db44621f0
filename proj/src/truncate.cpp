#include "scissors/truncate.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace scissors {

namespace {

cplx ipow(cplx base, int k) {
  cplx out(1.0, 0.0);
  for (int i = 0; i < k; ++i) out *= base;
  return out;
}

double sqrt_binomial(int n, int k) {
  return std::exp(0.5 * (std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) - std::lgamma(double(n - k) + 1.0)));
}

}  // namespace

Mode HeraldPattern::output_mode() const {
  for (Mode m : {Mode::a, Mode::b, Mode::c})
    if (m != detected_n && m != detected_zero) return m;
  throw Error("herald pattern has no output mode");
}

void HeraldPattern::validate() const {
  if (detected_n == detected_zero) throw Error("herald pattern must name two distinct detected modes");
  if (n < 0) throw Error("detected photon count must be >= 0");
}

HeraldPattern herald_beamsplitter_ports(int n) { return HeraldPattern{Mode::b, Mode::c, n}; }

HeraldPattern herald_amplifier_port(int n) { return HeraldPattern{Mode::a, Mode::c, n}; }

HeraldedState truncate_max(const FockVector& input, const DeviceParams& p, int n_detected) {
  p.validate();
  if (n_detected < 0) throw Error("detected photon count must be >= 0");
  const cplx tc = std::conj(p.transmittance());
  const cplx mrc = -std::conj(p.reflectance());
  const cplx ladder_ratio = -std::exp(cplx(0.0, p.phi)) * std::tanh(p.s);
  const double sech = 1.0 / std::cosh(p.s);

  // Amplitude of |k> on mode a: the detected counts force the ladder index
  // to k and the input index to n_detected - k, so the herald keeps exactly
  // the input components 0..n_detected, reversed and reweighted.
  FockVector out(n_detected + 1);
  for (int k = 0; k <= n_detected; ++k) {
    const int i = n_detected - k;  // input component feeding |k>
    if (i >= input.dim()) continue;
    const cplx psi = input.amp[static_cast<size_t>(i)];
    if (psi == cplx(0.0)) continue;
    out.amp[static_cast<size_t>(k)] = sech * sqrt_binomial(n_detected, k) * psi * ipow(ladder_ratio, k) * ipow(tc, k) * ipow(mrc, i);
  }

  const double prob = out.norm2();
  if (prob < kZeroProbability)
    throw ZeroProbabilityHerald("herald (" + std::to_string(n_detected) + " at port b, 0 at port c) has probability " + display_value(prob));
  const double inv = 1.0 / std::sqrt(prob);
  for (cplx& z : out.amp) z *= inv;
  return HeraldedState{std::move(out), prob, 0.0};
}

HeraldedState truncate_min(const FockVector& input, const DeviceParams& p, int n_detected) {
  p.validate();
  if (n_detected < 0) throw Error("detected photon count must be >= 0");
  const int n = n_detected;
  const cplx prefactor = ipow(-std::exp(cplx(0.0, p.phi)) * std::tanh(p.s), n) * ipow(std::conj(p.transmittance()), n) / std::cosh(p.s);
  const cplx mrc = -std::conj(p.reflectance());

  // Amplitude of |i + n> on mode b; the i-th input component is lifted by
  // the n detected amplifier photons.
  FockVector out(input.dim() + n);
  double prev_term = 0.0, last_term = 0.0;
  for (int i = 0; i < input.dim(); ++i) {
    const cplx psi = input.amp[static_cast<size_t>(i)];
    const cplx amp = prefactor * sqrt_binomial(i + n, n) * psi * ipow(mrc, i);
    out.amp[static_cast<size_t>(i + n)] = amp;
    prev_term = last_term;
    last_term = std::norm(amp);
  }

  const double prob = out.norm2();
  if (prob < kZeroProbability)
    throw ZeroProbabilityHerald("herald (" + std::to_string(n) + " at port a, 0 at port c) has probability " + display_value(prob));

  // Ratio-test estimate of the herald probability carried by input
  // components beyond the cutoff, had the input continued geometrically.
  double tail = 0.0;
  if (last_term > 0.0 && prev_term > 0.0) {
    const double r = last_term / prev_term;
    tail = r < 1.0 ? last_term * r / (1.0 - r) : std::numeric_limits<double>::infinity();
  }

  const double inv = 1.0 / std::sqrt(prob);
  for (cplx& z : out.amp) z *= inv;
  return HeraldedState{std::move(out), prob, tail};
}

HeraldedState project_herald(const MultimodeState& full, const HeraldPattern& pattern) {
  pattern.validate();
  const Mode out_mode = pattern.output_mode();
  const int dn = mode_index(pattern.detected_n);
  const int dz = mode_index(pattern.detected_zero);
  const int k = mode_index(out_mode);

  FockVector out(full.cutoffs[out_mode]);
  double collected = 0.0;
  for (const auto& [occ, amp] : full.terms) {
    if (occ[static_cast<size_t>(dn)] != pattern.n || occ[static_cast<size_t>(dz)] != 0) continue;
    out.amp[static_cast<size_t>(occ[static_cast<size_t>(k)])] = amp;
    collected += std::norm(amp);
  }
  const double total = full.norm2();
  if (total <= 0.0) throw Error("cannot project a herald from a zero state");
  const double prob = collected / total;
  if (prob < kZeroProbability)
    throw ZeroProbabilityHerald("herald (" + std::to_string(pattern.n) + " at " + mode_name(pattern.detected_n) + ", 0 at " +
                                mode_name(pattern.detected_zero) + ") has probability " + display_value(prob));
  const double inv = 1.0 / std::sqrt(collected);
  for (cplx& z : out.amp) z *= inv;
  return HeraldedState{std::move(out), prob, 0.0};
}

}  // namespace scissors
