#pragma once

#include "scissors/devices.hpp"

namespace scissors {

/// Which detector reads which count. detected_n reads n photons, detected_zero
/// reads zero; the remaining mode carries the heralded output state.
struct HeraldPattern {
  Mode detected_n = Mode::b;
  Mode detected_zero = Mode::c;
  int n = 0;

  Mode output_mode() const;
  void validate() const;
};

/// Detectors on both beamsplitter output ports (n at port b, zero at port c);
/// the heralded state leaves on amplifier port a. This configuration keeps
/// Fock components 0..n ("truncate from above").
HeraldPattern herald_beamsplitter_ports(int n);

/// Detector on amplifier port a (reads n) plus zero at beamsplitter port c;
/// the heralded state leaves on port b and has no components below n
/// ("truncate from below").
HeraldPattern herald_amplifier_port(int n);

struct HeraldedState {
  FockVector state;          // normalized
  double probability = 0.0;  // herald probability
  /// Upper-bound estimate of herald probability mass lost to the input
  /// cutoff (geometric ratio extrapolation; only the from-below herald has a
  /// tail, the from-above herald is a finite sum). +inf when the terms are
  /// still growing at the cutoff.
  double probability_tail = 0.0;
};

/// Closed-form heralded state for detectors on both beamsplitter ports:
/// keeps input components 0..n_detected on output mode a. Degenerate at
/// n_detected = 0 (vacuum output). Raises ZeroProbabilityHerald when the
/// herald cannot fire (e.g. s = 0 with a vacuum input component missing).
HeraldedState truncate_max(const FockVector& input, const DeviceParams& p, int n_detected);

/// Closed-form heralded state for the amplifier-port detector: output mode b
/// carries components n_detected, n_detected+1, ... For n_detected >= 1 this
/// needs s > 0 and |T| > 0, otherwise the herald probability is zero.
HeraldedState truncate_min(const FockVector& input, const DeviceParams& p, int n_detected);

/// Projects a full three-mode state onto a herald outcome: collects the
/// terms whose detected occupations match, renormalizes, and reports
/// probability = collected mass / total mass.
HeraldedState project_herald(const MultimodeState& full, const HeraldPattern& pattern);

}  // namespace scissors
