#pragma once

#include "scissors/truncate.hpp"

namespace scissors {

/// On/off-array photodetector: quantum efficiency eta, mean dark count nu,
/// and the largest photon count the array can resolve.
struct DetectorModel {
  double eta = 1.0;
  double nu = 0.0;
  int max_resolved = 1;

  void validate() const;
};

/// Fock-diagonal POVM element for a declared count: diagonal[m] is the
/// probability that m incident photons register as `declared_count` clicks,
/// summing dark counts against detection losses.
struct PovmElement {
  std::vector<double> diagonal;
  /// Bound (1-eta)^(dim - declared_count) on the weight the element carries
  /// beyond the cutoff; worth checking when it exceeds ~1e-12.
  double truncation_bound = 0.0;
};

PovmElement povm_element(const DetectorModel& model, int declared_count, int dim);

struct ConditionedState {
  DensityMatrix rho;         // unit trace
  double probability = 0.0;  // herald probability under imperfect detection
};

/// Conditions the full three-mode state on an imperfect herald: applies the
/// declared-count POVM element on pattern.detected_n, the zero-count element
/// on pattern.detected_zero, and traces both out. The normalization trace is
/// returned as the herald probability (not renormalized by the input norm).
ConditionedState conditioned_density(const MultimodeState& full, const HeraldPattern& pattern, const DetectorModel& model);

/// <target| rho |target>; requires matching dimensions.
double fidelity(const DensityMatrix& rho, const FockVector& target);

}  // namespace scissors
