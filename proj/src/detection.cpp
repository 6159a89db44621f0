#include "scissors/detection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace scissors {

void DetectorModel::validate() const {
  if (!(eta >= 0.0 && eta <= 1.0)) throw Error("detector efficiency must lie in [0, 1]");
  if (!(nu >= 0.0)) throw Error("dark-count mean must be >= 0");
  if (max_resolved < 0) throw Error("resolved count must be >= 0");
}

PovmElement povm_element(const DetectorModel& model, int declared_count, int dim) {
  model.validate();
  if (declared_count < 0) throw Error("declared count must be >= 0");
  if (dim < 1) throw InvalidDimension("POVM dimension must be >= 1");

  const int nn = declared_count;
  std::vector<double> lf(static_cast<size_t>(std::max(dim, nn)) + 1);
  for (size_t k = 0; k < lf.size(); ++k) lf[k] = std::lgamma(double(k) + 1.0);
  const double log_eta = model.eta > 0.0 ? std::log(model.eta) : 0.0;
  const double log_miss = model.eta < 1.0 ? std::log1p(-model.eta) : 0.0;
  const double log_nu = model.nu > 0.0 ? std::log(model.nu) : 0.0;

  PovmElement out;
  out.diagonal.assign(static_cast<size_t>(dim), 0.0);
  for (int m = 0; m < dim; ++m) {
    double acc = 0.0;
    // n photons genuinely detected, the other declared_count - n are dark
    // counts, m - n incident photons are missed.
    for (int n = 0; n <= std::min(nn, m); ++n) {
      double lt = -model.nu + lf[static_cast<size_t>(m)] - lf[static_cast<size_t>(n)] - lf[static_cast<size_t>(m - n)];
      if (nn - n > 0) {
        if (model.nu == 0.0) continue;
        lt += double(nn - n) * log_nu - lf[static_cast<size_t>(nn - n)];
      }
      if (n > 0) {
        if (model.eta == 0.0) continue;
        lt += double(n) * log_eta;
      }
      if (m - n > 0) {
        if (model.eta == 1.0) continue;
        lt += double(m - n) * log_miss;
      }
      acc += std::exp(lt);
    }
    out.diagonal[static_cast<size_t>(m)] = acc;
  }
  out.truncation_bound = (model.eta < 1.0 && dim > nn) ? std::pow(1.0 - model.eta, double(dim - nn)) : 0.0;
  return out;
}

ConditionedState conditioned_density(const MultimodeState& full, const HeraldPattern& pattern, const DetectorModel& model) {
  pattern.validate();
  model.validate();
  if (pattern.n > model.max_resolved)
    throw Error("declared count " + std::to_string(pattern.n) + " exceeds detector resolution " + std::to_string(model.max_resolved));

  const Mode keep = pattern.output_mode();
  const int dn = mode_index(pattern.detected_n);
  const int dz = mode_index(pattern.detected_zero);
  const int k = mode_index(keep);
  const PovmElement pn = povm_element(model, pattern.n, full.cutoffs[pattern.detected_n]);
  const PovmElement p0 = povm_element(model, 0, full.cutoffs[pattern.detected_zero]);

  // Both POVM elements are Fock-diagonal, so conditioning is an elementwise
  // weight on the detected occupations followed by a partial trace.
  std::map<std::pair<int, int>, std::vector<std::pair<int, cplx>>> groups;
  for (const auto& [occ, amp] : full.terms) groups[{occ[static_cast<size_t>(dn)], occ[static_cast<size_t>(dz)]}].emplace_back(occ[static_cast<size_t>(k)], amp);

  DensityMatrix rho(full.cutoffs[keep]);
  double prob = 0.0;
  for (const auto& [key, slice] : groups) {
    const double w = pn.diagonal[static_cast<size_t>(key.first)] * p0.diagonal[static_cast<size_t>(key.second)];
    if (w == 0.0) continue;
    for (const auto& [p, ap] : slice) {
      prob += w * std::norm(ap);
      for (const auto& [q, aq] : slice) {
        if (q > p) continue;
        rho.at(p, q) += w * ap * std::conj(aq);
      }
    }
  }
  for (int i = 0; i < rho.dim; ++i)
    for (int j = i + 1; j < rho.dim; ++j) rho.at(i, j) = std::conj(rho.at(j, i));

  if (prob < kZeroProbability)
    throw ZeroProbabilityHerald("imperfect herald (" + std::to_string(pattern.n) + " at " + mode_name(pattern.detected_n) +
                                ", 0 at " + mode_name(pattern.detected_zero) + ") has probability " + display_value(prob));
  const double inv = 1.0 / prob;
  for (cplx& z : rho.m) z *= inv;

  if (rho.hermiticity_defect() > 1e-12) throw Error("conditioned density lost Hermiticity");
  if (!is_positive_semidefinite(rho, 1e-10)) throw Error("conditioned density lost positivity");
  if (std::abs(rho.trace() - 1.0) > 1e-10) throw Error("conditioned density lost unit trace");
  return ConditionedState{std::move(rho), prob};
}

double fidelity(const DensityMatrix& rho, const FockVector& target) {
  if (rho.dim != target.dim())
    throw DimensionMismatch("fidelity needs matching dimensions, got " + std::to_string(rho.dim) + " and " + std::to_string(target.dim()));
  cplx f(0.0, 0.0);
  for (int i = 0; i < rho.dim; ++i) {
    if (target.amp[static_cast<size_t>(i)] == cplx(0.0)) continue;
    for (int j = 0; j < rho.dim; ++j) f += std::conj(target.amp[static_cast<size_t>(i)]) * rho.at(i, j) * target.amp[static_cast<size_t>(j)];
  }
  if (std::abs(f.imag()) > 1e-10) throw Error("fidelity came out non-real; density matrix is not Hermitian");
  return std::clamp(f.real(), 0.0, 1.0);
}

}  // namespace scissors
