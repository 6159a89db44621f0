#pragma once

#include <vector>

#include "scissors/fock.hpp"

namespace scissors {

/// Device settings. The amplifier pump is xi = s e^{i phi} (s >= 0); the
/// beamsplitter mixes modes b and c with transmittance T = cos(theta) and
/// reflectance R = i sin(theta), so |T|^2 + |R|^2 = 1 by construction.
struct DeviceParams {
  double s = 0.0;
  double phi = 0.0;
  double theta = 0.0;

  cplx transmittance() const;
  cplx reflectance() const;
  void validate() const;
};

/// Amplified-vacuum ladder amplitude A_n = sech(s) (-e^{i phi} tanh s)^n.
/// These weight the |n,n,0> components the amplifier creates from vacuum.
cplx squeeze_coefficient(int n, double s, double phi);

/// Smallest level count whose ladder tail sum_{k>=n} |A_k|^2 = tanh(s)^{2n}
/// drops below `tail`.
int squeeze_levels(double s, double tail = 1e-13);

/// Cutoffs sized so the dropped mass stays below ~1e-13 for the given input
/// and pump strength: mode a needs the ladder support, modes b and c the
/// ladder support plus the input support (the beamsplitter spreads photons
/// across both output ports but conserves their total).
Cutoffs default_cutoffs(const FockVector& input, const DeviceParams& p);

/// Rigorous upper bound on the probability mass the given cutoffs drop,
/// using the orthogonal (input index, ladder index) sector decomposition.
double estimate_dropped_mass(const FockVector& input, const DeviceParams& p, const Cutoffs& cut);

/// Exact amplitude construction of the three-mode output state: the ladder
/// expansion of the amplified vacuum followed by the binomial expansion of
/// the beamsplitter acting on modes b and c. Amplitudes inside the cutoffs
/// are exact (each set of integer indices contributes a finite sum).
/// Factorial ratios are assembled in log-magnitude + unit-phase form.
/// Parallelized over the input index with an index-ordered merge, so results
/// are bit-identical for any thread count.
MultimodeState output_state_closed_form(const FockVector& input, const DeviceParams& p, const Cutoffs& cut);

/// Single-threaded twin of output_state_closed_form, kept as the regression
/// reference for the parallel kernel (results must match bit for bit).
MultimodeState output_state_closed_form_serial(const FockVector& input, const DeviceParams& p, const Cutoffs& cut);

/// theta-independent eigendecompositions of the beamsplitter generator
/// blocks. The generator i theta (b†c + bc†) conserves n_b + n_c, so it
/// splits into finite symmetric tridiagonal blocks J_M (total photons M)
/// that exponentiate exactly. Build once, share across many parameter
/// points; safe for concurrent reads.
class BeamsplitterBlocks {
 public:
  /// Prepares blocks for all totals M = 0..max_total.
  explicit BeamsplitterBlocks(int max_total);

  int max_total() const { return static_cast<int>(blocks_.size()) - 1; }

  /// Column k of exp(i theta J_M): the image of |n_b = k, n_c = M - k>.
  std::vector<cplx> column(int total, int k, double theta) const;

 private:
  struct Block {
    std::vector<double> eigval;
    std::vector<double> eigvec;  // row-major; column j is eigenvector j
  };
  std::vector<Block> blocks_;
};

/// Reference construction of the same output state by numerically
/// exponentiating the device generators on truncated spaces: the amplifier
/// generator acts on a padded two-mode grid via sub-stepped Taylor series
/// (pad levels damp the cutoff boundary), the beamsplitter via its exact
/// block eigendecompositions. Shares no amplitude formulas with
/// output_state_closed_form. Raises OracleFailure if unitarity degrades
/// beyond 1e-8 on the populated subspace.
MultimodeState output_state_oracle(const FockVector& input, const DeviceParams& p, const Cutoffs& cut,
                                   int pad = 15, const BeamsplitterBlocks* cache = nullptr);

/// Result of sweeping the closed form against the oracle over the canonical
/// validation grid (4 pump strengths x 5 splitter angles x 3 pump phases x
/// 3 coherent amplitudes = 180 points).
struct OracleCheckReport {
  int points = 0;
  int dim = 0;
  double max_amplitude_deviation = 0.0;
  double worst_s = 0.0, worst_theta = 0.0, worst_phi = 0.0, worst_alpha = 0.0;
};

OracleCheckReport run_oracle_check(int dim = 30, int workers = 0);

}  // namespace scissors
