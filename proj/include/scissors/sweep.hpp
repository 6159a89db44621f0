#pragma once

#include <iosfwd>
#include <numbers>
#include <string>
#include <vector>

#include "scissors/detection.hpp"

namespace scissors {

enum class SweepParam { s, theta, phi_minus_beta, alpha_mod, eta, nu };
enum class SweepMode { metrics, probability, fidelity, state };
enum class HeraldConfig { max, min };

const char* sweep_param_name(SweepParam p);
SweepParam sweep_param_from_name(const std::string& name);
const char* sweep_mode_name(SweepMode m);
SweepMode sweep_mode_from_name(const std::string& name);

struct SweepAxis {
  SweepParam param = SweepParam::s;
  double start = 0.0;
  double stop = 1.0;
  int count = 2;
};

/// Values held fixed for every parameter not swept. The coherent input phase
/// is absorbed into the pump phase: inputs are |alpha| >= 0 real, and the
/// pump phase is phi_minus_beta.
struct SweepFixed {
  double s = 0.5;
  double theta = std::numbers::pi / 4;
  double phi_minus_beta = std::numbers::pi / 2;
  double alpha_mod = 1.0;
  double eta = 1.0;
  double nu = 0.0;
};

struct SweepSpec {
  std::vector<SweepAxis> axes;  // one or two
  SweepFixed fixed;
  std::vector<int> detected_counts{1};
  SweepMode mode = SweepMode::metrics;
  HeraldConfig config = HeraldConfig::max;
  int dim = 0;  // input dimension; 0 = auto-sized from |alpha|

  void validate() const;
};

std::vector<std::string> sweep_preset_names();

/// Named sweep recipes fig2..fig14 matching the figure settings this device
/// is usually plotted with. Several figures share one recipe (they plot
/// different columns of the same sweep).
SweepSpec sweep_preset(const std::string& name);

/// Runs the sweep and writes long-format CSV: one header row, then one row
/// per (grid point, detected count), axes varying row-major with the count
/// innermost. Cells are printed with 17 significant digits; undefined
/// quantities become empty cells. Grid points are evaluated concurrently
/// (workers <= 0 picks the OpenMP default) but rows are buffered and emitted
/// in deterministic order, so output is byte-identical for any worker count.
void run_sweep(const SweepSpec& spec, std::ostream& out, int workers = 0);

}  // namespace scissors
