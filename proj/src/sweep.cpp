#include "scissors/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <optional>
#include <ostream>

#include "scissors/metrics.hpp"

namespace scissors {

namespace {

constexpr double kPi = std::numbers::pi;

struct PointParams {
  double s, theta, phi_minus_beta, alpha_mod, eta, nu;
};

using Cell = std::optional<double>;

std::string format_cell(const Cell& c) {
  if (!c) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", *c);
  return buf;
}

double axis_value(const SweepAxis& ax, int k) {
  return ax.start + (ax.stop - ax.start) * double(k) / double(ax.count - 1);
}

void apply(PointParams& p, SweepParam which, double v) {
  switch (which) {
    case SweepParam::s: p.s = v; break;
    case SweepParam::theta: p.theta = v; break;
    case SweepParam::phi_minus_beta: p.phi_minus_beta = v; break;
    case SweepParam::alpha_mod: p.alpha_mod = v; break;
    case SweepParam::eta: p.eta = v; break;
    case SweepParam::nu: p.nu = v; break;
  }
}

HeraldedState herald_for(const SweepSpec& spec, const FockVector& input, const DeviceParams& dev, int n) {
  return spec.config == HeraldConfig::max ? truncate_max(input, dev, n) : truncate_min(input, dev, n);
}

// One CSV row (without the axis prefix): the mode's cells for one grid
// point and one detected count.
std::vector<Cell> compute_cells(const SweepSpec& spec, const PointParams& pt, int n, int state_width) {
  const int in_dim = spec.dim > 0 ? spec.dim : coherent_dim(pt.alpha_mod);
  const FockVector input = coherent_coefficients(cplx(pt.alpha_mod, 0.0), in_dim).normalize();
  const DeviceParams dev{pt.s, pt.phi_minus_beta, pt.theta};

  std::vector<Cell> cells;
  switch (spec.mode) {
    case SweepMode::probability: {
      try {
        cells.push_back(herald_for(spec, input, dev, n).probability);
      } catch (const ZeroProbabilityHerald&) {
        cells.push_back(0.0);
      }
      break;
    }
    case SweepMode::metrics: {
      cells.assign(5, std::nullopt);
      try {
        const HeraldedState h = herald_for(spec, input, dev, n);
        const MetricReport r = metric_report(h.state);
        cells[0] = h.probability;
        cells[1] = r.mean_n;
        cells[2] = r.mandel_q ? Cell(*r.mandel_q) : std::nullopt;
        cells[3] = r.var_x;
        cells[4] = r.skew_w ? Cell(*r.skew_w) : std::nullopt;
      } catch (const ZeroProbabilityHerald&) {
        cells[0] = 0.0;
      }
      break;
    }
    case SweepMode::fidelity: {
      cells.assign(2, std::nullopt);
      const DetectorModel model{pt.eta, pt.nu, n};
      const HeraldPattern pattern = spec.config == HeraldConfig::max ? herald_beamsplitter_ports(n) : herald_amplifier_port(n);
      const MultimodeState full = output_state_closed_form(input, dev, default_cutoffs(input, dev));
      std::optional<ConditionedState> cond;
      try {
        cond = conditioned_density(full, pattern, model);
        cells[0] = cond->probability;
      } catch (const ZeroProbabilityHerald&) {
        cells[0] = 0.0;
      }
      if (cond) {
        try {
          const HeraldedState ideal = herald_for(spec, input, dev, n);
          cells[1] = fidelity(cond->rho, padded(ideal.state, cond->rho.dim));
        } catch (const ZeroProbabilityHerald&) {
        }
      }
      break;
    }
    case SweepMode::state: {
      cells.assign(1 + 2 * static_cast<size_t>(state_width), std::nullopt);
      try {
        const HeraldedState h = herald_for(spec, input, dev, n);
        cells[0] = h.probability;
        for (int k = 0; k < h.state.dim() && k < state_width; ++k) {
          cells[1 + 2 * static_cast<size_t>(k)] = h.state.amp[static_cast<size_t>(k)].real();
          cells[2 + 2 * static_cast<size_t>(k)] = h.state.amp[static_cast<size_t>(k)].imag();
        }
      } catch (const ZeroProbabilityHerald&) {
        cells[0] = 0.0;
      }
      break;
    }
  }
  return cells;
}

int state_column_width(const SweepSpec& spec) {
  if (spec.mode != SweepMode::state) return 0;
  const int n_max = *std::max_element(spec.detected_counts.begin(), spec.detected_counts.end());
  if (spec.config == HeraldConfig::max) return n_max + 1;
  double alpha_max = spec.fixed.alpha_mod;
  for (const SweepAxis& ax : spec.axes)
    if (ax.param == SweepParam::alpha_mod) alpha_max = std::max(ax.start, ax.stop);
  const int in_dim = spec.dim > 0 ? spec.dim : coherent_dim(alpha_max);
  return in_dim + n_max;
}

}  // namespace

const char* sweep_param_name(SweepParam p) {
  switch (p) {
    case SweepParam::s: return "s";
    case SweepParam::theta: return "theta";
    case SweepParam::phi_minus_beta: return "phi_minus_beta";
    case SweepParam::alpha_mod: return "alpha_mod";
    case SweepParam::eta: return "eta";
    default: return "nu";
  }
}

SweepParam sweep_param_from_name(const std::string& name) {
  for (SweepParam p : {SweepParam::s, SweepParam::theta, SweepParam::phi_minus_beta, SweepParam::alpha_mod, SweepParam::eta, SweepParam::nu})
    if (name == sweep_param_name(p)) return p;
  throw Error("unknown sweep parameter '" + name + "'");
}

const char* sweep_mode_name(SweepMode m) {
  switch (m) {
    case SweepMode::metrics: return "metrics";
    case SweepMode::probability: return "probability";
    case SweepMode::fidelity: return "fidelity";
    default: return "state";
  }
}

SweepMode sweep_mode_from_name(const std::string& name) {
  for (SweepMode m : {SweepMode::metrics, SweepMode::probability, SweepMode::fidelity, SweepMode::state})
    if (name == sweep_mode_name(m)) return m;
  throw Error("unknown sweep mode '" + name + "'");
}

void SweepSpec::validate() const {
  if (axes.empty() || axes.size() > 2) throw Error("a sweep needs one or two axes");
  if (axes.size() == 2 && axes[0].param == axes[1].param) throw Error("sweep axes must differ");
  for (const SweepAxis& ax : axes) {
    if (ax.count < 2) throw Error("a sweep axis needs at least 2 points");
    if (!(ax.start < ax.stop)) throw Error("sweep axis start must be below stop");
    if ((ax.param == SweepParam::s || ax.param == SweepParam::alpha_mod || ax.param == SweepParam::nu) && ax.start < 0.0)
      throw Error(std::string(sweep_param_name(ax.param)) + " must be >= 0");
    if (ax.param == SweepParam::eta && (ax.start < 0.0 || ax.stop > 1.0)) throw Error("eta must lie in [0, 1]");
  }
  if (fixed.s < 0.0 || fixed.alpha_mod < 0.0 || fixed.nu < 0.0 || fixed.eta < 0.0 || fixed.eta > 1.0)
    throw Error("fixed sweep parameters out of range");
  if (detected_counts.empty()) throw Error("a sweep needs at least one detected count");
  for (int n : detected_counts)
    if (n < 0) throw Error("detected counts must be >= 0");
  if (dim < 0) throw Error("input dimension must be >= 0 (0 = auto)");
}

std::vector<std::string> sweep_preset_names() {
  return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11", "fig12", "fig13", "fig14"};
}

SweepSpec sweep_preset(const std::string& name) {
  SweepSpec spec;
  spec.detected_counts = {1, 2, 3};

  // Shared recipes: metrics vs pump strength (figs 2, 5, 9), metrics vs
  // splitter angle (figs 3, 7, 10), metrics/probability over the amplitude x
  // pump-strength plane (figs 4, 8, 11, 12), fidelity scans (figs 13, 14).
  if (name == "fig2" || name == "fig5" || name == "fig9") {
    spec.axes = {{SweepParam::s, 0.0, 1.0, 101}};
    return spec;
  }
  if (name == "fig3" || name == "fig7" || name == "fig10") {
    spec.axes = {{SweepParam::theta, 0.0, kPi / 2, 101}};
    return spec;
  }
  if (name == "fig4" || name == "fig8" || name == "fig11" || name == "fig12") {
    spec.axes = {{SweepParam::alpha_mod, 0.0, 3.0, 61}, {SweepParam::s, 0.0, 1.0, 61}};
    spec.detected_counts = {name == "fig12" ? 3 : 1};
    spec.mode = (name == "fig11" || name == "fig12") ? SweepMode::probability : SweepMode::metrics;
    return spec;
  }
  if (name == "fig6") {
    spec.axes = {{SweepParam::phi_minus_beta, 0.0, 2 * kPi, 101}};
    return spec;
  }
  if (name == "fig13" || name == "fig14") {
    spec.mode = SweepMode::fidelity;
    spec.fixed.eta = 0.7;
    spec.fixed.nu = 1e-4;
    if (name == "fig13")
      spec.axes = {{SweepParam::alpha_mod, 0.2, 3.0, 101}};
    else
      spec.axes = {{SweepParam::s, 0.0, 1.0, 101}};
    return spec;
  }
  throw Error("unknown sweep preset '" + name + "' (expected fig2..fig14)");
}

void run_sweep(const SweepSpec& spec, std::ostream& out, int workers) {
  spec.validate();
  const int count0 = spec.axes[0].count;
  const int count1 = spec.axes.size() > 1 ? spec.axes[1].count : 1;
  const int per_point = static_cast<int>(spec.detected_counts.size());
  const int total = count0 * count1 * per_point;
  const int width = state_column_width(spec);

  std::string header = sweep_param_name(spec.axes[0].param);
  if (spec.axes.size() > 1) header += std::string(",") + sweep_param_name(spec.axes[1].param);
  header += ",N";
  switch (spec.mode) {
    case SweepMode::metrics: header += ",probability,mean_n,mandel_q,var_x,skew_w"; break;
    case SweepMode::probability: header += ",probability"; break;
    case SweepMode::fidelity: header += ",probability,fidelity"; break;
    case SweepMode::state:
      header += ",probability";
      for (int k = 0; k < width; ++k) header += ",re_" + std::to_string(k) + ",im_" + std::to_string(k);
      break;
  }

  // Rows are computed concurrently but buffered and written in grid order,
  // so the byte stream never depends on the worker count.  Exceptions must
  // not escape the parallel region (that would terminate the process);
  // capture the first one and rethrow after the loop.
  std::vector<std::string> rows(static_cast<size_t>(total));
  const int nthreads = workers > 0 ? workers : omp_get_max_threads();
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (int idx = 0; idx < total; ++idx) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      const int n_idx = idx % per_point;
      const int k1 = (idx / per_point) % count1;
      const int k0 = idx / (per_point * count1);
      PointParams pt{spec.fixed.s, spec.fixed.theta, spec.fixed.phi_minus_beta, spec.fixed.alpha_mod, spec.fixed.eta, spec.fixed.nu};
      const double v0 = axis_value(spec.axes[0], k0);
      apply(pt, spec.axes[0].param, v0);
      double v1 = 0.0;
      if (spec.axes.size() > 1) {
        v1 = axis_value(spec.axes[1], k1);
        apply(pt, spec.axes[1].param, v1);
      }
      const int n = spec.detected_counts[static_cast<size_t>(n_idx)];

      std::string row = format_cell(v0);
      if (spec.axes.size() > 1) row += "," + format_cell(v1);
      row += "," + std::to_string(n);
      for (const Cell& c : compute_cells(spec, pt, n, width)) row += "," + format_cell(c);
      rows[static_cast<size_t>(idx)] = std::move(row);
    } catch (...) {
#pragma omp critical(scissors_sweep_error)
      {
        if (!failed.exchange(true)) first_error = std::current_exception();
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);

  out << header << '\n';
  for (const std::string& row : rows) out << row << '\n';
}

}  // namespace scissors
