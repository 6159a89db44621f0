// Command-line front end: single-point truncation reports, figure sweeps,
// fidelity under imperfect detection, POVM dumps, and the closed-form vs
// reference-unitary consistency check.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "scissors/detection.hpp"
#include "scissors/devices.hpp"
#include "scissors/errors.hpp"
#include "scissors/json_io.hpp"
#include "scissors/metrics.hpp"
#include "scissors/sweep.hpp"
#include "scissors/truncate.hpp"

namespace {

using nlohmann::json;
using namespace scissors;

constexpr double kPi = std::numbers::pi;

struct CommonArgs {
  double s = 0.5;
  double phi_minus_beta = kPi / 2;
  double theta = kPi / 4;
  double alpha = 1.0;
  std::vector<double> amps;  // flat re,im pairs
  bool vacuum_input = false;
  int dim = 0;  // 0 = auto-size coherent input
};

FockVector build_input(const CommonArgs& a) {
  if (a.vacuum_input) return fock_basis_state(0, 1);
  if (!a.amps.empty()) {
    if (a.amps.size() % 2 != 0) throw Error("--amps expects flat re,im pairs (even count)");
    FockVector v;
    v.amp.resize(a.amps.size() / 2);
    for (size_t k = 0; k < v.amp.size(); ++k) v.amp[k] = cplx(a.amps[2 * k], a.amps[2 * k + 1]);
    if (v.norm2() <= 0.0) throw Error("--amps must not be all zero");
    return v.normalize();
  }
  const int dim = a.dim > 0 ? a.dim : coherent_dim(a.alpha);
  return coherent_coefficients(cplx(a.alpha, 0.0), dim).normalize();
}

json input_descriptor(const CommonArgs& a, const FockVector& input) {
  json j;
  if (a.vacuum_input)
    j["kind"] = "vacuum";
  else if (!a.amps.empty())
    j["kind"] = "amplitudes";
  else {
    j["kind"] = "coherent";
    j["alpha_mod"] = a.alpha;
  }
  j["state"] = input;
  return j;
}

void add_common_flags(CLI::App* cmd, CommonArgs& a, bool with_input) {
  cmd->add_option("--s", a.s, "squeeze strength (>= 0)");
  cmd->add_option("--phi-minus-beta", a.phi_minus_beta, "pump phase minus input phase, radians");
  cmd->add_option("--theta", a.theta, "beamsplitter angle, radians");
  if (with_input) {
    auto* alpha = cmd->add_option("--alpha", a.alpha, "coherent input modulus |alpha|");
    auto* amps = cmd->add_option("--amps", a.amps, "explicit input amplitudes as flat re,im pairs")->delimiter(',');
    auto* vac = cmd->add_flag("--vacuum-input", a.vacuum_input, "single-term vacuum input");
    alpha->excludes(amps)->excludes(vac);
    amps->excludes(vac);
    cmd->add_option("--dim", a.dim, "coherent input dimension (0 = auto)");
  }
}

std::function<void(const std::string&)> make_writer(const std::string& out_path) {
  return [out_path](const std::string& text) {
    if (out_path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw Error("cannot open output file '" + out_path + "'");
    f << text;
  };
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json device_json(const DeviceParams& p) {
  return json{{"s", p.s}, {"phi_minus_beta", p.phi}, {"theta", p.theta}};
}

int run(int argc, char** argv) {
  CLI::App app{"quantum-scissors device simulator"};
  app.require_subcommand(1);

  // --- truncate ---------------------------------------------------------
  CommonArgs trunc_args;
  std::string trunc_config = "max";
  int trunc_n = 1;
  std::string trunc_out;
  auto* trunc = app.add_subcommand("truncate", "heralded output state for one parameter point");
  add_common_flags(trunc, trunc_args, true);
  trunc->add_option("--config", trunc_config, "herald configuration")->check(CLI::IsMember({"max", "min"}));
  trunc->add_option("--N", trunc_n, "declared photon count")->check(CLI::NonNegativeNumber);
  trunc->add_option("--out", trunc_out, "write JSON here instead of stdout");

  // --- sweep ------------------------------------------------------------
  SweepSpec spec;
  std::string preset;
  std::vector<std::string> axis_args;
  std::string sweep_mode = "metrics", sweep_config = "max", sweep_out;
  std::vector<int> sweep_counts;
  int sweep_workers = 0;
  auto* sweep = app.add_subcommand("sweep", "CSV parameter sweep (presets fig2..fig14 or manual axes)");
  auto* preset_opt = sweep->add_option("--preset", preset, "named figure recipe")->check(CLI::IsMember(sweep_preset_names()));
  auto* axis_opt = sweep->add_option("--axis", axis_args, "axis as param:start:stop:count (up to two)")->expected(0, 2);
  preset_opt->excludes(axis_opt);
  auto* mode_opt = sweep->add_option("--mode", sweep_mode, "row contents")->check(CLI::IsMember({"metrics", "probability", "fidelity", "state"}));
  auto* config_opt = sweep->add_option("--config", sweep_config, "herald configuration")->check(CLI::IsMember({"max", "min"}));
  auto* counts_opt = sweep->add_option("--N", sweep_counts, "declared photon counts (one or more)");
  auto* s_opt = sweep->add_option("--s", spec.fixed.s, "fixed squeeze strength");
  auto* phi_opt = sweep->add_option("--phi-minus-beta", spec.fixed.phi_minus_beta, "fixed phase difference");
  auto* theta_opt = sweep->add_option("--theta", spec.fixed.theta, "fixed beamsplitter angle");
  auto* alpha_opt = sweep->add_option("--alpha", spec.fixed.alpha_mod, "fixed coherent modulus");
  auto* eta_opt = sweep->add_option("--eta", spec.fixed.eta, "fixed detector efficiency");
  auto* nu_opt = sweep->add_option("--nu", spec.fixed.nu, "fixed dark-count rate");
  sweep->add_option("--dim", spec.dim, "coherent input dimension (0 = auto)");
  sweep->add_option("--out", sweep_out, "write CSV here instead of stdout");
  sweep->add_option("--workers", sweep_workers, "worker threads (0 = all)");

  // --- fidelity ---------------------------------------------------------
  CommonArgs fid_args;
  std::string fid_config = "max";
  int fid_n = 1;
  double fid_eta = 1.0, fid_nu = 0.0;
  std::string fid_out;
  auto* fid = app.add_subcommand("fidelity", "fidelity to the ideal output under imperfect detection");
  add_common_flags(fid, fid_args, true);
  fid->add_option("--config", fid_config, "herald configuration")->check(CLI::IsMember({"max", "min"}));
  fid->add_option("--N", fid_n, "declared photon count")->check(CLI::NonNegativeNumber);
  fid->add_option("--eta", fid_eta, "detector efficiency in [0, 1]");
  fid->add_option("--nu", fid_nu, "mean dark counts per window (>= 0)");
  fid->add_option("--out", fid_out, "write JSON here instead of stdout");

  // --- povm -------------------------------------------------------------
  double povm_eta = 1.0, povm_nu = 0.0;
  int povm_n = 1, povm_dim = 30;
  std::string povm_out;
  auto* povm = app.add_subcommand("povm", "diagonal of one detector POVM element");
  povm->add_option("--eta", povm_eta, "detector efficiency in [0, 1]");
  povm->add_option("--nu", povm_nu, "mean dark counts per window (>= 0)");
  povm->add_option("--N", povm_n, "declared count")->check(CLI::NonNegativeNumber);
  povm->add_option("--dim", povm_dim, "number of Fock levels")->check(CLI::PositiveNumber);
  povm->add_option("--out", povm_out, "write JSON here instead of stdout");

  // --- oracle-check -----------------------------------------------------
  int check_dim = 30, check_workers = 0;
  std::string check_out;
  auto* check = app.add_subcommand("oracle-check", "compare the closed form against reference unitaries");
  check->add_option("--dim", check_dim, "per-mode cutoff")->check(CLI::PositiveNumber);
  check->add_option("--workers", check_workers, "worker threads (0 = all)");
  check->add_option("--out", check_out, "write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*trunc) {
    const FockVector input = build_input(trunc_args);
    const DeviceParams dev{trunc_args.s, trunc_args.phi_minus_beta, trunc_args.theta};
    const HeraldedState h = trunc_config == "max" ? truncate_max(input, dev, trunc_n) : truncate_min(input, dev, trunc_n);
    json j;
    j["config"] = trunc_config;
    j["N"] = trunc_n;
    j["device"] = device_json(dev);
    j["input"] = input_descriptor(trunc_args, input);
    j["probability"] = h.probability;
    j["probability_tail"] = h.probability_tail;
    j["state"] = h.state;
    j["metrics"] = metric_report(h.state);
    make_writer(trunc_out)(dump(j));
    return 0;
  }

  if (*sweep) {
    if (*preset_opt) {
      const SweepSpec base = sweep_preset(preset);
      const SweepFixed fixed = spec.fixed;  // user overrides captured by CLI11
      const int dim = spec.dim;
      spec = base;
      if (*s_opt) spec.fixed.s = fixed.s;
      if (*phi_opt) spec.fixed.phi_minus_beta = fixed.phi_minus_beta;
      if (*theta_opt) spec.fixed.theta = fixed.theta;
      if (*alpha_opt) spec.fixed.alpha_mod = fixed.alpha_mod;
      if (*eta_opt) spec.fixed.eta = fixed.eta;
      if (*nu_opt) spec.fixed.nu = fixed.nu;
      if (*mode_opt) spec.mode = sweep_mode_from_name(sweep_mode);
      if (*config_opt) spec.config = sweep_config == "max" ? HeraldConfig::max : HeraldConfig::min;
      if (*counts_opt) spec.detected_counts = sweep_counts;
      spec.dim = dim;
    } else {
      if (axis_args.empty()) throw Error("sweep needs --preset or at least one --axis");
      spec.axes.clear();
      for (const std::string& text : axis_args) {
        std::istringstream in(text);
        std::string name, f0, f1, f2;
        if (!std::getline(in, name, ':') || !std::getline(in, f0, ':') || !std::getline(in, f1, ':') || !std::getline(in, f2, ':'))
          throw Error("bad --axis '" + text + "', expected param:start:stop:count");
        SweepAxis ax;
        ax.param = sweep_param_from_name(name);
        try {
          ax.start = std::stod(f0);
          ax.stop = std::stod(f1);
          ax.count = std::stoi(f2);
        } catch (const std::exception&) {
          throw Error("bad --axis '" + text + "', expected numeric start:stop:count");
        }
        spec.axes.push_back(ax);
      }
      spec.mode = sweep_mode_from_name(sweep_mode);
      spec.config = sweep_config == "max" ? HeraldConfig::max : HeraldConfig::min;
      if (*counts_opt) spec.detected_counts = sweep_counts;
    }
    std::ostringstream csv;
    run_sweep(spec, csv, sweep_workers);
    make_writer(sweep_out)(csv.str());
    return 0;
  }

  if (*fid) {
    const FockVector input = build_input(fid_args);
    const DeviceParams dev{fid_args.s, fid_args.phi_minus_beta, fid_args.theta};
    const DetectorModel model{fid_eta, fid_nu, fid_n};
    const HeraldPattern pattern = fid_config == "max" ? herald_beamsplitter_ports(fid_n) : herald_amplifier_port(fid_n);
    const MultimodeState full = output_state_closed_form(input, dev, default_cutoffs(input, dev));
    const ConditionedState cond = conditioned_density(full, pattern, model);
    const HeraldedState ideal = fid_config == "max" ? truncate_max(input, dev, fid_n) : truncate_min(input, dev, fid_n);
    json j;
    j["config"] = fid_config;
    j["N"] = fid_n;
    j["device"] = device_json(dev);
    j["detector"] = json{{"eta", fid_eta}, {"nu", fid_nu}};
    j["input"] = input_descriptor(fid_args, input);
    j["probability"] = cond.probability;
    j["fidelity"] = fidelity(cond.rho, padded(ideal.state, cond.rho.dim));
    make_writer(fid_out)(dump(j));
    return 0;
  }

  if (*povm) {
    const DetectorModel model{povm_eta, povm_nu, povm_n};
    const PovmElement el = povm_element(model, povm_n, povm_dim);
    json j;
    j["eta"] = povm_eta;
    j["nu"] = povm_nu;
    j["N"] = povm_n;
    j["dim"] = povm_dim;
    j["diagonal"] = el.diagonal;
    j["truncation_bound"] = el.truncation_bound;
    make_writer(povm_out)(dump(j));
    return 0;
  }

  // oracle-check
  const OracleCheckReport report = run_oracle_check(check_dim, check_workers);
  json j;
  j["points"] = report.points;
  j["dim"] = report.dim;
  j["max_amplitude_deviation"] = report.max_amplitude_deviation;
  j["worst"] = json{{"s", report.worst_s}, {"theta", report.worst_theta}, {"phi_minus_beta", report.worst_phi}, {"alpha_mod", report.worst_alpha}};
  make_writer(check_out)(dump(j));
  return report.max_amplitude_deviation < 1e-8 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ZeroProbabilityHerald& e) {
    std::cerr << "zero-probability herald: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
