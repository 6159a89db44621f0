#include <cmath>
#include <numbers>

#include "doctest.h"
#include "scissors/detection.hpp"

using namespace scissors;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("ideal detectors give a delta POVM diagonal") {
  const PovmElement el = povm_element({1.0, 0.0, 5}, 2, 8);
  for (int m = 0; m < 8; ++m) CHECK(el.diagonal[static_cast<size_t>(m)] == doctest::Approx(m == 2 ? 1.0 : 0.0).epsilon(1e-15));
  CHECK(el.truncation_bound == 0.0);
}

TEST_CASE("lossy dark-count POVM entries: hand-computed goldens") {
  // eta = 0.7, nu = 1e-4, declared count 1.
  const double eta = 0.7, nu = 1e-4;
  const PovmElement el = povm_element({eta, nu, 3}, 1, 4);
  const double e = std::exp(-nu);
  CHECK(el.diagonal[0] == doctest::Approx(e * nu).epsilon(1e-13));                                   // dark count only
  CHECK(el.diagonal[1] == doctest::Approx(e * (nu * 0.3 + 0.7)).epsilon(1e-13));                     // miss + dark, or hit
  CHECK(el.diagonal[2] == doctest::Approx(e * (nu * 0.09 + 2 * 0.7 * 0.3)).epsilon(1e-13));          // double miss + dark, or one hit
  CHECK(el.truncation_bound == doctest::Approx(std::pow(0.3, 3)).epsilon(1e-12));
}

TEST_CASE("POVM diagonals resolve the identity") {
  for (double eta : {0.3, 0.7, 1.0}) {
    for (double nu : {0.0, 1e-4, 1e-2}) {
      const int dim = 25;
      std::vector<double> column_sum(dim, 0.0);
      for (int declared = 0; declared < dim + 20; ++declared) {
        const PovmElement el = povm_element({eta, nu, 4}, declared, dim);
        for (int m = 0; m < dim; ++m) column_sum[static_cast<size_t>(m)] += el.diagonal[static_cast<size_t>(m)];
      }
      for (int m = 0; m < dim; ++m) CHECK(std::abs(column_sum[static_cast<size_t>(m)] - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("conditioning a single-term state is hand-checkable") {
  // |0,1,0> with a 50%-efficient herald detector: the click fires with
  // probability eta/2... no pump, so exactly eta * 1. Output is vacuum on a.
  MultimodeState st;
  st.cutoffs = {2, 2, 2};
  st.add({0, 1, 0}, cplx(1, 0));
  const ConditionedState cond = conditioned_density(st, herald_beamsplitter_ports(1), {0.5, 0.0, 1});
  CHECK(cond.probability == doctest::Approx(0.5).epsilon(1e-14));
  REQUIRE(cond.rho.dim == 2);
  CHECK(std::abs(cond.rho.at(0, 0) - cplx(1, 0)) < 1e-14);
  CHECK(std::abs(cond.rho.at(1, 1)) < 1e-14);
}

TEST_CASE("perfect detectors reproduce the projective herald") {
  const FockVector in = coherent_coefficients(cplx(1, 0), 30).normalize();
  const DeviceParams p{0.5, kPi / 2, kPi / 4};
  const MultimodeState full = output_state_closed_form(in, p, default_cutoffs(in, p));
  for (int n : {1, 2}) {
    const HeraldPattern pattern = herald_beamsplitter_ports(n);
    const ConditionedState cond = conditioned_density(full, pattern, {1.0, 0.0, n});
    const HeraldedState projected = project_herald(full, pattern);
    CHECK(std::abs(cond.probability - projected.probability * full.norm2()) < 1e-12);
    const DensityMatrix pure = pure_density(padded(projected.state, cond.rho.dim));
    double worst = 0.0;
    for (size_t k = 0; k < pure.m.size(); ++k) worst = std::max(worst, std::abs(pure.m[k] - cond.rho.m[k]));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("imperfect-detector fidelity stays physical and reaches the ideal limit") {
  const FockVector in = coherent_coefficients(cplx(1, 0), 30).normalize();
  const DeviceParams p{0.5, kPi / 2, kPi / 4};
  const MultimodeState full = output_state_closed_form(in, p, default_cutoffs(in, p));
  const HeraldPattern pattern = herald_beamsplitter_ports(1);
  const HeraldedState ideal = truncate_max(in, p, 1);

  const ConditionedState perfect = conditioned_density(full, pattern, {1.0, 0.0, 1});
  CHECK(std::abs(fidelity(perfect.rho, padded(ideal.state, perfect.rho.dim)) - 1.0) < 1e-10);

  const ConditionedState noisy = conditioned_density(full, pattern, {0.7, 1e-4, 1});
  const double f = fidelity(noisy.rho, padded(ideal.state, noisy.rho.dim));
  CHECK(f > 0.0);
  CHECK(f <= 1.0);
  CHECK(f < 1.0 - 1e-6);  // losses must actually bite
  CHECK(noisy.probability > 0.0);
  CHECK(is_positive_semidefinite(noisy.rho));
  CHECK(noisy.rho.hermiticity_defect() < 1e-12);
  CHECK(noisy.rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fidelity on a hand-built mixed state") {
  DensityMatrix rho(2);
  rho.at(0, 0) = 0.25;
  rho.at(1, 1) = 0.75;
  FockVector plus(2);
  plus.amp = {cplx(1 / std::sqrt(2.0), 0), cplx(1 / std::sqrt(2.0), 0)};
  CHECK(fidelity(rho, plus) == doctest::Approx(0.5).epsilon(1e-14));
  FockVector three(3);
  three.amp = {cplx(1, 0), cplx(0, 0), cplx(0, 0)};
  CHECK_THROWS_AS(fidelity(rho, three), DimensionMismatch);
}

TEST_CASE("detector model validation and resolution limits") {
  CHECK_THROWS_AS((DetectorModel{1.2, 0.0, 1}.validate()), Error);
  CHECK_THROWS_AS((DetectorModel{0.5, -1.0, 1}.validate()), Error);
  MultimodeState st;
  st.cutoffs = {2, 2, 2};
  st.add({0, 1, 0}, cplx(1, 0));
  CHECK_THROWS_AS(conditioned_density(st, herald_beamsplitter_ports(2), {0.9, 0.0, 1}), Error);
}

TEST_CASE("dark counts let an impossible herald fire at tiny probability") {
  // Vacuum everywhere: a declared count of 1 can only come from dark counts.
  MultimodeState st;
  st.cutoffs = {2, 2, 2};
  st.add({0, 0, 0}, cplx(1, 0));
  const ConditionedState cond = conditioned_density(st, herald_beamsplitter_ports(1), {0.7, 1e-3, 1});
  // P = (e^{-nu} nu) * e^{-nu} for the two detectors.
  CHECK(cond.probability == doctest::Approx(std::exp(-2e-3) * 1e-3).epsilon(1e-10));
  CHECK(std::abs(cond.rho.at(0, 0) - cplx(1, 0)) < 1e-13);
}
