#include <cmath>
#include <random>

#include "doctest.h"
#include "scissors/metrics.hpp"

using namespace scissors;

namespace {

FockVector random_state(int dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  FockVector v(dim);
  for (auto& a : v.amp) a = cplx(g(rng), g(rng));
  return v.normalize();
}

}  // namespace

TEST_CASE("golden values on number states") {
  for (int n : {1, 2, 3}) {
    const FockVector st = fock_basis_state(n, 10);
    CHECK(mandel_q(st) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(skew_information(st) == doctest::Approx(0.5 + n).epsilon(1e-12));
  }
  CHECK(quadrature_variance(fock_basis_state(1, 10)) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(quadrature_variance(fock_basis_state(0, 10)) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("golden values on coherent states") {
  for (double amod : {0.7, 1.0, 1.8}) {
    const FockVector st = coherent_coefficients(cplx(amod, 0), coherent_dim(amod)).normalize();
    CHECK(std::abs(mandel_q(st)) < 1e-10);
    CHECK(std::abs(quadrature_variance(st) - 0.25) < 1e-10);
    CHECK(std::abs(skew_information(st) - 0.5) < 1e-10);
  }
}

TEST_CASE("golden value on an equal 0/1 superposition") {
  FockVector st(2);
  st.amp = {cplx(1 / std::sqrt(2.0), 0), cplx(1 / std::sqrt(2.0), 0)};
  // <n> = 1/2, <n^2> = 1/2: Q = (1/2 - 1/4)/(1/2) - 1 = -1/2.
  CHECK(mandel_q(st) == doctest::Approx(-0.5).epsilon(1e-13));
  // <a> = 1/2, so W = 1/2 + 1/2 - 1/4 = 3/4.
  CHECK(skew_information(st) == doctest::Approx(0.75).epsilon(1e-13));
}

TEST_CASE("vacuum leaves the sub-Poissonian measure undefined") {
  const FockVector vac = fock_basis_state(0, 5);
  CHECK_THROWS_AS(mandel_q(vac), UndefinedMetric);
  const MetricReport r = metric_report(vac);
  CHECK(!r.mandel_q.has_value());
  CHECK(r.mean_n == 0.0);
  CHECK(r.var_x == doctest::Approx(0.25).epsilon(1e-14));
  REQUIRE(r.skew_w.has_value());
  CHECK(*r.skew_w == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("pure-state and density-matrix paths agree") {
  for (unsigned seed : {2u, 11u, 42u}) {
    const FockVector v = random_state(8, seed);
    const DensityMatrix rho = pure_density(v);
    CHECK(mandel_q(v) == doctest::Approx(mandel_q(rho)).epsilon(1e-11));
    CHECK(quadrature_variance(v) == doctest::Approx(quadrature_variance(rho)).epsilon(1e-11));
    const MetricReport rv = metric_report(v);
    const MetricReport rr = metric_report(rho);
    CHECK(rv.mean_n == doctest::Approx(rr.mean_n).epsilon(1e-12));
    CHECK(rv.skew_w.has_value());
    CHECK(!rr.skew_w.has_value());  // pure-state-only quantity
  }
}

TEST_CASE("metric bounds hold on random states") {
  for (unsigned seed = 0; seed < 20; ++seed) {
    const FockVector v = random_state(10, seed);
    CHECK(mandel_q(v) >= -1.0 - 1e-12);
    CHECK(skew_information(v) >= 0.5 - 1e-10);
    CHECK(quadrature_variance(v) > 0.0);
  }
}

TEST_CASE("mixed states report well-defined statistics") {
  DensityMatrix rho(3);
  rho.at(0, 0) = 0.5;
  rho.at(2, 2) = 0.5;
  // <n> = 1, <n^2> = 2: Q = (2 - 1)/1 - 1 = 0 for this mixture.
  CHECK(mandel_q(rho) == doctest::Approx(0.0).epsilon(1e-13));
  const MetricReport r = metric_report(rho);
  CHECK(r.mean_n == doctest::Approx(1.0).epsilon(1e-13));
}
