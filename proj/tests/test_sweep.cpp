#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "scissors/sweep.hpp"

using namespace scissors;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string run_to_string(const SweepSpec& spec, int workers = 0) {
  std::ostringstream out;
  run_sweep(spec, out, workers);
  return out.str();
}

}  // namespace

TEST_CASE("spec validation rejects malformed sweeps") {
  SweepSpec spec;
  CHECK_THROWS_AS(spec.validate(), Error);  // no axes
  spec.axes = {{SweepParam::s, 0.0, 1.0, 1}};
  CHECK_THROWS_AS(spec.validate(), Error);  // count < 2
  spec.axes = {{SweepParam::s, 1.0, 0.0, 5}};
  CHECK_THROWS_AS(spec.validate(), Error);  // start >= stop
  spec.axes = {{SweepParam::s, -0.5, 1.0, 5}};
  CHECK_THROWS_AS(spec.validate(), Error);  // negative pump strength
  spec.axes = {{SweepParam::eta, 0.0, 1.5, 5}};
  CHECK_THROWS_AS(spec.validate(), Error);  // efficiency above 1
  spec.axes = {{SweepParam::s, 0.0, 1.0, 5}, {SweepParam::s, 0.0, 1.0, 5}};
  CHECK_THROWS_AS(spec.validate(), Error);  // duplicate axis
  spec.axes = {{SweepParam::s, 0.0, 1.0, 5}};
  spec.detected_counts.clear();
  CHECK_THROWS_AS(spec.validate(), Error);  // no counts
  spec.detected_counts = {1};
  CHECK_NOTHROW(spec.validate());
  spec.fixed.eta = 1.5;
  CHECK_THROWS_AS(spec.validate(), Error);  // fixed value out of range
}

TEST_CASE("all thirteen figure presets exist and validate") {
  const auto names = sweep_preset_names();
  REQUIRE(names.size() == 13);
  for (const auto& name : names) CHECK_NOTHROW(sweep_preset(name).validate());
  CHECK_THROWS_AS(sweep_preset("fig99"), Error);

  const SweepSpec fig2 = sweep_preset("fig2");
  CHECK(fig2.axes.size() == 1);
  CHECK(fig2.axes[0].param == SweepParam::s);
  CHECK(fig2.axes[0].count == 101);
  CHECK(fig2.mode == SweepMode::metrics);
  CHECK(fig2.detected_counts == std::vector<int>{1, 2, 3});

  const SweepSpec fig12 = sweep_preset("fig12");
  CHECK(fig12.axes.size() == 2);
  CHECK(fig12.mode == SweepMode::probability);
  CHECK(fig12.detected_counts == std::vector<int>{3});

  const SweepSpec fig13 = sweep_preset("fig13");
  CHECK(fig13.mode == SweepMode::fidelity);
  CHECK(fig13.fixed.eta == 0.7);
  CHECK(fig13.fixed.nu == 1e-4);
}

TEST_CASE("output is byte-identical across worker counts and repeats") {
  SweepSpec spec;
  spec.axes = {{SweepParam::s, 0.0, 0.6, 4}};
  spec.detected_counts = {1, 2};
  const std::string one = run_to_string(spec, 1);
  const std::string four = run_to_string(spec, 4);
  const std::string again = run_to_string(spec, 4);
  CHECK(one == four);
  CHECK(four == again);
}

TEST_CASE("metrics rows carry the expected header and negative Q regime") {
  SweepSpec spec;
  spec.axes = {{SweepParam::s, 0.1, 1.0, 4}};
  spec.detected_counts = {1, 2, 3};
  const auto lines = split(run_to_string(spec), '\n');
  REQUIRE(lines.size() == 1 + 4 * 3);
  CHECK(lines[0] == "s,N,probability,mean_n,mandel_q,var_x,skew_w");
  for (size_t r = 1; r < lines.size(); ++r) {
    const auto cells = split(lines[r], ',');
    REQUIRE(cells.size() == 7);
    CHECK(std::stod(cells[4]) < 0.0);       // sub-Poissonian throughout this regime
    CHECK(std::stod(cells[2]) > 0.0);       // herald fires
    CHECK(std::stod(cells[6]) >= 0.5 - 1e-12);
  }
}

TEST_CASE("idle pump point leaves the undefined cell empty") {
  SweepSpec spec;
  spec.axes = {{SweepParam::s, 0.0, 1.0, 2}};
  spec.detected_counts = {1};
  const auto lines = split(run_to_string(spec), '\n');
  REQUIRE(lines.size() == 3);
  // Split keeps empty cells, so count fields explicitly.
  const std::string& zero_row = lines[1];
  auto cells = split(zero_row + "#", ',');  // sentinel keeps a trailing empty cell visible
  cells.back().pop_back();
  REQUIRE(cells.size() == 7);
  CHECK(std::stod(cells[0]) == 0.0);
  CHECK(cells[4].empty());                  // vacuum output: no Q
  CHECK(std::stod(cells[3]) == 0.0);        // mean photon number 0
  CHECK(std::stod(cells[5]) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("axis cells round-trip through 17 significant digits") {
  SweepSpec spec;
  spec.axes = {{SweepParam::theta, 0.0, 1.0, 3}};
  spec.detected_counts = {1};
  const auto lines = split(run_to_string(spec), '\n');
  const auto row = split(lines[2], ',');
  const double mid = 0.0 + (1.0 - 0.0) * 1.0 / 2.0;
  CHECK(std::stod(row[0]) == mid);  // exact, not approximate
}

TEST_CASE("probability mode emits a single quantity column") {
  SweepSpec spec;
  spec.axes = {{SweepParam::alpha_mod, 0.0, 2.0, 3}, {SweepParam::s, 0.0, 1.0, 3}};
  spec.mode = SweepMode::probability;
  spec.detected_counts = {1};
  const auto lines = split(run_to_string(spec), '\n');
  REQUIRE(lines.size() == 1 + 9);
  CHECK(lines[0] == "alpha_mod,s,N,probability");
  // Row-major: the second axis varies faster.
  const auto first = split(lines[1], ',');
  const auto second = split(lines[2], ',');
  CHECK(first[0] == second[0]);
  CHECK(first[1] != second[1]);
  // alpha = 0, s = 0: no photon can reach the herald detector.
  CHECK(std::stod(first[3]) == 0.0);
}

TEST_CASE("fidelity mode reports herald probability and overlap") {
  SweepSpec spec;
  spec.axes = {{SweepParam::s, 0.2, 0.6, 2}};
  spec.mode = SweepMode::fidelity;
  spec.detected_counts = {1};
  SUBCASE("ideal detectors") {
    const auto lines = split(run_to_string(spec), '\n');
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "s,N,probability,fidelity");
    for (int r : {1, 2}) {
      const auto cells = split(lines[static_cast<size_t>(r)], ',');
      REQUIRE(cells.size() == 4);
      CHECK(std::stod(cells[3]) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  SUBCASE("noisy detectors") {
    spec.fixed.eta = 0.7;
    spec.fixed.nu = 1e-4;
    const auto lines = split(run_to_string(spec), '\n');
    for (int r : {1, 2}) {
      const auto cells = split(lines[static_cast<size_t>(r)], ',');
      const double f = std::stod(cells[3]);
      CHECK(f > 0.5);
      CHECK(f < 1.0);
    }
  }
}

TEST_CASE("state mode pads amplitude columns to a fixed width") {
  SweepSpec spec;
  spec.axes = {{SweepParam::s, 0.1, 0.9, 2}};
  spec.mode = SweepMode::state;
  spec.detected_counts = {1, 2};
  const auto lines = split(run_to_string(spec), '\n');
  CHECK(lines[0] == "s,N,probability,re_0,im_0,re_1,im_1,re_2,im_2");
  // N = 1 rows leave the |2> columns empty.
  const auto cells = split(lines[1] + "#", ',');
  REQUIRE(cells.size() == 9);
  CHECK(cells[7].empty());
}
