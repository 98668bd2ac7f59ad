#include <cfloat>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "terabridge/constants.hpp"
#include "terabridge/errors.hpp"
#include "terabridge/transducer.hpp"

using namespace terabridge;
using doctest::Approx;

namespace {

const MaterialRegistry& registry() {
  static const MaterialRegistry reg = MaterialRegistry::builtin();
  return reg;
}

FrequencyPlan plan_two(double f_i = 600e9) {
  return FrequencyPlan::two_step(angular(8e9), angular(f_i), angular(200e12));
}

FrequencyPlan plan_one() { return FrequencyPlan::single_step(angular(8e9), angular(200e12)); }

}  // namespace

TEST_CASE("external efficiency") {
  auto lossless = LossBudget::make(0.0, 5.0);
  auto half = LossBudget::make(1.0, 1.0);
  auto dead = LossBudget::make(1.0, 0.0);
  CHECK(external_efficiency(lossless, lossless) == 1.0);
  CHECK(external_efficiency(half, half) == 0.25);
  CHECK(external_efficiency(dead, lossless) == 0.0);
  CHECK_THROWS_AS(external_efficiency(LossBudget::make(0.0, 0.0), half), DomainError);
}

TEST_CASE("efficiency never rises with internal loss") {
  auto out = LossBudget::make(2.0, 7.0);
  double prev = 1.0;
  for (double ki = 0.0; ki < 100.0; ki = ki * 2.0 + 0.1) {
    const double eta = external_efficiency(LossBudget::make(ki, 3.0), out);
    CHECK(eta <= prev);
    prev = eta;
  }
}

TEST_CASE("occupancy composition") {
  const double n1[] = {3e-4};
  const double e1[] = {0.5};
  CHECK(occupancy_composition(n1, e1).n_total == 3e-4);

  const double n2[] = {1e-9, 1e-8};
  const double e2[] = {0.93, 0.8};
  CHECK(occupancy_composition(n2, e2).n_total == Approx(1.1752688172043011e-8).epsilon(1e-15));

  const double e_unit[] = {1.0, 0.3};
  CHECK(occupancy_composition(n2, e_unit).n_total == Approx(1.1e-8).epsilon(1e-15));

  const double e_zero[] = {0.0, 0.5};
  auto sat = occupancy_composition(n2, e_zero);
  CHECK(sat.saturated);
  CHECK(sat.n_total == DBL_MAX);

  const double n_quiet[] = {1e-9, 0.0};
  CHECK(!occupancy_composition(n_quiet, e_zero).saturated);
}

TEST_CASE("mode occupancy branches") {
  const double w = angular(8e9);
  auto mode = LossBudget::make(1.0, 3.0);
  const double hot = bose_einstein(w, 2.0), cold = bose_einstein(w, 0.01);
  CHECK(mode_occupancy(w, 2.0, 0.01, mode, OccupancyBranch::physical) ==
        Approx(0.25 * hot + 0.75 * cold).epsilon(1e-14));
  CHECK(mode_occupancy(w, 2.0, 0.01, mode, OccupancyBranch::as_printed) ==
        Approx(0.75 * hot + 0.25 * cold).epsilon(1e-14));
  CHECK(mode_occupancy(w, 0.0, 0.0, mode, OccupancyBranch::physical) == 0.0);
}

TEST_CASE("occupancy is non-decreasing in both bath temperatures") {
  const double w = angular(8e9);
  auto mode = LossBudget::make(1.0, 3.0);
  for (auto branch : {OccupancyBranch::physical, OccupancyBranch::as_printed}) {
    double prev = 0.0;
    for (double T = 0.01; T < 5.0; T *= 1.4) {
      const double n = mode_occupancy(w, T, 0.01, mode, branch);
      CHECK(n >= prev);
      prev = n;
    }
    prev = 0.0;
    for (double T = 0.01; T < 0.5; T *= 1.4) {
      const double n = mode_occupancy(w, 0.5, T, mode, branch);
      CHECK(n >= prev);
      prev = n;
    }
  }
}

TEST_CASE("flag serialization") {
  Flags f;
  CHECK(f.to_string() == "none");
  f.set(Flag::cutoff);
  f.set(Flag::runaway);
  CHECK(f.to_string() == "runaway|cutoff");
  CHECK(Flags::parse(f.to_string()).bits() == f.bits());
  CHECK(Flags::parse("none").empty());
}

TEST_CASE("scheme and branch names") {
  CHECK(parse_scheme("single") == Scheme::single_step);
  CHECK(parse_scheme("two_step") == Scheme::two_step);
  CHECK(parse_branch("as_printed") == OccupancyBranch::as_printed);
  CHECK_THROWS(parse_branch("both"));
}

TEST_CASE("overlap table") {
  OverlapTable t{{{angular(10e9), 0.01}, {angular(1e12), 0.25}}};
  CHECK(t.at(angular(1e9)) == 0.01);
  CHECK(t.at(angular(1e13)) == 0.25);
  CHECK(t.at(angular(100e9)) == Approx(0.13).epsilon(1e-12));
}

TEST_CASE("single-step point structure") {
  ModelOptions opts;
  auto pt = single_step_point(Geometry{1e-6, 3e-4, 2e-8}, plan_one(), 0.01, registry(), opts);
  REQUIRE(pt.stages.size() == 1);
  CHECK(pt.stages[0].name == "eo");
  CHECK(pt.eta_total == pt.stages[0].eta_ext);
  CHECK(pt.n_total == pt.stages[0].n_added);
  CHECK(pt.eta_total >= 0.0);
  CHECK(pt.eta_total <= 1.0);
  CHECK(pt.n_total >= 0.0);
  CHECK(std::isfinite(pt.n_total));
}

TEST_CASE("two-step point composes its stages") {
  ModelOptions opts;
  for (double L : {3e-4, 3e-3}) {
    Geometry g{1e-6, L, 2e-8};
    auto pt = two_step_point(g, g, plan_two(), 0.01, 0.01, registry(), opts);
    REQUIRE(pt.stages.size() == 2);
    const auto* ki = pt.stage("ki");
    const auto* eo = pt.stage("eo");
    REQUIRE(ki);
    REQUIRE(eo);
    CHECK(pt.eta_total == Approx(ki->eta_ext * eo->eta_ext).epsilon(1e-15));
    CHECK(pt.n_total >= ki->n_added);
    CHECK(pt.n_total >= eo->n_added / ki->eta_ext * (1.0 - 1e-15));
    CHECK(ki->omega_low == angular(8e9));
    CHECK(eo->omega_low == angular(600e9));
    CHECK(pt.runaway() == eo->thermal.runaway);
  }
}

TEST_CASE("branch alternatives are reported together") {
  ModelOptions phys, printed;
  printed.branch = OccupancyBranch::as_printed;
  Geometry g{1e-6, 3e-3, 2e-8};
  auto a = two_step_point(g, g, plan_two(), 0.01, 0.01, registry(), phys);
  auto b = two_step_point(g, g, plan_two(), 0.01, 0.01, registry(), printed);
  CHECK(a.n_total == b.n_total_alt);
  CHECK(a.n_total_alt == b.n_total);
  CHECK(a.eta_total == b.eta_total);
}

TEST_CASE("occupancy rises with base temperature") {
  ModelOptions opts;
  Geometry g{1e-6, 3e-3, 2e-8};
  double prev = 0.0;
  for (double T : {0.01, 0.05, 0.2, 0.5, 1.0}) {
    auto pt = two_step_point(g, g, plan_two(), T, T, registry(), opts);
    CHECK(pt.n_total >= prev);
    prev = pt.n_total;
  }
}

TEST_CASE("diagnostic flags") {
  ModelOptions opts;
  auto narrow = single_step_point(Geometry{0.5e-6, 1e-3, 2e-8}, plan_one(), 0.01, registry(), opts);
  CHECK(narrow.flags.has(Flag::cutoff));
  auto stubby = single_step_point(Geometry{5e-6, 20e-6, 2e-8}, plan_one(), 0.01, registry(), opts);
  CHECK(stubby.flags.has(Flag::short_device));
  opts.xi = 0.5;
  auto weak = single_step_point(Geometry{1e-6, 1e-3, 2e-8}, plan_one(), 0.01, registry(), opts);
  CHECK(weak.flags.has(Flag::overlap_degraded));
}

TEST_CASE("base temperature must lie inside the superconducting range") {
  ModelOptions opts;
  Geometry g{1e-6, 3e-4, 2e-8};
  CHECK_THROWS_AS(single_step_point(g, plan_one(), 0.0, registry(), opts), ConfigError);
  CHECK_THROWS_AS(single_step_point(g, plan_one(), 12.0, registry(), opts), ConfigError);
  CHECK_THROWS(single_step_point(g, plan_two(), 0.01, registry(), opts));
  CHECK_THROWS(two_step_point(g, g, plan_one(), 0.01, 0.01, registry(), opts));
}
