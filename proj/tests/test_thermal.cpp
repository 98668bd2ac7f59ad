#include <cmath>

#include "doctest.h"
#include "terabridge/constants.hpp"
#include "terabridge/errors.hpp"
#include "terabridge/material_db.hpp"
#include "terabridge/thermal.hpp"
#include "terabridge/transducer.hpp"

using namespace terabridge;
using doctest::Approx;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

HeatingStage synthetic(std::function<double(double)> rhs_of_T, double T_base, double T_max) {
  // rhs = photons * hbar w * kappa / (g L) with every factor but photons fixed at 1.
  HeatingStage s;
  s.omega_pump = 1.0 / PhysicalConstants::hbar;
  s.L = 1.0;
  s.absorption_rate = [](double) { return 1.0; };
  s.conductivity = [](double) { return 1.0; };
  s.pump_photons = std::move(rhs_of_T);
  s.T_base = T_base;
  s.T_max = T_max;
  return s;
}

double brute_force_smallest_root(const HeatingStage& s, int n) {
  const double cap = s.T_max - s.T_base;
  const double h = cap / n;
  double prev = 0.0 - s.rhs(0.0);
  for (int k = 1; k <= n; ++k) {
    const double dT = k * h;
    const double f = dT - s.rhs(dT);
    if ((prev <= 0.0) != (f <= 0.0)) return dT;
    prev = f;
  }
  return -1.0;
}

EoStageParams eo_params(double w, double L, double f_i, double T) {
  const auto reg = MaterialRegistry::builtin();
  ModelOptions opts;
  return eo_stage_params(Geometry{w, L, 20e-9},
                         FrequencyPlan::two_step(angular(8e9), angular(f_i), angular(200e12)), T,
                         reg, opts);
}

KiStageParams ki_params_at(double w, double L, double f_i, double T) {
  const auto reg = MaterialRegistry::builtin();
  ModelOptions opts;
  return ki_stage_params(Geometry{w, L, 20e-9},
                         FrequencyPlan::two_step(angular(8e9), angular(f_i), angular(200e12)), T,
                         reg, opts);
}

}  // namespace

TEST_CASE("steady-state heating golden value") {
  HeatingInputs h;
  h.pump_photons = 1e6;
  h.omega_pump = angular(200e12);
  h.kappa_pump_abs = 2.52e10;
  h.medium = MaterialRegistry::builtin().thermal(kLithiumNiobate);
  h.T_eval = 0.01;
  h.L = 3e-4;
  CHECK(rel(steady_state_dT(h), 2782949.4612948335) < 1e-10);
}

TEST_CASE("transient heating approaches the steady state") {
  auto h = HeatingInputs::from_geometry(1e3, angular(200e12), 1e9,
                                        MaterialRegistry::builtin().thermal(kLithiumNiobate),
                                        Geometry{1e-6, 3e-4, 2e-8}, 1.0);
  const double ss = steady_state_dT(h);
  CHECK(transient_heating(h, 0.0) == 0.0);
  CHECK(transient_heating(h, INFINITY) == Approx(ss).epsilon(1e-15));
  CHECK(transient_heating(h, h.tau_th) == Approx(ss * (1.0 - std::exp(-1.0))).epsilon(1e-14));
  CHECK(h.tau_th == Approx(h.C_th / (thermal_conductivity(h.medium, 1.0) * h.L)).epsilon(1e-14));
}

TEST_CASE("solver: linear heating has a closed-form root") {
  auto s = synthetic([](double T) { return 0.2 + 0.5 * (T - 1.0); }, 1.0, 10.0);
  auto sol = solve_self_consistent_dT(s);
  CHECK(sol.converged);
  CHECK(!sol.runaway);
  CHECK(sol.delta_T == Approx(0.4).epsilon(1e-12));
  CHECK(sol.residual <= 1e-6);
  CHECK(sol.temperature() == Approx(1.4).epsilon(1e-12));
}

TEST_CASE("solver: zero heating") {
  auto s = synthetic([](double) { return 0.0; }, 0.5, 5.0);
  auto sol = solve_self_consistent_dT(s);
  CHECK(sol.converged);
  CHECK(sol.delta_T == 0.0);
}

TEST_CASE("solver: runaway") {
  auto s = synthetic([](double T) { return 2.0 * T; }, 1.0, 10.0);
  auto sol = solve_self_consistent_dT(s);
  CHECK(sol.runaway);
  CHECK(!sol.converged);
  CHECK(sol.delta_T == 9.0);
}

TEST_CASE("solver: two roots picks the smallest and flags") {
  // f = dT - rhs = -0.1 (T - 1)(T - 3) changes sign at 1 and 3.
  auto s = synthetic([](double T) { const double d = T; return d + (d - 1.0) * (d - 3.0) * 0.1; }, 1e-9, 10.0);
  auto sol = solve_self_consistent_dT(s);
  CHECK(sol.converged);
  CHECK(sol.multi_root);
  CHECK(sol.delta_T == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("solver: law failure names the temperature") {
  auto s = synthetic(
      [](double T) {
        if (T > 2.0) throw DomainError("law undefined");
        return 5.0;
      },
      1.0, 10.0);
  try {
    solve_self_consistent_dT(s);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(e.temperature() > 2.0);
  }
}

TEST_CASE("solver matches a fine brute-force scan on physical stages") {
  struct Case {
    double w, L, f_i, T;
  };
  const Case cases[] = {{1e-6, 3e-3, 600e9, 0.01}, {2e-6, 5e-3, 300e9, 0.5}, {1e-6, 1e-3, 900e9, 1.0}};
  for (const Case& c : cases) {
    CAPTURE(c.L);
    auto stage = make_eo_stage(eo_params(c.w, c.L, c.f_i, c.T));
    auto sol = solve_self_consistent_dT(stage);
    const int n = 200000;
    const double step = (stage.T_max - stage.T_base) / n;
    const double bf = brute_force_smallest_root(stage, n);
    if (sol.runaway) {
      CHECK(bf < 0.0);
      continue;
    }
    CHECK(sol.residual <= 1e-6);
    CHECK(std::abs(sol.delta_T - bf) <= 2.0 * step);
  }
}

TEST_CASE("open-loop heating: composed laws against the volume-scaling form") {
  for (double L : {1e-4, 3e-4, 3e-3}) {
    for (double f_i : {100e9, 600e9}) {
      for (double T : {0.01, 1.0}) {
        CAPTURE(L);
        CAPTURE(f_i);
        CAPTURE(T);
        auto eo = eo_params(1e-6, L, f_i, T);
        CHECK(rel(dT_scaling_eo(eo), dT_scaling_eo_closed_form(eo)) < 1e-10);
        auto ki = ki_params_at(1e-6, L, f_i, T);
        CHECK(rel(dT_scaling_ki(ki), dT_scaling_ki_closed_form(ki)) < 1e-10);
      }
    }
  }
}

TEST_CASE("stage bracket tops out at 0.9 Tc") {
  auto stage = make_eo_stage(eo_params(1e-6, 3e-4, 600e9, 0.01));
  CHECK(stage.T_max == Approx(kBracketFractionOfTc * 13.0).epsilon(1e-15));
  auto sol = solve_self_consistent_dT(stage);
  CHECK(sol.bracket.second == Approx(stage.T_max - 0.01).epsilon(1e-15));
}

TEST_CASE("KI stage heating stays small at the red dot") {
  auto stage = make_ki_stage(ki_params_at(1e-6, 3e-4, 600e9, 0.01));
  auto sol = solve_self_consistent_dT(stage);
  CHECK(sol.converged);
  CHECK(sol.delta_T < 1e-6);
}
