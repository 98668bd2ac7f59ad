#pragma once

#include <functional>
#include <memory>
#include <utility>

#include "terabridge/materials.hpp"
#include "terabridge/rates.hpp"

namespace terabridge {

struct ThermalSolution {
  double delta_T = 0.0;  ///< K; the bracket cap when runaway
  double T_base = 0.0;   ///< K
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;  ///< |delta_T - RHS(delta_T)|, K
  bool runaway = false;
  bool multi_root = false;
  std::pair<double, double> bracket{0.0, 0.0};  ///< search interval for delta_T

  double temperature() const { return T_base + delta_T; }
};

/// Heat load and sink of one pumped medium.
struct HeatingInputs {
  double pump_photons = 0.0;
  double omega_pump = 0.0;      ///< rad/s
  double kappa_pump_abs = 0.0;  ///< s^-1
  ThermalMaterialParams medium;
  double T_eval = 0.0;  ///< K, where g_th and c_th are evaluated
  double L = 0.0;       ///< m
  double C_th = 0.0;    ///< J/K
  double tau_th = 0.0;  ///< s

  /// C_th = density c_th w^2 L, G_th = g_th L, tau_th = C_th / G_th.
  static HeatingInputs from_geometry(double pump_photons, double omega_pump, double kappa_pump_abs,
                                     const ThermalMaterialParams& medium, const Geometry& geom,
                                     double T_eval);
};

/// pump_photons hbar omega_pump kappa_pump_abs / (g_th(T_eval) L)
double steady_state_dT(const HeatingInputs& h);

/// Exponential approach to the steady state with time constant tau_th:
/// steady_state_dT(h) (1 - exp(-t / tau_th)). Infinite t gives the steady state.
double transient_heating(const HeatingInputs& h, double t_elapsed);

/// Temperature-dependent laws of one pumped conversion stage. The pump
/// photon law already folds in the unit-cooperativity constraint.
struct HeatingStage {
  std::function<double(double)> pump_photons;     ///< T -> photons
  std::function<double(double)> absorption_rate;  ///< T -> s^-1
  std::function<double(double)> conductivity;     ///< T -> W m^-1 K^-1
  double omega_pump = 0.0;
  double L = 0.0;
  double T_base = 0.0;
  double T_max = 0.0;  ///< upper end of the search bracket (0.9 Tc)

  /// Temperature rise implied by the laws at T_base + dT.
  double rhs(double dT) const;
};

struct SolverOptions {
  double tolerance = 1e-6;  ///< K, on |f| for convergence
  int max_iterations = 200;
  int scan_points = 1000;  ///< coarse scan used for bracketing and multi-root detection
};

/// Smallest root of f(dT) = dT - rhs(dT) on [0, T_max - T_base].
///
/// A coarse scan locates the first sign change, bisection refines it to
/// full double precision (or max_iterations). No sign change means runaway:
/// delta_T is set to the bracket cap and converged is false. A second sign
/// change on the scan sets multi_root. Law failures throw SolverError with
/// the failing temperature.
ThermalSolution solve_self_consistent_dT(const HeatingStage& stage, const SolverOptions& opts = {});

// ---------------------------------------------------------------------------
// Stage descriptors for the two conversion steps

/// Electro-optic stage: low mode (omega_mu single-step, omega_i two-step)
/// mixed with the optical pump into the optical sideband.
struct EoStageParams {
  FrequencyPlan freqs;
  Geometry geom;
  OpticalMaterialParams optical;
  SuperconductorParams superconductor;
  ThermalMaterialParams medium;
  double xi = 1.0;
  double T_base = 0.0;
  /// Adds alpha(omega_i) c to the intermediate-mode internal loss.
  bool intermediate_dielectric_loss = false;
};

/// Kinetic-inductance stage: microwave mode pumped at omega_pi into the
/// intermediate mode.
struct KiStageParams {
  FrequencyPlan freqs;
  Geometry geom;
  SuperconductorParams superconductor;
  ThermalMaterialParams medium;
  double T_base = 0.0;
};

inline constexpr double kBracketFractionOfTc = 0.9;

LossBudget eo_low_loss(const EoStageParams& p, double T);
LossBudget eo_optical_loss(const EoStageParams& p);
double eo_coupling(const EoStageParams& p);

LossBudget ki_microwave_loss(const KiStageParams& p, double T);
LossBudget ki_intermediate_loss(const KiStageParams& p, double T);
/// omega_pi sigma1/sigma2 at omega_pi: pump absorption in the film.
double ki_pump_absorption(const KiStageParams& p, double T);
double ki_coupling(const KiStageParams& p);

HeatingStage make_eo_stage(const EoStageParams& p);
HeatingStage make_ki_stage(const KiStageParams& p);

/// Open-loop temperature rise with every law evaluated at T_base.
double dT_scaling_eo(const EoStageParams& p);
double dT_scaling_ki(const KiStageParams& p);

/// The same open-loop rises written in volume-scaling form,
///   EO: 2 eps0 eps_low eps_po eps_o alpha c / (g_th chi2^2 xi^2 omega_o)
///       * (V/L) [s1/s2 + w^2/L^2] kappa_o
///   KI: (16/3) N0 gap^2 omega_pi / g_th * (V_ki/L) * s1p/s2p
///       * sqrt([s1i/s2i + w^2/L^2][s1mu/s2mu + w^2/L^2])
/// with V = w^2 L (EO) and V_ki = w t L (KI). Independent algebraic route
/// used to cross-check the composed stage laws.
double dT_scaling_eo_closed_form(const EoStageParams& p);
double dT_scaling_ki_closed_form(const KiStageParams& p);

}  // namespace terabridge
