#include "terabridge/thermal.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "terabridge/constants.hpp"
#include "terabridge/errors.hpp"

namespace terabridge {

using K = PhysicalConstants;

HeatingInputs HeatingInputs::from_geometry(double pump_photons, double omega_pump,
                                           double kappa_pump_abs,
                                           const ThermalMaterialParams& medium,
                                           const Geometry& geom, double T_eval) {
  HeatingInputs h;
  h.pump_photons = pump_photons;
  h.omega_pump = omega_pump;
  h.kappa_pump_abs = kappa_pump_abs;
  h.medium = medium;
  h.T_eval = T_eval;
  h.L = geom.L;
  h.C_th = medium.density * heat_capacity(medium, T_eval) * geom.w * geom.w * geom.L;
  h.tau_th = h.C_th / (thermal_conductivity(medium, T_eval) * geom.L);
  return h;
}

double steady_state_dT(const HeatingInputs& h) {
  const double g_th = thermal_conductivity(h.medium, h.T_eval);
  if (!(g_th > 0.0)) throw DomainError("steady_state_dT: thermal conductivity must be positive");
  return h.pump_photons * K::hbar * h.omega_pump * h.kappa_pump_abs / (g_th * h.L);
}

double transient_heating(const HeatingInputs& h, double t_elapsed) {
  if (!(t_elapsed >= 0.0)) throw DomainError("transient_heating: elapsed time must be >= 0");
  if (t_elapsed == 0.0) return 0.0;
  return steady_state_dT(h) * -std::expm1(-t_elapsed / h.tau_th);
}

double HeatingStage::rhs(double dT) const {
  const double T = T_base + dT;
  return pump_photons(T) * K::hbar * omega_pump * absorption_rate(T) / (conductivity(T) * L);
}

ThermalSolution solve_self_consistent_dT(const HeatingStage& stage, const SolverOptions& opts) {
  if (!(stage.T_max > stage.T_base))
    throw DomainError("solve_self_consistent_dT: T_base must lie below the bracket cap");
  const double cap = stage.T_max - stage.T_base;

  auto f = [&](double dT) {
    try {
      return dT - stage.rhs(dT);
    } catch (const std::exception& e) {
      throw SolverError(stage.T_base + dT, std::string("stage law failed at T = ") +
                                               std::to_string(stage.T_base + dT) + " K: " + e.what());
    }
  };

  ThermalSolution sol;
  sol.T_base = stage.T_base;
  sol.bracket = {0.0, cap};

  const double f0 = f(0.0);
  if (f0 >= 0.0) {  // rhs(0) == 0
    sol.converged = true;
    sol.residual = std::abs(f0);
    return sol;
  }

  // Coarse scan: first sign change brackets the smallest root; any further
  // change means a second root.
  const int n = std::max(opts.scan_points, 2);
  double lo = 0.0;
  double f_lo = f0;
  double hi = 0.0;
  double f_hi = 0.0;
  bool found = false;
  bool positive = false;
  int sign_changes = 0;
  double prev_x = 0.0;
  double prev_f = f0;
  for (int k = 1; k <= n; ++k) {
    const double x = k == n ? cap : cap * static_cast<double>(k) / n;
    const double fx = f(x);
    const bool pos = fx >= 0.0;
    if (pos != positive) {
      ++sign_changes;
      positive = pos;
      if (!found) {
        found = true;
        lo = prev_x;
        f_lo = prev_f;
        hi = x;
        f_hi = fx;
      }
    }
    prev_x = x;
    prev_f = fx;
  }
  sol.multi_root = sign_changes >= 2;

  if (!found) {
    sol.runaway = true;
    sol.delta_T = cap;
    sol.residual = std::abs(prev_f);
    return sol;
  }

  int it = 0;
  while (it < opts.max_iterations) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    ++it;
    if (fm < 0.0) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
      f_hi = fm;
    }
  }
  sol.iterations = it;
  if (std::abs(f_lo) <= std::abs(f_hi)) {
    sol.delta_T = lo;
    sol.residual = std::abs(f_lo);
  } else {
    sol.delta_T = hi;
    sol.residual = std::abs(f_hi);
  }
  sol.converged = sol.residual < opts.tolerance;
  return sol;
}

// ---------------------------------------------------------------------------

LossBudget eo_low_loss(const EoStageParams& p, double T) {
  const double omega = p.freqs.eo_low();
  LossBudget base = microwave_loss_rates(omega, p.geom, sc_conductivity(p.superconductor, omega, T));
  if (p.intermediate_dielectric_loss && p.freqs.is_two_step())
    return LossBudget::make(base.kappa_int() + thz_absorption(p.optical, omega) * K::c,
                            base.kappa_ext());
  return base;
}

LossBudget eo_optical_loss(const EoStageParams& p) {
  return optical_loss_rates(p.optical.alpha_optical, p.optical.n_g, p.geom.L);
}

double eo_coupling(const EoStageParams& p) {
  return eo_coupling(p.freqs, p.optical, p.geom, p.xi);
}

LossBudget ki_microwave_loss(const KiStageParams& p, double T) {
  const double omega = p.freqs.omega_mu;
  return microwave_loss_rates(omega, p.geom, sc_conductivity(p.superconductor, omega, T));
}

LossBudget ki_intermediate_loss(const KiStageParams& p, double T) {
  const double omega = p.freqs.omega_i.value();
  return microwave_loss_rates(omega, p.geom, sc_conductivity(p.superconductor, omega, T));
}

double ki_pump_absorption(const KiStageParams& p, double T) {
  const double omega = p.freqs.omega_pi.value();
  const auto s = sc_conductivity(p.superconductor, omega, T);
  return omega * s.sigma1 / s.sigma2;
}

double ki_coupling(const KiStageParams& p) {
  return ki_coupling(p.freqs, ki_params(p.geom, p.superconductor));
}

HeatingStage make_eo_stage(const EoStageParams& p) {
  auto params = std::make_shared<const EoStageParams>(p);
  const double g = eo_coupling(p);
  const double kappa_o = eo_optical_loss(p).kappa_tot();
  const double kappa_abs = eo_optical_loss(p).kappa_int();
  HeatingStage s;
  s.pump_photons = [params, g, kappa_o](double T) {
    return pump_photons_eo(g, eo_low_loss(*params, T).kappa_tot(), kappa_o);
  };
  s.absorption_rate = [kappa_abs](double) { return kappa_abs; };
  s.conductivity = [params](double T) { return thermal_conductivity(params->medium, T); };
  s.omega_pump = p.freqs.omega_po;
  s.L = p.geom.L;
  s.T_base = p.T_base;
  s.T_max = kBracketFractionOfTc * p.superconductor.Tc;
  return s;
}

HeatingStage make_ki_stage(const KiStageParams& p) {
  if (!p.freqs.is_two_step() || !p.freqs.omega_pi)
    throw ConfigError("omega_i", "kinetic-inductance stage needs the intermediate band");
  auto params = std::make_shared<const KiStageParams>(p);
  const double g = ki_coupling(p);
  HeatingStage s;
  s.pump_photons = [params, g](double T) {
    return pump_photons_ki(g, ki_microwave_loss(*params, T).kappa_tot(),
                           ki_intermediate_loss(*params, T).kappa_tot());
  };
  s.absorption_rate = [params](double T) { return ki_pump_absorption(*params, T); };
  s.conductivity = [params](double T) { return thermal_conductivity(params->medium, T); };
  s.omega_pump = *p.freqs.omega_pi;
  s.L = p.geom.L;
  s.T_base = p.T_base;
  s.T_max = kBracketFractionOfTc * p.superconductor.Tc;
  return s;
}

double dT_scaling_eo(const EoStageParams& p) { return make_eo_stage(p).rhs(0.0); }

double dT_scaling_ki(const KiStageParams& p) { return make_ki_stage(p).rhs(0.0); }

double dT_scaling_eo_closed_form(const EoStageParams& p) {
  const auto& o = p.optical;
  const double omega_low = p.freqs.eo_low();
  const double eps_low = p.freqs.is_two_step() ? o.eps_i : o.eps_mu;
  const auto s = sc_conductivity(p.superconductor, omega_low, p.T_base);
  double bracket = s.sigma1 / s.sigma2 + (p.geom.w / p.geom.L) * (p.geom.w / p.geom.L);
  if (p.intermediate_dielectric_loss && p.freqs.is_two_step())
    bracket += thz_absorption(o, omega_low) * K::c / omega_low;
  const double volume_per_length = p.geom.w * p.geom.w;
  const double kappa_o = o.alpha_optical * K::c + K::c / (o.n_g * p.geom.L);
  const double g_th = thermal_conductivity(p.medium, p.T_base);
  return 2.0 * K::eps0 * eps_low * o.eps_po * o.eps_o * o.alpha_optical * K::c /
         (g_th * o.chi2 * o.chi2 * p.xi * p.xi * p.freqs.omega_o) * volume_per_length * bracket *
         kappa_o;
}

double dT_scaling_ki_closed_form(const KiStageParams& p) {
  const auto& sc = p.superconductor;
  const double ratio_sq = (p.geom.w / p.geom.L) * (p.geom.w / p.geom.L);
  auto loss_ratio = [&](double omega) {
    const auto s = sc_conductivity(sc, omega, p.T_base);
    return s.sigma1 / s.sigma2;
  };
  const double omega_pi = p.freqs.omega_pi.value();
  const double volume_per_length = p.geom.w * p.geom.t;
  const double g_th = thermal_conductivity(p.medium, p.T_base);
  return (16.0 / 3.0) * sc.N0 * sc.gap0 * sc.gap0 * omega_pi / g_th * volume_per_length *
         loss_ratio(omega_pi) *
         std::sqrt((loss_ratio(p.freqs.omega_i.value()) + ratio_sq) *
                   (loss_ratio(p.freqs.omega_mu) + ratio_sq));
}

}  // namespace terabridge
