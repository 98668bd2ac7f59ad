#pragma once

#include <optional>

#include "terabridge/materials.hpp"

namespace terabridge {

/// Waveguide geometry. `w` is the optical waveguide width and the separation
/// of the superconducting films; `t` is the superconducting film thickness.
struct Geometry {
  double w = 0.0;  ///< m
  double L = 0.0;  ///< m
  double t = 0.0;  ///< m

  void validate() const;  ///< throws DomainError unless w, L, t > 0
  /// L < 10 w: the radial heat-flow picture is degraded.
  bool short_device() const { return L < 10.0 * w; }
};

/// Pump wavelength inside the medium, 2 pi c / (n omega_po).
double optical_cutoff_width(double n_optical, double omega_po);
bool below_optical_cutoff(const Geometry& g, double n_optical, double omega_po);

/// Angular frequencies of the conversion chain.
struct FrequencyPlan {
  double omega_mu = 0.0;
  std::optional<double> omega_i;
  double omega_po = 0.0;
  std::optional<double> omega_pi;
  double omega_o = 0.0;

  /// omega_o = omega_po + omega_mu
  static FrequencyPlan single_step(double omega_mu, double omega_po);
  /// omega_pi = (omega_i - omega_mu)/2, omega_o = omega_po + omega_i
  static FrequencyPlan two_step(double omega_mu, double omega_i, double omega_po);

  bool is_two_step() const { return omega_i.has_value(); }
  /// The low-frequency input of the electro-optic stage.
  double eo_low() const { return omega_i.value_or(omega_mu); }
  /// Checks the conservation relations and ordering; throws ConfigError.
  void validate() const;
};

/// Internal, external and total loss rates of one mode. Constructed only
/// through make() so that total == internal + external exactly.
class LossBudget {
 public:
  LossBudget() = default;
  static LossBudget make(double kappa_int, double kappa_ext);

  double kappa_int() const { return int_; }
  double kappa_ext() const { return ext_; }
  double kappa_tot() const { return tot_; }
  double external_ratio() const { return ext_ / tot_; }
  double internal_ratio() const { return int_ / tot_; }

 private:
  double int_ = 0.0;
  double ext_ = 0.0;
  double tot_ = 0.0;
};

struct KineticInductorParams {
  double I_star = 0.0;  ///< A
  double L_k = 0.0;     ///< H
};

/// kappa_int = omega sigma1/sigma2, kappa_ext = omega (w/L)^2.
LossBudget microwave_loss_rates(double omega, const Geometry& geom,
                                const ComplexConductivity& sigma);

/// kappa_int = alpha c, kappa_ext = c/(n_g L).
LossBudget optical_loss_rates(double alpha, double n_g, double L);

/// Three-wave electro-optic coupling rate per pump amplitude,
///   g = sqrt(hbar w_low w_po w_o / (8 eps0 eps_low eps_po eps_o)) chi2 xi / sqrt(V)
/// with V = w^2 L for all three modes.
double eo_coupling(double omega_low, double omega_po, double omega_o, double eps_low,
                   double eps_po, double eps_o, double chi2, const Geometry& geom, double xi);

/// Electro-optic stage of `freqs`: the low band is omega_i when present.
double eo_coupling(const FrequencyPlan& freqs, const OpticalMaterialParams& opt,
                   const Geometry& geom, double xi);

/// I_* = sqrt(pi N0 gap^3 / (hbar rho)) w t,  L_k = (hbar rho / (pi gap)) L/(w t).
KineticInductorParams ki_params(const Geometry& geom, const SuperconductorParams& sc);

/// g_KI = (3/32) hbar w_pi sqrt(w_mu w_i) / (L_k I_*^2). Throws ConfigError
/// when the plan has no intermediate pump.
double ki_coupling(const FrequencyPlan& freqs, const KineticInductorParams& kip);

/// Pump photons for unit electro-optic cooperativity: k_low k_o / (4 g^2).
double pump_photons_eo(double g_eo, double kappa_low, double kappa_o);
/// Pump photons for unit kinetic-inductance cooperativity:
/// sqrt(k_mu k_i / (4 g^2)), since C_KI grows with the square of pump photons.
double pump_photons_ki(double g_ki, double kappa_mu, double kappa_i);

/// 4 g^2 n_p / (k_a k_b)
double cooperativity_eo(double g, double pump_photons, double kappa_a, double kappa_b);
/// 4 g^2 n_p^2 / (k_mu k_i)
double cooperativity_ki(double g, double pump_photons, double kappa_mu, double kappa_i);

}  // namespace terabridge
