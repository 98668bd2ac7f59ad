#include "terabridge/rates.hpp"

#include <cmath>
#include <string>

#include "terabridge/constants.hpp"
#include "terabridge/errors.hpp"

namespace terabridge {

using K = PhysicalConstants;

void Geometry::validate() const {
  if (!(w > 0.0) || !(L > 0.0) || !(t > 0.0))
    throw DomainError("geometry: w, L and t must be positive");
}

double optical_cutoff_width(double n_optical, double omega_po) {
  return kTwoPi * K::c / (n_optical * omega_po);
}

bool below_optical_cutoff(const Geometry& g, double n_optical, double omega_po) {
  return g.w < optical_cutoff_width(n_optical, omega_po);
}

FrequencyPlan FrequencyPlan::single_step(double omega_mu, double omega_po) {
  FrequencyPlan p;
  p.omega_mu = omega_mu;
  p.omega_po = omega_po;
  p.omega_o = omega_po + omega_mu;
  return p;
}

FrequencyPlan FrequencyPlan::two_step(double omega_mu, double omega_i, double omega_po) {
  FrequencyPlan p;
  p.omega_mu = omega_mu;
  p.omega_i = omega_i;
  p.omega_pi = 0.5 * (omega_i - omega_mu);
  p.omega_po = omega_po;
  p.omega_o = omega_po + omega_i;
  return p;
}

void FrequencyPlan::validate() const {
  if (!(omega_mu > 0.0)) throw ConfigError("omega_mu", "must be positive");
  if (!(omega_po > 0.0)) throw ConfigError("omega_po", "must be positive");
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::abs(b); };
  if (!omega_i) {
    if (omega_pi) throw ConfigError("omega_pi", "intermediate pump without intermediate mode");
    if (!close(omega_o, omega_po + omega_mu))
      throw ConfigError("omega_o", "must equal omega_po + omega_mu");
    return;
  }
  if (!omega_pi) throw ConfigError("omega_pi", "required for the two-step scheme");
  if (!(omega_mu < *omega_i && *omega_i < omega_po))
    throw ConfigError("omega_i", "ordering omega_mu < omega_i < omega_po violated");
  if (!close(*omega_i, 2.0 * *omega_pi + omega_mu))
    throw ConfigError("omega_pi", "must satisfy omega_i = 2 omega_pi + omega_mu");
  if (!close(omega_o, omega_po + *omega_i))
    throw ConfigError("omega_o", "must equal omega_po + omega_i");
}

LossBudget LossBudget::make(double kappa_int, double kappa_ext) {
  if (!(kappa_int >= 0.0) || !(kappa_ext >= 0.0))
    throw DomainError("loss budget: rates must be non-negative");
  LossBudget b;
  b.int_ = kappa_int;
  b.ext_ = kappa_ext;
  b.tot_ = kappa_int + kappa_ext;
  return b;
}

LossBudget microwave_loss_rates(double omega, const Geometry& geom,
                                const ComplexConductivity& sigma) {
  if (!(omega > 0.0)) throw DomainError("microwave_loss_rates: omega must be positive");
  const double ratio = geom.w / geom.L;
  return LossBudget::make(omega * sigma.sigma1 / sigma.sigma2, omega * ratio * ratio);
}

LossBudget optical_loss_rates(double alpha, double n_g, double L) {
  if (!(alpha >= 0.0) || !(n_g >= 1.0) || !(L > 0.0))
    throw DomainError("optical_loss_rates: need alpha >= 0, n_g >= 1, L > 0");
  return LossBudget::make(alpha * K::c, K::c / (n_g * L));
}

double eo_coupling(double omega_low, double omega_po, double omega_o, double eps_low,
                   double eps_po, double eps_o, double chi2, const Geometry& geom, double xi) {
  if (!(xi > 0.0 && xi <= 1.0)) throw DomainError("eo_coupling: xi must lie in (0, 1]");
  const double volume = geom.w * geom.w * geom.L;
  const double prefactor =
      std::sqrt(K::hbar * omega_low * omega_po * omega_o / (8.0 * K::eps0 * eps_low * eps_po * eps_o));
  return prefactor * chi2 * xi / std::sqrt(volume);
}

double eo_coupling(const FrequencyPlan& freqs, const OpticalMaterialParams& opt,
                   const Geometry& geom, double xi) {
  const double eps_low = freqs.is_two_step() ? opt.eps_i : opt.eps_mu;
  if (!(eps_low >= 1.0) || !(opt.eps_po >= 1.0) || !(opt.eps_o >= 1.0))
    throw ConfigError("optical.eps", "permittivity missing for an interacting band");
  return eo_coupling(freqs.eo_low(), freqs.omega_po, freqs.omega_o, eps_low, opt.eps_po, opt.eps_o,
                     opt.chi2, geom, xi);
}

KineticInductorParams ki_params(const Geometry& geom, const SuperconductorParams& sc) {
  geom.validate();
  const double area = geom.w * geom.t;
  KineticInductorParams p;
  p.I_star = std::sqrt(std::numbers::pi * sc.N0 * sc.gap0 * sc.gap0 * sc.gap0 / (K::hbar * sc.rho_n)) * area;
  p.L_k = K::hbar * sc.rho_n / (std::numbers::pi * sc.gap0) * geom.L / area;
  return p;
}

double ki_coupling(const FrequencyPlan& freqs, const KineticInductorParams& kip) {
  if (!freqs.omega_pi || !freqs.omega_i)
    throw ConfigError("omega_pi", "kinetic-inductance coupling needs the intermediate pump");
  return (3.0 / 32.0) * K::hbar * *freqs.omega_pi * std::sqrt(freqs.omega_mu * *freqs.omega_i) /
         (kip.L_k * kip.I_star * kip.I_star);
}

double pump_photons_eo(double g_eo, double kappa_low, double kappa_o) {
  if (!(g_eo > 0.0)) throw InfeasibleError("pump_photons_eo: zero coupling, unit cooperativity unreachable");
  if (!(kappa_low > 0.0) || !(kappa_o > 0.0)) throw DomainError("pump_photons_eo: rates must be positive");
  return kappa_low * kappa_o / (4.0 * g_eo * g_eo);
}

double pump_photons_ki(double g_ki, double kappa_mu, double kappa_i) {
  if (!(g_ki > 0.0)) throw InfeasibleError("pump_photons_ki: zero coupling, unit cooperativity unreachable");
  if (!(kappa_mu > 0.0) || !(kappa_i > 0.0)) throw DomainError("pump_photons_ki: rates must be positive");
  return std::sqrt(kappa_mu * kappa_i / (4.0 * g_ki * g_ki));
}

double cooperativity_eo(double g, double pump_photons, double kappa_a, double kappa_b) {
  if (!(kappa_a > 0.0) || !(kappa_b > 0.0)) throw DomainError("cooperativity_eo: rates must be positive");
  return 4.0 * g * g * pump_photons / (kappa_a * kappa_b);
}

double cooperativity_ki(double g, double pump_photons, double kappa_mu, double kappa_i) {
  if (!(kappa_mu > 0.0) || !(kappa_i > 0.0)) throw DomainError("cooperativity_ki: rates must be positive");
  return 4.0 * g * g * pump_photons * pump_photons / (kappa_mu * kappa_i);
}

}  // namespace terabridge
