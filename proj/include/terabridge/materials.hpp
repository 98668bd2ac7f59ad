#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace terabridge {

/// Mean thermal photon number 1/(exp(hbar*omega/k_B T) - 1).
///
/// Exactly 0 at T = 0 and for hbar*omega/k_B T > 700; uses the Laurent
/// series 1/y - 1/2 + y/12 for y < 1e-6. Throws DomainError for omega <= 0
/// or T < 0.
double bose_einstein(double omega, double T);

// ---------------------------------------------------------------------------
// Temperature laws

/// coeff * T^exponent
struct PowerLaw {
  double coeff = 0.0;
  double exponent = 0.0;
};

/// sum_k coeff_k * T^exponent_k
struct PolynomialLaw {
  std::vector<std::pair<double, double>> terms;  // (coeff, exponent)
};

/// Log-log interpolation through (T, value) anchors sorted by T. Outside the
/// anchor range the first/last segment's power law is extended.
struct AnchorLaw {
  std::vector<std::pair<double, double>> points;
};

/// AnchorLaw whose anchors were read from a two-column CSV file.
struct TableFileLaw {
  std::filesystem::path path;
  AnchorLaw data;
};

using TemperatureLaw = std::variant<PowerLaw, PolynomialLaw, AnchorLaw, TableFileLaw>;

double evaluate(const TemperatureLaw& law, double T);
std::string describe(const TemperatureLaw& law);
const char* law_kind(const TemperatureLaw& law);

/// Reads "T_K,<value>" rows (one header line) into anchors.
AnchorLaw read_anchor_table(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Thermal properties

struct ThermalMaterialParams {
  std::string name;
  TemperatureLaw g_th_law;  ///< W m^-1 K^-1
  TemperatureLaw c_th_law;  ///< J kg^-1 K^-1
  double density = 0.0;     ///< kg m^-3
};

double thermal_conductivity(const ThermalMaterialParams& mat, double T);
double heat_capacity(const ThermalMaterialParams& mat, double T);

// ---------------------------------------------------------------------------
// Optical / dielectric properties of the nonlinear medium

struct OpticalMaterialParams {
  double alpha_optical = 0.0;     ///< m^-1, pump and sideband band
  double alpha_thz_low = 0.0;     ///< m^-1, sub-THz absorption near 0 Hz
  double alpha_thz_high = 0.0;    ///< m^-1, sub-THz absorption at thz_band_edge
  double thz_band_edge = 0.0;     ///< rad/s, upper end of the sub-THz data
  double n_optical = 1.0;         ///< phase index, optical band
  double n_thz = 1.0;             ///< phase index, microwave through sub-THz
  double n_g = 1.0;               ///< optical group index
  double d33 = 0.0;               ///< m/V
  double chi2 = 0.0;              ///< m/V
  double eps_mu = 1.0;            ///< relative permittivity, microwave mode
  double eps_i = 1.0;             ///< relative permittivity, intermediate mode
  double eps_po = 1.0;            ///< relative permittivity, optical pump
  double eps_o = 1.0;             ///< relative permittivity, optical sideband
};

/// Sub-THz absorption coefficient at omega, linear between the two band
/// endpoints; clamps to alpha_thz_high above the band edge.
double thz_absorption(const OpticalMaterialParams& opt, double omega);

// ---------------------------------------------------------------------------
// Superconductor complex conductivity sigma = sigma1 - i sigma2

struct ComplexConductivity {
  double sigma1 = 0.0;  ///< S/m
  double sigma2 = 0.0;  ///< S/m
  double omega = 0.0;   ///< rad/s
  double T = 0.0;       ///< K
};

/// Tabulated sigma1, sigma2 on a rectangular (T, omega) grid.
class SigmaTable {
 public:
  /// CSV with header `T_K,omega_rad_s,sigma1_S_m,sigma2_S_m`, rows sorted by
  /// T then omega, every (T, omega) pair present. Values must be positive.
  static SigmaTable from_csv(const std::filesystem::path& path);
  static SigmaTable from_grid(std::vector<double> temperatures, std::vector<double> omegas,
                              std::vector<double> sigma1, std::vector<double> sigma2);

  /// Log-log bilinear interpolation. Throws RangeError outside the grid.
  ComplexConductivity at(double omega, double T) const;

  const std::filesystem::path& path() const { return path_; }
  std::size_t temperature_count() const { return temperatures_.size(); }
  std::size_t omega_count() const { return omegas_.size(); }

 private:
  std::vector<double> temperatures_;
  std::vector<double> omegas_;
  std::vector<double> sigma1_;  // row-major [T][omega]
  std::vector<double> sigma2_;
  std::filesystem::path path_;
};

struct SuperconductorParams {
  std::string name;
  double Tc = 0.0;     ///< K
  double gap0 = 0.0;   ///< J
  double N0 = 0.0;     ///< J^-1 m^-3
  double rho_n = 0.0;  ///< Ohm m
  /// Null selects the analytic low-frequency model.
  std::shared_ptr<const SigmaTable> table;
};

/// BCS weak-coupling gap 1.76 k_B Tc.
double bcs_gap(double Tc);

/// Smallest sigma1 ever returned by the analytic model, S/m.
inline constexpr double kSigma1Floor = 1e-30;

/// Complex conductivity at (omega, T).
///
/// Analytic mode uses the low-frequency Mattis-Bardeen limits with the
/// zero-temperature gap:
///   sigma1/sigma_n = (4 gap / hbar w) exp(-gap/kT) sinh(hbar w/2kT) K0(hbar w/2kT)
///   sigma2/sigma_n = (pi gap / hbar w) tanh(gap/2kT)
/// with sigma_n = 1/rho_n and sigma1 floored at kSigma1Floor.
/// Throws NormalStateError for T >= Tc, PairBreakingError for
/// hbar w >= 2 gap, DomainError for T <= 0 or omega <= 0.
ComplexConductivity sc_conductivity(const SuperconductorParams& sc, double omega, double T);

}  // namespace terabridge
