#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "terabridge/material_db.hpp"
#include "terabridge/rates.hpp"
#include "terabridge/thermal.hpp"

namespace terabridge {

enum class Scheme { single_step, two_step };

/// Which bath the internal-loss branch of a mode couples to.
///   physical:   hot medium weighted by kappa_int/kappa, cryostat by kappa_ext/kappa
///   as_printed: hot medium weighted by kappa_ext/kappa, cryostat by kappa_int/kappa
enum class OccupancyBranch { physical, as_printed };

const char* to_string(Scheme s);
const char* to_string(OccupancyBranch b);
Scheme parse_scheme(const std::string& s);
OccupancyBranch parse_branch(const std::string& s);

/// Overlap factor as a function of the electro-optic low-band frequency,
/// linear in xi against log(omega), clamped at the ends.
struct OverlapTable {
  std::vector<std::pair<double, double>> points;  ///< (omega rad/s, xi), omega increasing
  double at(double omega) const;
};

/// Material selection and modelling switches shared by every design point.
struct ModelOptions {
  std::string nonlinear_medium = kLithiumNiobate;
  std::string superconductor = kNiobiumNitride;
  std::string thermal_medium = kLithiumNiobate;  ///< heat sink of the EO stage
  std::string ki_thermal_medium = kLithiumNiobate;
  double xi = 1.0;
  std::optional<OverlapTable> xi_table;
  OccupancyBranch branch = OccupancyBranch::physical;
  bool intermediate_dielectric_loss = false;
  SolverOptions solver;

  double overlap(double omega_low) const { return xi_table ? xi_table->at(omega_low) : xi; }
};

enum class Flag : unsigned {
  none = 0,
  runaway = 1u << 0,
  multi_root = 1u << 1,
  cutoff = 1u << 2,
  overlap_degraded = 1u << 3,
  short_device = 1u << 4,
  saturated = 1u << 5,
  not_converged = 1u << 6,
};

/// Set of diagnostic flags; serializes as `a|b|c` in a fixed order, `none`
/// when empty.
class Flags {
 public:
  void set(Flag f) { bits_ |= static_cast<unsigned>(f); }
  bool has(Flag f) const { return (bits_ & static_cast<unsigned>(f)) != 0; }
  bool empty() const { return bits_ == 0; }
  unsigned bits() const { return bits_; }
  std::string to_string() const;
  static Flags parse(const std::string& text);

 private:
  unsigned bits_ = 0;
};

struct StageResult {
  std::string name;  ///< "eo" or "ki"
  double omega_low = 0.0;
  LossBudget loss_low;   ///< input mode
  LossBudget loss_high;  ///< output mode
  double coupling = 0.0;
  double pump_photons = 0.0;
  ThermalSolution thermal;
  double eta_ext = 0.0;
  double n_added = 0.0;      ///< with the selected branch
  double n_added_alt = 0.0;  ///< with the other branch
};

struct TransductionPoint {
  Scheme scheme = Scheme::single_step;
  Geometry geometry;     ///< electro-optic stage
  Geometry ki_geometry;  ///< kinetic-inductance stage (two-step only)
  FrequencyPlan freqs;
  double T1 = 0.0;
  double T2 = 0.0;
  double xi = 1.0;
  OccupancyBranch branch = OccupancyBranch::physical;
  std::vector<StageResult> stages;  ///< KI then EO for two-step
  double eta_total = 0.0;
  double n_total = 0.0;
  double n_total_alt = 0.0;
  Flags flags;

  bool runaway() const { return flags.has(Flag::runaway); }
  const StageResult* stage(const std::string& name) const;
};

/// (k_a,ext / k_a) (k_b,ext / k_b). Throws DomainError on a zero total.
double external_efficiency(const LossBudget& loss_a, const LossBudget& loss_b);

/// Thermal occupancy of a mode exchanging with a hot medium and a cold bath.
double mode_occupancy(double omega, double T_hot, double T_cold, const LossBudget& mode,
                      OccupancyBranch branch);

struct ComposedOccupancy {
  double n_total = 0.0;
  bool saturated = false;  ///< a stage behind a zero-efficiency stage adds noise
};

/// sum_k n_k / prod_{j<k} eta_j. A zero preceding efficiency with non-zero
/// later noise returns the largest finite double and sets `saturated`.
ComposedOccupancy occupancy_composition(std::span<const double> stage_occupancies,
                                        std::span<const double> stage_efficiencies);

EoStageParams eo_stage_params(const Geometry& geom, const FrequencyPlan& freqs, double T_base,
                              const MaterialRegistry& materials, const ModelOptions& opts);
KiStageParams ki_stage_params(const Geometry& geom, const FrequencyPlan& freqs, double T_base,
                              const MaterialRegistry& materials, const ModelOptions& opts);

/// Direct microwave-to-optical conversion at unit cooperativity.
TransductionPoint single_step_point(const Geometry& geom, const FrequencyPlan& freqs, double T1,
                                    const MaterialRegistry& materials, const ModelOptions& opts);

/// Kinetic-inductance stage at base T1 followed by the electro-optic stage
/// at base T2, both at unit cooperativity.
TransductionPoint two_step_point(const Geometry& geom_ki, const Geometry& geom_eo,
                                 const FrequencyPlan& freqs, double T1, double T2,
                                 const MaterialRegistry& materials, const ModelOptions& opts);

}  // namespace terabridge
