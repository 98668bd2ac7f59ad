#include "terabridge/transducer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "terabridge/errors.hpp"

namespace terabridge {

const char* to_string(Scheme s) { return s == Scheme::single_step ? "single" : "two_step"; }

const char* to_string(OccupancyBranch b) {
  return b == OccupancyBranch::physical ? "physical" : "as_printed";
}

Scheme parse_scheme(const std::string& s) {
  if (s == "single" || s == "single_step") return Scheme::single_step;
  if (s == "two_step" || s == "two-step") return Scheme::two_step;
  throw ConfigError("scheme", "expected 'single' or 'two_step', got '" + s + "'");
}

OccupancyBranch parse_branch(const std::string& s) {
  if (s == "physical") return OccupancyBranch::physical;
  if (s == "as_printed") return OccupancyBranch::as_printed;
  throw ConfigError("occupancy_branch", "expected 'physical' or 'as_printed', got '" + s + "'");
}

double OverlapTable::at(double omega) const {
  if (points.empty()) throw ConfigError("xi_table", "empty overlap table");
  if (omega <= points.front().first) return points.front().second;
  if (omega >= points.back().first) return points.back().second;
  auto hi = std::lower_bound(points.begin(), points.end(), omega,
                             [](const auto& p, double w) { return p.first < w; });
  auto lo = hi - 1;
  const double f = std::log(omega / lo->first) / std::log(hi->first / lo->first);
  return lo->second + f * (hi->second - lo->second);
}

namespace {

struct FlagName {
  Flag flag;
  const char* name;
};

constexpr FlagName kFlagNames[] = {
    {Flag::runaway, "runaway"},          {Flag::multi_root, "multi_root"},
    {Flag::cutoff, "cutoff"},            {Flag::overlap_degraded, "overlap_degraded"},
    {Flag::short_device, "short_device"}, {Flag::saturated, "saturated"},
    {Flag::not_converged, "not_converged"},
};

}  // namespace

std::string Flags::to_string() const {
  std::string out;
  for (const auto& [flag, name] : kFlagNames)
    if (has(flag)) {
      if (!out.empty()) out += '|';
      out += name;
    }
  return out.empty() ? "none" : out;
}

Flags Flags::parse(const std::string& text) {
  Flags f;
  if (text.empty() || text == "none") return f;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, '|')) {
    auto it = std::find_if(std::begin(kFlagNames), std::end(kFlagNames),
                           [&](const FlagName& n) { return token == n.name; });
    if (it == std::end(kFlagNames)) throw ConfigError("flags", "unknown flag '" + token + "'");
    f.set(it->flag);
  }
  return f;
}

const StageResult* TransductionPoint::stage(const std::string& name) const {
  for (const auto& s : stages)
    if (s.name == name) return &s;
  return nullptr;
}

double external_efficiency(const LossBudget& loss_a, const LossBudget& loss_b) {
  if (!(loss_a.kappa_tot() > 0.0) || !(loss_b.kappa_tot() > 0.0))
    throw DomainError("external_efficiency: total loss rate must be positive");
  return loss_a.external_ratio() * loss_b.external_ratio();
}

double mode_occupancy(double omega, double T_hot, double T_cold, const LossBudget& mode,
                      OccupancyBranch branch) {
  const double hot = bose_einstein(omega, T_hot);
  const double cold = bose_einstein(omega, T_cold);
  if (branch == OccupancyBranch::physical)
    return hot * mode.internal_ratio() + cold * mode.external_ratio();
  return hot * mode.external_ratio() + cold * mode.internal_ratio();
}

ComposedOccupancy occupancy_composition(std::span<const double> stage_occupancies,
                                        std::span<const double> stage_efficiencies) {
  if (stage_occupancies.size() != stage_efficiencies.size())
    throw DomainError("occupancy_composition: lists must have equal length");
  ComposedOccupancy out;
  double through = 1.0;
  for (std::size_t k = 0; k < stage_occupancies.size(); ++k) {
    const double n = stage_occupancies[k];
    const double eta = stage_efficiencies[k];
    if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("occupancy_composition: efficiency outside [0, 1]");
    if (through == 0.0) {
      if (n > 0.0) out.saturated = true;
    } else {
      out.n_total += n / through;
    }
    through *= eta;
  }
  if (out.saturated) out.n_total = std::numeric_limits<double>::max();
  return out;
}

EoStageParams eo_stage_params(const Geometry& geom, const FrequencyPlan& freqs, double T_base,
                              const MaterialRegistry& materials, const ModelOptions& opts) {
  EoStageParams p;
  p.freqs = freqs;
  p.geom = geom;
  p.optical = materials.optical(opts.nonlinear_medium);
  p.superconductor = materials.superconductor(opts.superconductor);
  p.medium = materials.thermal(opts.thermal_medium);
  p.xi = opts.overlap(freqs.eo_low());
  p.T_base = T_base;
  p.intermediate_dielectric_loss = opts.intermediate_dielectric_loss;
  return p;
}

KiStageParams ki_stage_params(const Geometry& geom, const FrequencyPlan& freqs, double T_base,
                              const MaterialRegistry& materials, const ModelOptions& opts) {
  KiStageParams p;
  p.freqs = freqs;
  p.geom = geom;
  p.superconductor = materials.superconductor(opts.superconductor);
  p.medium = materials.thermal(opts.ki_thermal_medium);
  p.T_base = T_base;
  return p;
}

namespace {

void check_base_temperature(double T, const SuperconductorParams& sc, const char* field) {
  if (!(T > 0.0) || !(T < kBracketFractionOfTc * sc.Tc))
    throw ConfigError(field, "base temperature must lie in (0, 0.9 Tc)");
}

void absorb_thermal_flags(TransductionPoint& pt, const ThermalSolution& th) {
  if (th.runaway) pt.flags.set(Flag::runaway);
  if (th.multi_root) pt.flags.set(Flag::multi_root);
  if (!th.runaway && !th.converged) pt.flags.set(Flag::not_converged);
}

StageResult evaluate_eo(const EoStageParams& p, const OccupancyBranch branch,
                        const SolverOptions& solver) {
  StageResult r;
  r.name = "eo";
  r.omega_low = p.freqs.eo_low();
  r.thermal = solve_self_consistent_dT(make_eo_stage(p), solver);
  const double T = r.thermal.temperature();
  r.loss_low = eo_low_loss(p, T);
  r.loss_high = eo_optical_loss(p);
  r.coupling = eo_coupling(p);
  r.pump_photons = pump_photons_eo(r.coupling, r.loss_low.kappa_tot(), r.loss_high.kappa_tot());
  r.eta_ext = external_efficiency(r.loss_low, r.loss_high);
  const OccupancyBranch alt =
      branch == OccupancyBranch::physical ? OccupancyBranch::as_printed : OccupancyBranch::physical;
  r.n_added = mode_occupancy(r.omega_low, T, p.T_base, r.loss_low, branch);
  r.n_added_alt = mode_occupancy(r.omega_low, T, p.T_base, r.loss_low, alt);
  return r;
}

StageResult evaluate_ki(const KiStageParams& p, const OccupancyBranch branch,
                        const SolverOptions& solver) {
  StageResult r;
  r.name = "ki";
  r.omega_low = p.freqs.omega_mu;
  r.thermal = solve_self_consistent_dT(make_ki_stage(p), solver);
  const double T = r.thermal.temperature();
  r.loss_low = ki_microwave_loss(p, T);
  r.loss_high = ki_intermediate_loss(p, T);
  r.coupling = ki_coupling(p);
  r.pump_photons = pump_photons_ki(r.coupling, r.loss_low.kappa_tot(), r.loss_high.kappa_tot());
  r.eta_ext = external_efficiency(r.loss_low, r.loss_high);
  const OccupancyBranch alt =
      branch == OccupancyBranch::physical ? OccupancyBranch::as_printed : OccupancyBranch::physical;
  r.n_added = mode_occupancy(r.omega_low, T, p.T_base, r.loss_low, branch);
  r.n_added_alt = mode_occupancy(r.omega_low, T, p.T_base, r.loss_low, alt);
  return r;
}

void geometry_flags(TransductionPoint& pt, const MaterialRegistry& materials,
                    const ModelOptions& opts) {
  const auto& opt = materials.optical(opts.nonlinear_medium);
  if (below_optical_cutoff(pt.geometry, opt.n_optical, pt.freqs.omega_po)) pt.flags.set(Flag::cutoff);
  if (pt.geometry.short_device()) pt.flags.set(Flag::short_device);
  if (pt.scheme == Scheme::two_step && pt.ki_geometry.short_device()) pt.flags.set(Flag::short_device);
  if (pt.xi < 1.0) pt.flags.set(Flag::overlap_degraded);
}

}  // namespace

TransductionPoint single_step_point(const Geometry& geom, const FrequencyPlan& freqs, double T1,
                                    const MaterialRegistry& materials, const ModelOptions& opts) {
  if (freqs.is_two_step())
    throw ConfigError("frequencies.f_i", "single-step scheme takes no intermediate band");
  freqs.validate();
  geom.validate();
  const EoStageParams p = eo_stage_params(geom, freqs, T1, materials, opts);
  check_base_temperature(T1, p.superconductor, "temperatures.T1");

  TransductionPoint pt;
  pt.scheme = Scheme::single_step;
  pt.geometry = geom;
  pt.freqs = freqs;
  pt.T1 = T1;
  pt.T2 = T1;
  pt.xi = p.xi;
  pt.branch = opts.branch;
  pt.stages.push_back(evaluate_eo(p, opts.branch, opts.solver));
  const StageResult& s = pt.stages.back();
  absorb_thermal_flags(pt, s.thermal);
  pt.eta_total = s.eta_ext;
  pt.n_total = s.n_added;
  pt.n_total_alt = s.n_added_alt;
  geometry_flags(pt, materials, opts);
  return pt;
}

TransductionPoint two_step_point(const Geometry& geom_ki, const Geometry& geom_eo,
                                 const FrequencyPlan& freqs, double T1, double T2,
                                 const MaterialRegistry& materials, const ModelOptions& opts) {
  if (!freqs.is_two_step())
    throw ConfigError("frequencies.f_i", "two-step scheme needs the intermediate frequency");
  freqs.validate();
  geom_ki.validate();
  geom_eo.validate();
  const KiStageParams ki = ki_stage_params(geom_ki, freqs, T1, materials, opts);
  const EoStageParams eo = eo_stage_params(geom_eo, freqs, T2, materials, opts);
  check_base_temperature(T1, ki.superconductor, "temperatures.T1");
  check_base_temperature(T2, eo.superconductor, "temperatures.T2");

  TransductionPoint pt;
  pt.scheme = Scheme::two_step;
  pt.geometry = geom_eo;
  pt.ki_geometry = geom_ki;
  pt.freqs = freqs;
  pt.T1 = T1;
  pt.T2 = T2;
  pt.xi = eo.xi;
  pt.branch = opts.branch;
  pt.stages.push_back(evaluate_ki(ki, opts.branch, opts.solver));
  pt.stages.push_back(evaluate_eo(eo, opts.branch, opts.solver));
  for (const auto& s : pt.stages) absorb_thermal_flags(pt, s.thermal);

  const double etas[] = {pt.stages[0].eta_ext, pt.stages[1].eta_ext};
  const double ns[] = {pt.stages[0].n_added, pt.stages[1].n_added};
  const double ns_alt[] = {pt.stages[0].n_added_alt, pt.stages[1].n_added_alt};
  pt.eta_total = etas[0] * etas[1];
  const auto composed = occupancy_composition(ns, etas);
  const auto composed_alt = occupancy_composition(ns_alt, etas);
  pt.n_total = composed.n_total;
  pt.n_total_alt = composed_alt.n_total;
  if (composed.saturated || composed_alt.saturated) pt.flags.set(Flag::saturated);
  geometry_flags(pt, materials, opts);
  return pt;
}

}  // namespace terabridge
