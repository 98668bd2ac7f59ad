#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "terabridge/material_db.hpp"
#include "terabridge/transducer.hpp"

namespace terabridge {

/// Fully resolved run configuration. Frequencies are angular from here on.
struct RunConfig {
  Scheme scheme = Scheme::two_step;
  double omega_mu = 0.0;
  std::optional<double> omega_i;
  double omega_po = 0.0;
  Geometry geometry;
  std::optional<Geometry> ki_geometry;  ///< empty: tied to `geometry`
  double T1 = 0.0;
  double T2 = 0.0;
  ModelOptions options;
  std::string format = "csv";
  std::shared_ptr<const MaterialRegistry> materials;
  std::string materials_source = "builtin";
  std::vector<std::string> defaults_applied;  ///< "key=value" for every filled gap

  FrequencyPlan frequency_plan() const;  ///< throws ConfigError
  Geometry effective_ki_geometry() const { return ki_geometry.value_or(geometry); }
};

/// Parses the config dialect. Quantities are numbers in SI units or strings
/// with a unit suffix ("8GHz", "300um", "10mK"). `registry`, when given,
/// replaces any `materials` entry of the document. Throws ConfigError naming
/// the field.
RunConfig resolve_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {},
                         std::shared_ptr<const MaterialRegistry> registry = nullptr);
RunConfig load_config_file(const std::filesystem::path& path,
                           std::shared_ptr<const MaterialRegistry> registry = nullptr);

/// Parameter paths accepted by sweeps and optimizers.
const std::vector<std::string>& parameter_paths();
bool is_parameter_path(const std::string& path);
/// Sets a parameter in SI units (frequencies in Hz). Throws ConfigError on an
/// unknown path.
void set_parameter(RunConfig& cfg, const std::string& path, double value);
/// Reads a parameter back in the units accepted by set_parameter.
double get_parameter(const RunConfig& cfg, const std::string& path);

TransductionPoint evaluate(const RunConfig& cfg);

/// Resolved parameters, applied defaults, tool version and material origins.
nlohmann::ordered_json provenance(const RunConfig& cfg);

const char* tool_version();

}  // namespace terabridge
