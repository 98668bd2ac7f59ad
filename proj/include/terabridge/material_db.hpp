#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "terabridge/materials.hpp"

namespace terabridge {

enum class Provenance { builtin, file };

const char* to_string(Provenance p);

/// One registry entry. A material may carry any subset of thermal, optical
/// and superconducting properties.
struct Material {
  std::string name;
  Provenance provenance = Provenance::builtin;
  std::string source;  ///< file path for Provenance::file
  std::optional<ThermalMaterialParams> thermal;
  std::optional<OpticalMaterialParams> optical;
  std::optional<SuperconductorParams> superconductor;
  std::vector<std::string> notes;  ///< values that are not tabulated material data
};

inline constexpr const char* kLithiumNiobate = "LiNbO3";
inline constexpr const char* kSilica = "SiO2";
inline constexpr const char* kNiobiumNitride = "NbN";

/// Name-keyed material set, insertion ordered. Immutable once built and safe
/// to share between threads.
class MaterialRegistry {
 public:
  /// LiNbO3, SiO2 and NbN with the tabulated cryogenic laws.
  static MaterialRegistry builtin();

  const Material& at(const std::string& name) const;
  const Material* find(const std::string& name) const;
  std::vector<std::string> names() const;
  std::size_t size() const { return entries_.size(); }

  /// Accessors that throw ConfigError when the property block is missing.
  const ThermalMaterialParams& thermal(const std::string& name) const;
  const OpticalMaterialParams& optical(const std::string& name) const;
  const SuperconductorParams& superconductor(const std::string& name) const;

  /// Inserts or replaces by name.
  void upsert(Material m);

 private:
  std::vector<Material> entries_;
};

/// Built-in defaults merged with the `materials` object of `doc`. Relative
/// table paths resolve against `base_dir`. Throws LoadError naming the entry.
MaterialRegistry load_material_db(const nlohmann::json& doc,
                                  const std::filesystem::path& base_dir = {});
MaterialRegistry load_material_db_file(const std::filesystem::path& path);

/// Invariant violations and law-evaluation failures over T in (0, 10] K,
/// one message per problem, each prefixed by material and law name.
std::vector<std::string> validate_registry(const MaterialRegistry& reg);

nlohmann::json to_json(const Material& m);
nlohmann::json to_json(const TemperatureLaw& law);

}  // namespace terabridge
