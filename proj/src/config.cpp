#include "terabridge/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "terabridge/constants.hpp"
#include "terabridge/errors.hpp"
#include "terabridge/table.hpp"
#include "terabridge/units.hpp"

#ifndef TERABRIDGE_VERSION
#define TERABRIDGE_VERSION "0.0.0"
#endif

namespace terabridge {

using nlohmann::json;
using units::Dimension;

const char* tool_version() { return TERABRIDGE_VERSION; }

namespace {

double quantity(const json& v, Dimension dim, const std::string& field) {
  try {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return units::parse_quantity(v.get<std::string>(), dim);
  } catch (const std::exception& e) {
    throw ConfigError(field, e.what());
  }
  throw ConfigError(field, "expected a number or a quantity string");
}

const json* member(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = std::any_of(allowed.begin(), allowed.end(),
                          [&](const char* a) { return key == a; });
    if (!ok) throw ConfigError(where.empty() ? key : where + "." + key, "unknown key");
  }
}

struct Filler {
  RunConfig& cfg;
  double take(const json* block, const char* key, const std::string& prefix, Dimension dim,
              const char* fallback) {
    std::string field = prefix.empty() ? key : prefix + "." + key;
    if (block) {
      if (const json* v = member(*block, key)) return quantity(*v, dim, field);
    }
    cfg.defaults_applied.push_back(field + "=" + fallback);
    return units::parse_quantity(fallback, dim);
  }
};

OverlapTable read_overlap(const json& v, const std::filesystem::path& base_dir) {
  OverlapTable tab;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& p = v[i];
      std::string field = "xi_table[" + std::to_string(i) + "]";
      if (!p.is_array() || p.size() != 2) throw ConfigError(field, "expected [frequency, xi]");
      tab.points.emplace_back(kTwoPi * quantity(p[0], Dimension::frequency, field),
                              quantity(p[1], Dimension::dimensionless, field));
    }
  } else if (v.is_string()) {
    std::filesystem::path path = v.get<std::string>();
    if (path.is_relative()) path = base_dir / path;
    std::ifstream in(path);
    if (!in) throw ConfigError("xi_table", "cannot open " + path.string());
    Table t;
    try {
      t = Table::read_csv(in);
      for (std::size_t r = 0; r < t.rows.size(); ++r)
        tab.points.emplace_back(kTwoPi * t.number(r, "f_Hz"), t.number(r, "xi"));
    } catch (const std::exception& e) {
      throw ConfigError("xi_table", path.string() + ": " + e.what());
    }
  } else {
    throw ConfigError("xi_table", "expected a list of [frequency, xi] pairs or a CSV path");
  }
  if (tab.points.size() < 2) throw ConfigError("xi_table", "needs at least two points");
  for (std::size_t i = 0; i < tab.points.size(); ++i) {
    double xi = tab.points[i].second;
    if (!(xi > 0.0 && xi <= 1.0)) throw ConfigError("xi_table", "xi must lie in (0, 1]");
    if (i > 0 && !(tab.points[i].first > tab.points[i - 1].first))
      throw ConfigError("xi_table", "frequencies must be strictly increasing");
  }
  return tab;
}

std::shared_ptr<const MaterialRegistry> read_materials(const json& v,
                                                       const std::filesystem::path& base_dir,
                                                       std::string& source) {
  if (v.is_string()) {
    std::filesystem::path path = v.get<std::string>();
    if (path.is_relative()) path = base_dir / path;
    source = path.string();
    return std::make_shared<const MaterialRegistry>(load_material_db_file(path));
  }
  if (v.is_object()) {
    source = "inline";
    return std::make_shared<const MaterialRegistry>(load_material_db(json{{"materials", v}}, base_dir));
  }
  throw ConfigError("materials", "expected a file path or an inline object");
}

}  // namespace

FrequencyPlan RunConfig::frequency_plan() const {
  FrequencyPlan plan;
  if (scheme == Scheme::two_step) {
    if (!omega_i) throw ConfigError("frequencies.f_i", "required by the two_step scheme");
    plan = FrequencyPlan::two_step(omega_mu, *omega_i, omega_po);
  } else {
    plan = FrequencyPlan::single_step(omega_mu, omega_po);
  }
  plan.validate();
  return plan;
}

RunConfig resolve_config(const json& doc, const std::filesystem::path& base_dir,
                         std::shared_ptr<const MaterialRegistry> registry) {
  check_keys(doc, "",
             {"scheme", "frequencies", "geometry", "ki_geometry", "temperatures", "materials",
              "occupancy_branch", "xi", "xi_table", "intermediate_dielectric_loss", "format"});
  RunConfig cfg;
  Filler fill{cfg};

  if (const json* s = member(doc, "scheme")) {
    try {
      cfg.scheme = parse_scheme(s->get<std::string>());
    } catch (const std::exception& e) {
      throw ConfigError("scheme", e.what());
    }
  } else {
    cfg.defaults_applied.push_back("scheme=two_step");
  }

  const json* fq = member(doc, "frequencies");
  if (fq) check_keys(*fq, "frequencies", {"f_mu", "f_i", "f_po"});
  cfg.omega_mu = kTwoPi * fill.take(fq, "f_mu", "frequencies", Dimension::frequency, "8GHz");
  cfg.omega_po = kTwoPi * fill.take(fq, "f_po", "frequencies", Dimension::frequency, "200THz");
  if (fq) {
    if (const json* v = member(*fq, "f_i"))
      cfg.omega_i = kTwoPi * quantity(*v, Dimension::frequency, "frequencies.f_i");
  }

  const json* geo = member(doc, "geometry");
  if (geo) check_keys(*geo, "geometry", {"w", "L", "t"});
  cfg.geometry.w = fill.take(geo, "w", "geometry", Dimension::length, "1um");
  cfg.geometry.L = fill.take(geo, "L", "geometry", Dimension::length, "300um");
  cfg.geometry.t = fill.take(geo, "t", "geometry", Dimension::length, "20nm");

  if (const json* kg = member(doc, "ki_geometry")) {
    check_keys(*kg, "ki_geometry", {"w", "L", "t"});
    Geometry g = cfg.geometry;
    if (const json* v = member(*kg, "w")) g.w = quantity(*v, Dimension::length, "ki_geometry.w");
    if (const json* v = member(*kg, "L")) g.L = quantity(*v, Dimension::length, "ki_geometry.L");
    if (const json* v = member(*kg, "t")) g.t = quantity(*v, Dimension::length, "ki_geometry.t");
    cfg.ki_geometry = g;
  } else if (cfg.scheme == Scheme::two_step) {
    cfg.defaults_applied.push_back("ki_geometry=geometry");
  }

  const json* temps = member(doc, "temperatures");
  if (temps) check_keys(*temps, "temperatures", {"T1", "T2"});
  cfg.T1 = fill.take(temps, "T1", "temperatures", Dimension::temperature, "10mK");
  if (temps && member(*temps, "T2")) {
    cfg.T2 = quantity((*temps)["T2"], Dimension::temperature, "temperatures.T2");
  } else {
    cfg.T2 = cfg.T1;
    if (cfg.scheme == Scheme::two_step) cfg.defaults_applied.push_back("temperatures.T2=T1");
  }

  if (registry) {
    cfg.materials = std::move(registry);
    cfg.materials_source = "override";
  } else if (const json* m = member(doc, "materials")) {
    cfg.materials = read_materials(*m, base_dir, cfg.materials_source);
  } else {
    cfg.materials = std::make_shared<const MaterialRegistry>(MaterialRegistry::builtin());
  }

  if (const json* b = member(doc, "occupancy_branch")) {
    try {
      cfg.options.branch = parse_branch(b->get<std::string>());
    } catch (const std::exception& e) {
      throw ConfigError("occupancy_branch", e.what());
    }
  } else {
    cfg.defaults_applied.push_back("occupancy_branch=physical");
  }

  if (member(doc, "xi") && member(doc, "xi_table"))
    throw ConfigError("xi", "give either xi or xi_table, not both");
  if (const json* x = member(doc, "xi")) {
    cfg.options.xi = quantity(*x, Dimension::dimensionless, "xi");
    if (!(cfg.options.xi > 0.0 && cfg.options.xi <= 1.0))
      throw ConfigError("xi", "must lie in (0, 1]");
  } else if (const json* xt = member(doc, "xi_table")) {
    cfg.options.xi_table = read_overlap(*xt, base_dir);
  } else {
    cfg.defaults_applied.push_back("xi=1");
  }

  if (const json* d = member(doc, "intermediate_dielectric_loss")) {
    if (!d->is_boolean()) throw ConfigError("intermediate_dielectric_loss", "expected a boolean");
    cfg.options.intermediate_dielectric_loss = d->get<bool>();
  }

  if (const json* f = member(doc, "format")) {
    std::string fmt = f->is_string() ? f->get<std::string>() : "";
    if (fmt != "csv" && fmt != "json") throw ConfigError("format", "expected csv or json");
    cfg.format = fmt;
  }

  try {
    cfg.geometry.validate();
    if (cfg.ki_geometry) cfg.ki_geometry->validate();
  } catch (const std::exception& e) {
    throw ConfigError("geometry", e.what());
  }
  if (!(cfg.T1 > 0.0)) throw ConfigError("temperatures.T1", "must be positive");
  if (!(cfg.T2 > 0.0)) throw ConfigError("temperatures.T2", "must be positive");
  cfg.frequency_plan();
  return cfg;
}

RunConfig load_config_file(const std::filesystem::path& path,
                           std::shared_ptr<const MaterialRegistry> registry) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", path.string() + ": " + e.what());
  }
  return resolve_config(doc, path.parent_path(), std::move(registry));
}

const std::vector<std::string>& parameter_paths() {
  static const std::vector<std::string> paths = {"w",    "L",    "t",  "ki.w", "ki.L",
                                                 "ki.t", "f_mu", "f_i", "f_po", "T1",
                                                 "T2",   "T",    "xi"};
  return paths;
}

bool is_parameter_path(const std::string& path) {
  const auto& p = parameter_paths();
  return std::find(p.begin(), p.end(), path) != p.end();
}

void set_parameter(RunConfig& cfg, const std::string& path, double value) {
  auto ki = [&]() -> Geometry& {
    if (!cfg.ki_geometry) cfg.ki_geometry = cfg.geometry;
    return *cfg.ki_geometry;
  };
  if (path == "w") cfg.geometry.w = value;
  else if (path == "L") cfg.geometry.L = value;
  else if (path == "t") cfg.geometry.t = value;
  else if (path == "ki.w") ki().w = value;
  else if (path == "ki.L") ki().L = value;
  else if (path == "ki.t") ki().t = value;
  else if (path == "f_mu") cfg.omega_mu = kTwoPi * value;
  else if (path == "f_i") cfg.omega_i = kTwoPi * value;
  else if (path == "f_po") cfg.omega_po = kTwoPi * value;
  else if (path == "T1") cfg.T1 = value;
  else if (path == "T2") cfg.T2 = value;
  else if (path == "T") cfg.T1 = cfg.T2 = value;
  else if (path == "xi") {
    cfg.options.xi = value;
    cfg.options.xi_table.reset();
  } else {
    throw ConfigError(path, "unknown parameter path");
  }
}

double get_parameter(const RunConfig& cfg, const std::string& path) {
  Geometry ki = cfg.effective_ki_geometry();
  if (path == "w") return cfg.geometry.w;
  if (path == "L") return cfg.geometry.L;
  if (path == "t") return cfg.geometry.t;
  if (path == "ki.w") return ki.w;
  if (path == "ki.L") return ki.L;
  if (path == "ki.t") return ki.t;
  if (path == "f_mu") return cfg.omega_mu / kTwoPi;
  if (path == "f_i") {
    if (!cfg.omega_i) throw ConfigError(path, "not set");
    return *cfg.omega_i / kTwoPi;
  }
  if (path == "f_po") return cfg.omega_po / kTwoPi;
  if (path == "T1" || path == "T") return cfg.T1;
  if (path == "T2") return cfg.T2;
  if (path == "xi") return cfg.options.xi;
  throw ConfigError(path, "unknown parameter path");
}

TransductionPoint evaluate(const RunConfig& cfg) {
  FrequencyPlan plan = cfg.frequency_plan();
  if (cfg.scheme == Scheme::single_step)
    return single_step_point(cfg.geometry, plan, cfg.T1, *cfg.materials, cfg.options);
  return two_step_point(cfg.effective_ki_geometry(), cfg.geometry, plan, cfg.T1, cfg.T2,
                        *cfg.materials, cfg.options);
}

nlohmann::ordered_json provenance(const RunConfig& cfg) {
  nlohmann::ordered_json p;
  p["tool"] = "terabridge";
  p["version"] = tool_version();
  auto& r = p["resolved"];
  r["scheme"] = to_string(cfg.scheme);
  r["frequencies_Hz"]["f_mu"] = cfg.omega_mu / kTwoPi;
  if (cfg.omega_i) r["frequencies_Hz"]["f_i"] = *cfg.omega_i / kTwoPi;
  r["frequencies_Hz"]["f_po"] = cfg.omega_po / kTwoPi;
  r["geometry_m"] = {{"w", cfg.geometry.w}, {"L", cfg.geometry.L}, {"t", cfg.geometry.t}};
  if (cfg.ki_geometry)
    r["ki_geometry_m"] = {
        {"w", cfg.ki_geometry->w}, {"L", cfg.ki_geometry->L}, {"t", cfg.ki_geometry->t}};
  else
    r["ki_geometry_m"] = "tied";
  r["temperatures_K"] = {{"T1", cfg.T1}, {"T2", cfg.T2}};
  r["occupancy_branch"] = to_string(cfg.options.branch);
  if (cfg.options.xi_table) {
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const auto& [w, xi] : cfg.options.xi_table->points) pts.push_back({w / kTwoPi, xi});
    r["xi_table_Hz"] = pts;
  } else {
    r["xi"] = cfg.options.xi;
  }
  r["intermediate_dielectric_loss"] = cfg.options.intermediate_dielectric_loss;
  r["format"] = cfg.format;
  p["defaults_applied"] = cfg.defaults_applied;
  auto& m = p["materials"];
  m["source"] = cfg.materials_source;
  for (const auto& name : cfg.materials->names()) {
    const Material& mat = cfg.materials->at(name);
    m["entries"][name] = {{"provenance", to_string(mat.provenance)}, {"source", mat.source}};
  }
  return p;
}

}  // namespace terabridge
