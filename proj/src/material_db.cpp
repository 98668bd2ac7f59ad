#include "terabridge/material_db.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "terabridge/constants.hpp"
#include "terabridge/errors.hpp"

namespace terabridge {

using nlohmann::json;

const char* to_string(Provenance p) { return p == Provenance::builtin ? "builtin" : "file"; }

namespace {

// Strong-coupling NbN gap ratio; keeps 2*gap0/h above 1 THz for Tc = 13 K.
constexpr double kNbNGapRatio = 2.05;

Material lithium_niobate() {
  Material m;
  m.name = kLithiumNiobate;
  m.thermal = ThermalMaterialParams{kLithiumNiobate, PowerLaw{4.0, 3.0}, PowerLaw{2.705e-4, 3.0},
                                    4640.0};
  OpticalMaterialParams o;
  o.alpha_optical = 84.0;  // 0.84 cm^-1 at 200 THz
  o.alpha_thz_low = 200.0;
  o.alpha_thz_high = 500.0;
  o.thz_band_edge = angular(1.2e12);
  o.n_optical = 2.3;
  o.n_thz = 4.95;
  o.n_g = 2.3;
  o.d33 = 27e-12;
  o.chi2 = 2.0 * o.d33;
  o.eps_mu = o.n_thz * o.n_thz;
  o.eps_i = o.n_thz * o.n_thz;
  o.eps_po = o.n_optical * o.n_optical;
  o.eps_o = o.n_optical * o.n_optical;
  m.optical = o;
  m.notes = {"density 4640 kg/m^3 (handbook value)",
             "chi2 = 2*d33; sub-THz eps = 4.95^2; optical eps = 2.3^2; n_g = phase index"};
  return m;
}

Material silica() {
  Material m;
  m.name = kSilica;
  m.thermal = ThermalMaterialParams{kSilica, AnchorLaw{{{0.01, 1e-4}, {1.0, 0.01}}},
                                    AnchorLaw{{{0.01, 1e-5}, {1.0, 1e-4}}}, 2200.0};
  m.notes = {"density 2200 kg/m^3 (handbook value)"};
  return m;
}

Material niobium_nitride() {
  Material m;
  m.name = kNiobiumNitride;
  m.thermal = ThermalMaterialParams{kNiobiumNitride, AnchorLaw{{{0.01, 0.005}, {1.0, 5.0}}},
                                    PolynomialLaw{{{0.0283, 1.0}, {0.0012, 3.0}}}, 8470.0};
  SuperconductorParams sc;
  sc.name = kNiobiumNitride;
  sc.Tc = 13.0;
  sc.gap0 = kNbNGapRatio * PhysicalConstants::k_B * sc.Tc;
  sc.N0 = 2.4e47;
  sc.rho_n = 2e-6;
  m.superconductor = sc;
  m.notes = {"density 8470 kg/m^3 (handbook value)",
             "Tc = 13 K, rho_n = 2e-6 Ohm m, N0 = 2.4e47 /(J m^3): thin-film literature values",
             "gap0 = 2.05 k_B Tc (strong coupling)"};
  return m;
}

// --- JSON parsing helpers ---------------------------------------------------

double number_field(const json& obj, const char* key, const std::string& entry) {
  const auto& v = obj.at(key);
  if (!v.is_number()) throw LoadError(entry, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::vector<std::pair<double, double>> pair_list(const json& arr, const std::string& entry,
                                                 const char* what) {
  if (!arr.is_array()) throw LoadError(entry, std::string(what) + " must be an array of pairs");
  std::vector<std::pair<double, double>> out;
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw LoadError(entry, std::string(what) + " entries must be [number, number]");
    out.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return out;
}

TemperatureLaw parse_law(const json& j, const std::string& entry,
                         const std::filesystem::path& base_dir) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw LoadError(entry, "law descriptor needs a string 'kind'");
  const auto kind = j["kind"].get<std::string>();
  try {
    if (kind == "power_law")
      return PowerLaw{number_field(j, "coeff", entry), number_field(j, "exponent", entry)};
    if (kind == "polynomial") return PolynomialLaw{pair_list(j.at("terms"), entry, "terms")};
    if (kind == "anchors") {
      AnchorLaw law{pair_list(j.at("points"), entry, "points")};
      if (law.points.size() < 2) throw LoadError(entry, "anchors need at least two points");
      for (std::size_t i = 0; i < law.points.size(); ++i) {
        if (!(law.points[i].first > 0.0) || !(law.points[i].second > 0.0))
          throw LoadError(entry, "anchor temperatures and values must be positive");
        if (i > 0 && law.points[i].first <= law.points[i - 1].first)
          throw LoadError(entry, "anchor temperatures must be strictly increasing");
      }
      return law;
    }
    if (kind == "table_file") {
      std::filesystem::path p = j.at("path").get<std::string>();
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      if (!std::filesystem::exists(p)) throw LoadError(entry, "table file not found: " + p.string());
      try {
        return TableFileLaw{p, read_anchor_table(p)};
      } catch (const LoadError&) {
        throw;
      } catch (const std::exception& e) {
        throw LoadError(entry, e.what());
      }
    }
  } catch (const json::exception& e) {
    throw LoadError(entry, std::string("bad '") + kind + "' law: " + e.what());
  }
  throw LoadError(entry, "unknown law kind '" + kind + "'");
}

void check_positive(double v, const std::string& entry, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw LoadError(entry, std::string(field) + " must be positive (got " + std::to_string(v) + ")");
}

void apply_thermal(Material& m, const json& j, const std::filesystem::path& base_dir) {
  const bool has_any =
      j.contains("density") || j.contains("thermal_conductivity") || j.contains("heat_capacity");
  if (!has_any) return;
  if (!m.thermal) {
    if (!j.contains("density") || !j.contains("thermal_conductivity") ||
        !j.contains("heat_capacity"))
      throw LoadError(m.name,
                      "thermal block needs density, thermal_conductivity and heat_capacity");
    m.thermal = ThermalMaterialParams{m.name, PowerLaw{}, PowerLaw{}, 0.0};
  }
  if (j.contains("density")) m.thermal->density = number_field(j, "density", m.name);
  if (j.contains("thermal_conductivity"))
    m.thermal->g_th_law = parse_law(j["thermal_conductivity"], m.name, base_dir);
  if (j.contains("heat_capacity"))
    m.thermal->c_th_law = parse_law(j["heat_capacity"], m.name, base_dir);
  check_positive(m.thermal->density, m.name, "density");
}

void apply_optical(Material& m, const json& j) {
  if (!j.contains("optical")) return;
  const json& o = j["optical"];
  if (!o.is_object()) throw LoadError(m.name, "'optical' must be an object");
  const bool fresh = !m.optical;
  OpticalMaterialParams p = m.optical.value_or(OpticalMaterialParams{});
  static const char* required[] = {"alpha_optical", "n_optical", "n_thz", "chi2"};
  if (fresh)
    for (const char* key : required)
      if (!o.contains(key) && !(std::string(key) == "chi2" && o.contains("d33")))
        throw LoadError(m.name, std::string("optical block missing '") + key + "'");
  struct Field {
    const char* key;
    double OpticalMaterialParams::*member;
  };
  static const Field fields[] = {
      {"alpha_optical", &OpticalMaterialParams::alpha_optical},
      {"alpha_thz_low", &OpticalMaterialParams::alpha_thz_low},
      {"alpha_thz_high", &OpticalMaterialParams::alpha_thz_high},
      {"n_optical", &OpticalMaterialParams::n_optical},
      {"n_thz", &OpticalMaterialParams::n_thz},
      {"n_g", &OpticalMaterialParams::n_g},
      {"d33", &OpticalMaterialParams::d33},
      {"chi2", &OpticalMaterialParams::chi2},
      {"eps_mu", &OpticalMaterialParams::eps_mu},
      {"eps_i", &OpticalMaterialParams::eps_i},
      {"eps_po", &OpticalMaterialParams::eps_po},
      {"eps_o", &OpticalMaterialParams::eps_o},
  };
  for (const auto& f : fields)
    if (o.contains(f.key)) p.*(f.member) = number_field(o, f.key, m.name);
  if (o.contains("thz_band_edge_hz"))
    p.thz_band_edge = angular(number_field(o, "thz_band_edge_hz", m.name));
  if (o.contains("d33") && !o.contains("chi2")) p.chi2 = 2.0 * p.d33;
  if (fresh) {
    // Derived defaults for a new medium.
    if (!o.contains("n_g")) p.n_g = p.n_optical;
    if (!o.contains("eps_mu")) p.eps_mu = p.n_thz * p.n_thz;
    if (!o.contains("eps_i")) p.eps_i = p.n_thz * p.n_thz;
    if (!o.contains("eps_po")) p.eps_po = p.n_optical * p.n_optical;
    if (!o.contains("eps_o")) p.eps_o = p.n_optical * p.n_optical;
    if (!o.contains("thz_band_edge_hz")) p.thz_band_edge = angular(1.2e12);
  }
  if (p.alpha_optical < 0 || p.alpha_thz_low < 0 || p.alpha_thz_high < 0)
    throw LoadError(m.name, "absorption coefficients must be non-negative");
  if (p.n_optical < 1 || p.n_thz < 1 || p.n_g < 1)
    throw LoadError(m.name, "refractive and group indices must be >= 1");
  if (!(p.chi2 > 0)) throw LoadError(m.name, "chi2 must be positive");
  if (p.eps_mu < 1 || p.eps_i < 1 || p.eps_po < 1 || p.eps_o < 1)
    throw LoadError(m.name, "relative permittivities must be >= 1");
  if (!(p.thz_band_edge > 0)) throw LoadError(m.name, "thz_band_edge_hz must be positive");
  m.optical = p;
}

void apply_superconductor(Material& m, const json& j, const std::filesystem::path& base_dir) {
  if (!j.contains("superconductor")) return;
  const json& s = j["superconductor"];
  if (!s.is_object()) throw LoadError(m.name, "'superconductor' must be an object");
  const bool fresh = !m.superconductor;
  SuperconductorParams p = m.superconductor.value_or(SuperconductorParams{});
  p.name = m.name;
  if (fresh)
    for (const char* key : {"Tc", "N0", "rho_n"})
      if (!s.contains(key))
        throw LoadError(m.name, std::string("superconductor block missing '") + key + "'");
  const double old_tc = p.Tc;
  if (s.contains("Tc")) p.Tc = number_field(s, "Tc", m.name);
  if (s.contains("N0")) p.N0 = number_field(s, "N0", m.name);
  if (s.contains("rho_n")) p.rho_n = number_field(s, "rho_n", m.name);
  if (s.contains("gap0")) {
    p.gap0 = number_field(s, "gap0", m.name);
  } else if (s.contains("gap_ratio")) {
    p.gap0 = number_field(s, "gap_ratio", m.name) * PhysicalConstants::k_B * p.Tc;
  } else if (fresh) {
    p.gap0 = bcs_gap(p.Tc);
  } else if (p.Tc != old_tc) {
    p.gap0 *= p.Tc / old_tc;  // keep the gap ratio when only Tc changes
  }
  if (s.contains("sigma_model")) {
    const json& model = s["sigma_model"];
    if (model.is_string() && model.get<std::string>() == "analytic") {
      p.table.reset();
    } else if (model.is_object() && model.contains("table")) {
      std::filesystem::path path = model["table"].get<std::string>();
      if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
      if (!std::filesystem::exists(path))
        throw LoadError(m.name, "sigma table file not found: " + path.string());
      try {
        p.table = std::make_shared<const SigmaTable>(SigmaTable::from_csv(path));
      } catch (const std::exception& e) {
        throw LoadError(m.name, e.what());
      }
    } else {
      throw LoadError(m.name, "sigma_model must be \"analytic\" or {\"table\": path}");
    }
  }
  check_positive(p.Tc, m.name, "Tc");
  check_positive(p.gap0, m.name, "gap0");
  check_positive(p.N0, m.name, "N0");
  check_positive(p.rho_n, m.name, "rho_n");
  m.superconductor = p;
}

}  // namespace

MaterialRegistry MaterialRegistry::builtin() {
  MaterialRegistry reg;
  reg.entries_ = {lithium_niobate(), silica(), niobium_nitride()};
  return reg;
}

const Material* MaterialRegistry::find(const std::string& name) const {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const Material& m) { return m.name == name; });
  return it == entries_.end() ? nullptr : &*it;
}

const Material& MaterialRegistry::at(const std::string& name) const {
  if (const Material* m = find(name)) return *m;
  throw ConfigError(name, "unknown material");
}

std::vector<std::string> MaterialRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& m : entries_) out.push_back(m.name);
  return out;
}

const ThermalMaterialParams& MaterialRegistry::thermal(const std::string& name) const {
  const Material& m = at(name);
  if (!m.thermal) throw ConfigError(name, "material has no thermal properties");
  return *m.thermal;
}

const OpticalMaterialParams& MaterialRegistry::optical(const std::string& name) const {
  const Material& m = at(name);
  if (!m.optical) throw ConfigError(name, "material has no optical properties");
  return *m.optical;
}

const SuperconductorParams& MaterialRegistry::superconductor(const std::string& name) const {
  const Material& m = at(name);
  if (!m.superconductor) throw ConfigError(name, "material is not a superconductor");
  return *m.superconductor;
}

void MaterialRegistry::upsert(Material m) {
  for (auto& e : entries_)
    if (e.name == m.name) {
      e = std::move(m);
      return;
    }
  entries_.push_back(std::move(m));
}

MaterialRegistry load_material_db(const json& doc, const std::filesystem::path& base_dir) {
  MaterialRegistry reg = MaterialRegistry::builtin();
  if (doc.is_null() || (doc.is_object() && doc.empty())) return reg;
  if (!doc.is_object()) throw LoadError("", "material document must be an object");
  if (!doc.contains("materials")) return reg;
  const json& mats = doc["materials"];
  if (!mats.is_object()) throw LoadError("", "'materials' must be an object keyed by name");
  const std::string source = base_dir.empty() ? std::string("<inline>") : base_dir.string();
  for (const auto& [name, entry] : mats.items()) {
    if (!entry.is_object()) throw LoadError(name, "entry must be an object");
    Material m;
    if (const Material* existing = reg.find(name)) {
      m = *existing;
    } else {
      m.name = name;
    }
    m.provenance = Provenance::file;
    m.source = source;
    apply_thermal(m, entry, base_dir);
    apply_optical(m, entry);
    apply_superconductor(m, entry, base_dir);
    if (!m.thermal && !m.optical && !m.superconductor)
      throw LoadError(name, "entry defines no thermal, optical or superconductor properties");
    reg.upsert(std::move(m));
  }
  return reg;
}

MaterialRegistry load_material_db_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError(path.string(), "cannot open material database");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw LoadError(path.string(), std::string("malformed document: ") + e.what());
  }
  MaterialRegistry reg = load_material_db(doc, path.parent_path());
  return reg;
}

std::vector<std::string> validate_registry(const MaterialRegistry& reg) {
  std::vector<std::string> problems;
  std::vector<double> grid;
  for (int i = 1; i <= 200; ++i) grid.push_back(10.0 * i / 200.0);
  grid.insert(grid.begin(), {1e-3, 5e-3, 1e-2});
  for (const auto& name : reg.names()) {
    const Material& m = reg.at(name);
    if (m.thermal) {
      if (!(m.thermal->density > 0)) problems.push_back(name + ": density must be positive");
      for (const auto& [law_name, law] :
           {std::pair{"thermal_conductivity", &m.thermal->g_th_law},
            std::pair{"heat_capacity", &m.thermal->c_th_law}}) {
        for (double T : grid) {
          double v = 0.0;
          try {
            v = evaluate(*law, T);
          } catch (const std::exception& e) {
            problems.push_back(name + ": " + law_name + " failed at T = " + std::to_string(T) +
                               " K: " + e.what());
            break;
          }
          if (!(v > 0.0) || !std::isfinite(v)) {
            problems.push_back(name + ": " + law_name + " is not positive at T = " +
                               std::to_string(T) + " K");
            break;
          }
        }
      }
    }
    if (m.optical) {
      const auto& o = *m.optical;
      if (o.alpha_optical < 0 || o.alpha_thz_low < 0 || o.alpha_thz_high < 0)
        problems.push_back(name + ": optical alpha must be non-negative");
      if (o.n_optical < 1 || o.n_thz < 1 || o.n_g < 1)
        problems.push_back(name + ": optical indices must be >= 1");
      if (!(o.chi2 > 0)) problems.push_back(name + ": optical chi2 must be positive");
      if (o.eps_mu < 1 || o.eps_i < 1 || o.eps_po < 1 || o.eps_o < 1)
        problems.push_back(name + ": optical permittivities must be >= 1");
    }
    if (m.superconductor) {
      const auto& s = *m.superconductor;
      if (!(s.Tc > 0 && s.gap0 > 0 && s.N0 > 0 && s.rho_n > 0))
        problems.push_back(name + ": superconductor Tc, gap0, N0, rho_n must be positive");
      else
        try {
          const double omega = 0.5 * s.gap0 / PhysicalConstants::hbar;
          for (double f : {0.05, 0.3, 0.6, 0.9}) {
            auto sig = sc_conductivity(s, omega, f * s.Tc);
            if (!(sig.sigma1 >= 0 && sig.sigma2 > 0))
              problems.push_back(name + ": sigma_model gives non-physical conductivity");
          }
        } catch (const std::exception& e) {
          problems.push_back(name + ": sigma_model failed: " + e.what());
        }
    }
  }
  return problems;
}

json to_json(const TemperatureLaw& law) {
  struct Visitor {
    json operator()(const PowerLaw& l) const {
      return {{"kind", "power_law"}, {"coeff", l.coeff}, {"exponent", l.exponent}};
    }
    json operator()(const PolynomialLaw& l) const {
      json terms = json::array();
      for (const auto& [c, e] : l.terms) terms.push_back({c, e});
      return {{"kind", "polynomial"}, {"terms", terms}};
    }
    json operator()(const AnchorLaw& l) const {
      json pts = json::array();
      for (const auto& [t, v] : l.points) pts.push_back({t, v});
      return {{"kind", "anchors"}, {"points", pts}};
    }
    json operator()(const TableFileLaw& l) const {
      return {{"kind", "table_file"}, {"path", l.path.string()}};
    }
  };
  return std::visit(Visitor{}, law);
}

json to_json(const Material& m) {
  json j;
  j["name"] = m.name;
  j["provenance"] = to_string(m.provenance);
  if (!m.source.empty()) j["source"] = m.source;
  if (m.thermal) {
    j["density"] = m.thermal->density;
    j["thermal_conductivity"] = to_json(m.thermal->g_th_law);
    j["heat_capacity"] = to_json(m.thermal->c_th_law);
  }
  if (m.optical) {
    const auto& o = *m.optical;
    j["optical"] = {{"alpha_optical", o.alpha_optical},
                    {"alpha_thz_low", o.alpha_thz_low},
                    {"alpha_thz_high", o.alpha_thz_high},
                    {"thz_band_edge_hz", o.thz_band_edge / kTwoPi},
                    {"n_optical", o.n_optical},
                    {"n_thz", o.n_thz},
                    {"n_g", o.n_g},
                    {"d33", o.d33},
                    {"chi2", o.chi2},
                    {"eps_mu", o.eps_mu},
                    {"eps_i", o.eps_i},
                    {"eps_po", o.eps_po},
                    {"eps_o", o.eps_o}};
  }
  if (m.superconductor) {
    const auto& s = *m.superconductor;
    j["superconductor"] = {{"Tc", s.Tc}, {"gap0", s.gap0}, {"N0", s.N0}, {"rho_n", s.rho_n}};
    if (s.table)
      j["superconductor"]["sigma_model"] = {{"table", s.table->path().string()}};
    else
      j["superconductor"]["sigma_model"] = "analytic";
  }
  if (!m.notes.empty()) j["notes"] = m.notes;
  return j;
}

}  // namespace terabridge
