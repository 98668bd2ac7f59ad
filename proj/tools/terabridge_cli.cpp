// Command-line front end: point evaluation, sweeps, figure datasets,
// geometry optimization and material database inspection.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "terabridge/config.hpp"
#include "terabridge/constants.hpp"
#include "terabridge/errors.hpp"
#include "terabridge/explore.hpp"
#include "terabridge/material_db.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace terabridge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitDiagnostic = 2;
constexpr const char* kMaterialsEnv = "TERABRIDGE_MATERIALS";

struct Options {
  std::string config;
  std::string materials;
  std::string format;
  std::string out;
  std::string branch;
  int jobs = 0;
  bool verbose = false;
};

json read_json(const fs::path& path, const std::string& field) {
  std::ifstream in(path);
  if (!in) throw ConfigError(field, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(field, path.string() + ": " + e.what());
  }
}

std::shared_ptr<const MaterialRegistry> registry_override(const Options& o) {
  if (o.materials.empty()) return nullptr;
  return std::make_shared<const MaterialRegistry>(load_material_db_file(o.materials));
}

/// Registry for commands without a run config: flag, then env, then built-ins.
std::shared_ptr<const MaterialRegistry> standalone_registry(const Options& o, std::string& source) {
  if (!o.materials.empty()) {
    source = o.materials;
    return registry_override(o);
  }
  if (const char* env = std::getenv(kMaterialsEnv); env && *env) {
    source = env;
    return std::make_shared<const MaterialRegistry>(load_material_db_file(env));
  }
  source = "builtin";
  return std::make_shared<const MaterialRegistry>(MaterialRegistry::builtin());
}

/// Config document from --config patched with `extra`, materials from the
/// flag, the document, or the environment in that order.
RunConfig build_config(const Options& o, json extra = json::object(), fs::path base_dir = {}) {
  json doc = json::object();
  if (!o.config.empty()) {
    doc = read_json(o.config, "config");
    base_dir = fs::path(o.config).parent_path();
  }
  doc.merge_patch(extra);
  if (!o.branch.empty()) doc["occupancy_branch"] = o.branch;
  if (!o.format.empty()) doc["format"] = o.format;
  if (!doc.contains("materials") && o.materials.empty()) {
    if (const char* env = std::getenv(kMaterialsEnv); env && *env)
      doc["materials"] = fs::absolute(env).string();
  }
  RunConfig cfg = resolve_config(doc, base_dir, registry_override(o));
  if (!o.materials.empty()) cfg.materials_source = o.materials;
  return cfg;
}

/// Splits a spec document into the keys in `own` and the remaining config keys.
std::pair<json, json> split_spec(const json& doc, std::initializer_list<const char*> own) {
  if (!doc.is_object()) throw ConfigError("spec", "expected an object");
  json mine = json::object(), rest = json::object();
  for (const auto& [k, v] : doc.items()) {
    bool is_own = false;
    for (const char* o : own) is_own = is_own || k == o;
    (is_own ? mine : rest)[k] = v;
  }
  return {mine, rest};
}

ExecutionPolicy policy(const Options& o) { return {true, o.jobs}; }

void write_table(const Table& t, const std::string& format, std::ostream& out) {
  if (format == "json")
    t.write_jsonl(out);
  else
    t.write_csv(out);
}

void emit(const Table& t, const std::string& format, const Options& o,
          const nlohmann::ordered_json& prov) {
  if (o.out.empty()) {
    write_table(t, format, std::cout);
    return;
  }
  {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ConfigError("out", "cannot write " + o.out);
    write_table(t, format, f);
  }
  std::ofstream side(o.out + ".provenance.json", std::ios::binary);
  if (!side) throw ConfigError("out", "cannot write " + o.out + ".provenance.json");
  side << prov.dump(2) << '\n';
}

nlohmann::ordered_json sidecar(const std::string& command, const RunConfig& cfg, const Options& o) {
  nlohmann::ordered_json p;
  p["command"] = command;
  p["data_file"] = o.out.empty() ? std::string() : fs::path(o.out).filename().string();
  p["format"] = cfg.format;
  p["verbose"] = o.verbose;
  const auto resolved = provenance(cfg);
  for (const auto& [k, v] : resolved.items()) p[k] = v;
  return p;
}

int cmd_point(const Options& o) {
  RunConfig cfg = build_config(o);
  TransductionPoint pt = evaluate(cfg);
  emit(point_table(pt, o.verbose), cfg.format, o, sidecar("point", cfg, o));
  if (pt.runaway()) {
    std::cerr << "warning: thermal runaway; values are evaluated at the bracket cap\n";
    return kExitDiagnostic;
  }
  return kExitOk;
}

int cmd_sweep(const Options& o, const std::string& spec_path) {
  auto [mine, rest] = split_spec(read_json(spec_path, "spec"), {"axes", "fixed"});
  if (rest.contains("scheme")) mine["scheme"] = rest["scheme"];
  SweepSpec spec = parse_sweep_spec(mine);
  // A swept or fixed f_i stands in for the base value the two_step scheme requires.
  if (!rest.contains("frequencies") || !rest["frequencies"].contains("f_i")) {
    for (const Axis& a : spec.axes)
      if (a.param == "f_i") rest["frequencies"]["f_i"] = a.points().front();
    if (auto it = spec.fixed.find("f_i"); it != spec.fixed.end()) rest["frequencies"]["f_i"] = it->second;
  }
  RunConfig cfg = build_config(o, rest, fs::path(spec_path).parent_path());
  Table t = run_sweep(spec, cfg, policy(o), o.verbose);
  auto prov = sidecar("sweep", cfg, o);
  prov["sweep"] = spec.to_json();
  emit(t, cfg.format, o, prov);
  return kExitOk;
}

int cmd_figure(const Options& o, const std::string& id) {
  std::string source;
  auto reg = standalone_registry(o, source);
  FigureSpec spec = figure_spec(id, reg);
  spec.base.materials_source = source;
  if (!o.branch.empty()) spec.base.options.branch = parse_branch(o.branch);
  const std::string format = o.format.empty() ? "csv" : o.format;
  spec.base.format = format;
  Table t = figure_data(spec, policy(o));
  auto prov = sidecar("figure", spec.base, o);
  prov["figure"] = spec.to_json();
  prov["spec_hash"] = spec_hash(spec);
  emit(t, format, o, prov);
  return kExitOk;
}

int cmd_optimize(const Options& o, const std::string& spec_path) {
  auto [mine, rest] =
      split_spec(read_json(spec_path, "spec"), {"bounds", "n_max", "budget", "grid_points", "rounds"});
  OptimizeSpec spec = parse_optimize_spec(mine);
  if (spec.f_i && (!rest.contains("frequencies") || !rest["frequencies"].contains("f_i")))
    rest["frequencies"]["f_i"] = spec.f_i->lo;
  RunConfig cfg = build_config(o, rest, fs::path(spec_path).parent_path());
  OptimizeResult res = optimize_geometry(spec, cfg, policy(o));

  Table best;
  best.columns = record_columns(cfg.scheme, o.verbose);
  if (res.best) best.rows.push_back(record_row(*res.best, o.verbose));
  auto prov = sidecar("optimize", cfg, o);
  prov["optimize"] = spec.to_json();
  prov["evaluations"] = res.evaluations;
  prov["budget_exhausted"] = res.budget_exhausted;
  prov["feasible"] = res.feasible;
  if (!res.feasible) prov["report"] = res.report;
  emit(best, cfg.format, o, prov);
  if (!o.out.empty()) {
    std::ofstream f(o.out + ".trace." + (cfg.format == "json" ? "jsonl" : "csv"), std::ios::binary);
    write_table(res.trace, cfg.format, f);
  }
  std::cerr << res.evaluations << " evaluations" << (res.budget_exhausted ? " (budget exhausted)" : "")
            << '\n';
  if (!res.feasible) {
    std::cerr << "infeasible: " << res.report << '\n';
    return kExitDiagnostic;
  }
  return kExitOk;
}

std::string si(double v, double scale, const char* unit) {
  std::ostringstream s;
  s << std::setprecision(6) << v / scale << ' ' << unit;
  return s.str();
}

void show_material(const Material& m, std::ostream& out) {
  out << m.name << "  [" << to_string(m.provenance) << (m.source.empty() ? "" : ": " + m.source)
      << "]\n";
  if (m.thermal) {
    out << "  thermal\n";
    out << "    density        " << si(m.thermal->density, 1.0, "kg/m^3") << '\n';
    out << "    g_th(T)        " << describe(m.thermal->g_th_law) << "  W/(m K)\n";
    out << "    c_th(T)        " << describe(m.thermal->c_th_law) << "  J/(kg K)\n";
  }
  if (const auto& o = m.optical) {
    out << "  optical\n";
    out << "    d33            " << si(o->d33, 1e-12, "pm/V") << '\n';
    out << "    chi2           " << si(o->chi2, 1e-12, "pm/V") << '\n';
    out << "    n (optical)    " << o->n_optical << '\n';
    out << "    n_g (optical)  " << o->n_g << '\n';
    out << "    n (THz)        " << o->n_thz << '\n';
    out << "    alpha optical  " << si(o->alpha_optical, 1.0, "1/m") << '\n';
    out << "    alpha THz      " << si(o->alpha_thz_low, 1.0, "1/m") << " -> "
        << si(o->alpha_thz_high, 1.0, "1/m") << " at "
        << si(o->thz_band_edge / kTwoPi, 1e12, "THz") << '\n';
    out << "    eps mu/i/po/o  " << o->eps_mu << " / " << o->eps_i << " / " << o->eps_po << " / "
        << o->eps_o << '\n';
  }
  if (const auto& s = m.superconductor) {
    out << "  superconductor\n";
    out << "    Tc             " << si(s->Tc, 1.0, "K") << '\n';
    out << "    gap0           " << si(s->gap0, PhysicalConstants::k_B * s->Tc, "k_B Tc") << '\n';
    out << "    N0             " << si(s->N0, 1.0, "1/(J m^3)") << '\n';
    out << "    rho_n          " << si(s->rho_n, 1.0, "Ohm m") << '\n';
    out << "    sigma model    " << (s->table ? "table" : "analytic") << '\n';
  }
  for (const auto& n : m.notes) out << "  note: " << n << '\n';
}

int cmd_materials(const Options& o, const std::string& action, const std::string& name) {
  std::string source;
  auto reg = standalone_registry(o, source);
  if (action == "list") {
    for (const auto& n : reg->names()) {
      const Material& m = reg->at(n);
      std::cout << n << '\t' << to_string(m.provenance) << (m.source.empty() ? "" : '\t' + m.source)
                << '\n';
    }
    return kExitOk;
  }
  if (action == "show") {
    if (name.empty()) throw ConfigError("materials show", "material name required");
    const Material* m = reg->find(name);
    if (!m) throw ConfigError(name, "no such material");
    show_material(*m, std::cout);
    return kExitOk;
  }
  if (action == "validate") {
    auto problems = validate_registry(*reg);
    for (const auto& p : problems) std::cerr << "invalid: " << p << '\n';
    if (!problems.empty()) return kExitConfig;
    std::cout << reg->size() << " materials valid (" << source << ")\n";
    return kExitOk;
  }
  throw ConfigError("materials", "unknown action '" + action + "' (list, show, validate)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-step microwave-to-optical transducer design tool"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--config", o.config, "Run configuration file (JSON)");
  app.add_option("--materials", o.materials, "Material database file")
      ->envname(kMaterialsEnv);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", o.out, "Output file; a provenance sidecar is written next to it");
  app.add_option("--jobs", o.jobs, "Worker threads for grid evaluation (0: all)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--occupancy-branch", o.branch, "Bath weighting of the occupancy")
      ->check(CLI::IsMember({"physical", "as_printed"}));
  app.add_flag("--verbose", o.verbose, "Report both occupancy branches");

  std::string spec_path, figure_id, action, material;
  auto* point = app.add_subcommand("point", "Evaluate one design point");
  auto* sweep = app.add_subcommand("sweep", "Evaluate a parameter grid");
  sweep->add_option("spec", spec_path, "Sweep spec file")->required();
  auto* figure = app.add_subcommand("figure", "Regenerate a figure dataset");
  figure->add_option("id", figure_id, "Figure id")->required();
  auto* optimize = app.add_subcommand("optimize", "Constrained geometry search");
  optimize->add_option("spec", spec_path, "Optimization spec file")->required();
  auto* materials = app.add_subcommand("materials", "Inspect the material database");
  materials->add_option("action", action, "list, show or validate")->required();
  materials->add_option("name", material, "Material name for show");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*point) return cmd_point(o);
    if (*sweep) return cmd_sweep(o, spec_path);
    if (*figure) return cmd_figure(o, figure_id);
    if (*optimize) return cmd_optimize(o, spec_path);
    if (*materials) return cmd_materials(o, action, material);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
