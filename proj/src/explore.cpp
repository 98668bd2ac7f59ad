#include "terabridge/explore.hpp"

#include "parallel.hpp"

#include <cmath>

#include "terabridge/constants.hpp"
#include "terabridge/errors.hpp"
#include "terabridge/units.hpp"


namespace terabridge {

using nlohmann::json;

namespace {

template <class Emit>
void visit_record(Scheme scheme, bool verbose, const TransductionPoint* pt, Emit&& emit) {
  static const TransductionPoint blank;
  const TransductionPoint& p = pt ? *pt : blank;
  const bool two = scheme == Scheme::two_step;
  const char* eta = two ? "eta2" : "eta1";
  const char* n = two ? "n_mu2" : "n_mu1";

  emit("scheme", Cell{std::string(to_string(scheme))});
  emit("w_m", Cell{p.geometry.w});
  emit("L_m", Cell{p.geometry.L});
  emit("t_m", Cell{p.geometry.t});
  if (two) {
    emit("ki_w_m", Cell{p.ki_geometry.w});
    emit("ki_L_m", Cell{p.ki_geometry.L});
    emit("ki_t_m", Cell{p.ki_geometry.t});
  }
  emit("omega_mu_rad_s", Cell{p.freqs.omega_mu});
  if (two) {
    emit("omega_i_rad_s", Cell{p.freqs.omega_i.value_or(0.0)});
    emit("omega_pi_rad_s", Cell{p.freqs.omega_pi.value_or(0.0)});
  }
  emit("omega_po_rad_s", Cell{p.freqs.omega_po});
  emit("omega_o_rad_s", Cell{p.freqs.omega_o});
  emit("T1_K", Cell{p.T1});
  if (two) emit("T2_K", Cell{p.T2});
  emit("xi", Cell{p.xi});
  emit("occupancy_branch", Cell{std::string(to_string(p.branch))});
  emit(eta, Cell{p.eta_total});
  emit(n, Cell{p.n_total});
  if (verbose) {
    const bool phys = p.branch == OccupancyBranch::physical;
    emit(std::string(n) + "_physical", Cell{phys ? p.n_total : p.n_total_alt});
    emit(std::string(n) + "_as_printed", Cell{phys ? p.n_total_alt : p.n_total});
  }
  emit("flags", Cell{p.flags.to_string()});

  static const char* const single_names[] = {"eo"};
  static const char* const two_names[] = {"ki", "eo"};
  const char* const* names = two ? two_names : single_names;
  const std::size_t count = two ? 2 : 1;
  for (std::size_t k = 0; k < count; ++k) {
    const std::string s = names[k];
    const StageResult* st = pt ? pt->stage(s) : nullptr;
    static const StageResult none;
    const StageResult& r = st ? *st : none;
    emit(s + "_dT_K", Cell{r.thermal.delta_T});
    emit(s + "_T_K", Cell{r.thermal.temperature()});
    emit(s + "_converged", Cell{r.thermal.converged ? 1.0 : 0.0});
    emit(s + "_runaway", Cell{r.thermal.runaway ? 1.0 : 0.0});
    emit(s + "_iterations", Cell{static_cast<double>(r.thermal.iterations)});
    emit(s + "_residual_K", Cell{r.thermal.residual});
    emit(s + "_omega_low_rad_s", Cell{r.omega_low});
    emit(s + "_kappa_low_int_rad_s", Cell{r.loss_low.kappa_int()});
    emit(s + "_kappa_low_ext_rad_s", Cell{r.loss_low.kappa_ext()});
    emit(s + "_kappa_high_int_rad_s", Cell{r.loss_high.kappa_int()});
    emit(s + "_kappa_high_ext_rad_s", Cell{r.loss_high.kappa_ext()});
    emit(s + "_g_rad_s", Cell{r.coupling});
    emit(s + "_pump_photons", Cell{r.pump_photons});
    emit(s + "_eta", Cell{r.eta_ext});
    emit(s + "_n_added", Cell{r.n_added});
    if (verbose) {
      const bool phys = p.branch == OccupancyBranch::physical;
      emit(s + "_n_added_physical", Cell{phys ? r.n_added : r.n_added_alt});
      emit(s + "_n_added_as_printed", Cell{phys ? r.n_added_alt : r.n_added});
    }
  }
}

units::Dimension dimension_of(const std::string& path) {
  if (path == "xi") return units::Dimension::dimensionless;
  if (path.rfind("f_", 0) == 0) return units::Dimension::frequency;
  if (path[0] == 'T') return units::Dimension::temperature;
  return units::Dimension::length;
}

const char* unit_of(const std::string& path) {
  switch (dimension_of(path)) {
    case units::Dimension::frequency: return "_Hz";
    case units::Dimension::length: return "_m";
    case units::Dimension::temperature: return "_K";
    default: return "";
  }
}

double spec_quantity(const json& v, const std::string& path, const std::string& field) {
  try {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return units::parse_quantity(v.get<std::string>(), dimension_of(path));
  } catch (const std::exception& e) {
    throw ConfigError(field, e.what());
  }
  throw ConfigError(field, "expected a number or a quantity string");
}

const char* to_string(GridKind g) {
  switch (g) {
    case GridKind::linear: return "linear";
    case GridKind::log: return "log";
    case GridKind::list: return "list";
  }
  return "?";
}

}  // namespace

std::vector<std::string> record_columns(Scheme scheme, bool verbose) {
  std::vector<std::string> cols;
  visit_record(scheme, verbose, nullptr, [&](const std::string& name, Cell) { cols.push_back(name); });
  return cols;
}

std::vector<Cell> record_row(const TransductionPoint& pt, bool verbose) {
  std::vector<Cell> row;
  visit_record(pt.scheme, verbose, &pt, [&](const std::string&, Cell c) { row.push_back(std::move(c)); });
  return row;
}

Table point_table(const TransductionPoint& pt, bool verbose) {
  Table t;
  t.columns = record_columns(pt.scheme, verbose);
  t.rows.push_back(record_row(pt, verbose));
  return t;
}

std::vector<double> Axis::points() const {
  if (grid == GridKind::list) return values;
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double f = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
    if (grid == GridKind::log)
      out[k] = std::exp(std::log(min) + f * (std::log(max) - std::log(min)));
    else
      out[k] = min + f * (max - min);
  }
  if (count > 1) {
    out.front() = min;
    out.back() = max;
  }
  return out;
}

std::string Axis::column() const {
  std::string base = param;
  for (char& ch : base)
    if (ch == '.') ch = '_';
  return base + "_axis" + unit_of(param);
}

void SweepSpec::validate() const {
  if (axes.empty()) throw ConfigError("axes", "at least one axis is required");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const Axis& a = axes[i];
    const std::string field = "axes[" + std::to_string(i) + "]";
    if (!is_parameter_path(a.param)) throw ConfigError(field + ".param", "unknown parameter path '" + a.param + "'");
    if (a.grid == GridKind::list) {
      if (a.values.empty()) throw ConfigError(field + ".values", "must not be empty");
      continue;
    }
    if (a.count < 2) throw ConfigError(field + ".count", "must be at least 2");
    if (!(a.min < a.max)) throw ConfigError(field, "min must be below max");
    if (a.grid == GridKind::log && !(a.min > 0.0)) throw ConfigError(field + ".min", "log grids need min > 0");
  }
  for (const auto& [path, _] : fixed)
    if (!is_parameter_path(path)) throw ConfigError("fixed." + path, "unknown parameter path");
}

std::size_t SweepSpec::cells() const {
  std::size_t n = 1;
  for (const Axis& a : axes) n *= a.grid == GridKind::list ? a.values.size() : static_cast<std::size_t>(a.count);
  return n;
}

nlohmann::ordered_json SweepSpec::to_json() const {
  nlohmann::ordered_json j;
  if (scheme) j["scheme"] = terabridge::to_string(*scheme);
  j["axes"] = nlohmann::ordered_json::array();
  for (const Axis& a : axes) {
    nlohmann::ordered_json ax;
    ax["param"] = a.param;
    ax["grid"] = to_string(a.grid);
    if (a.grid == GridKind::list) {
      ax["values"] = a.values;
    } else {
      ax["min"] = a.min;
      ax["max"] = a.max;
      ax["count"] = a.count;
    }
    j["axes"].push_back(ax);
  }
  j["fixed"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : fixed) j["fixed"][k] = v;
  return j;
}

SweepSpec parse_sweep_spec(const json& doc) {
  SweepSpec spec;
  if (!doc.is_object()) throw ConfigError("sweep", "expected an object");
  if (doc.contains("scheme")) {
    try {
      spec.scheme = parse_scheme(doc["scheme"].get<std::string>());
    } catch (const std::exception& e) {
      throw ConfigError("scheme", e.what());
    }
  }
  if (!doc.contains("axes") || !doc["axes"].is_array()) throw ConfigError("axes", "expected a list of axes");
  const json& axes = doc["axes"];
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const json& a = axes[i];
    const std::string field = "axes[" + std::to_string(i) + "]";
    if (!a.is_object() || !a.contains("param") || !a["param"].is_string())
      throw ConfigError(field + ".param", "missing");
    Axis ax;
    ax.param = a["param"].get<std::string>();
    if (!is_parameter_path(ax.param)) throw ConfigError(field + ".param", "unknown parameter path '" + ax.param + "'");
    const std::string grid = a.value("grid", std::string("linear"));
    if (grid == "linear") ax.grid = GridKind::linear;
    else if (grid == "log") ax.grid = GridKind::log;
    else if (grid == "list") ax.grid = GridKind::list;
    else throw ConfigError(field + ".grid", "expected linear, log or list");
    if (ax.grid == GridKind::list) {
      if (!a.contains("values") || !a["values"].is_array()) throw ConfigError(field + ".values", "expected a list");
      for (const auto& v : a["values"]) ax.values.push_back(spec_quantity(v, ax.param, field + ".values"));
    } else {
      for (const char* key : {"min", "max", "count"})
        if (!a.contains(key)) throw ConfigError(field + "." + key, "missing");
      ax.min = spec_quantity(a["min"], ax.param, field + ".min");
      ax.max = spec_quantity(a["max"], ax.param, field + ".max");
      if (!a["count"].is_number_integer()) throw ConfigError(field + ".count", "expected an integer");
      ax.count = a["count"].get<int>();
    }
    spec.axes.push_back(std::move(ax));
  }
  if (doc.contains("fixed")) {
    if (!doc["fixed"].is_object()) throw ConfigError("fixed", "expected an object");
    for (const auto& [k, v] : doc["fixed"].items()) {
      if (!is_parameter_path(k)) throw ConfigError("fixed." + k, "unknown parameter path");
      spec.fixed[k] = spec_quantity(v, k, "fixed." + k);
    }
  }
  spec.validate();
  return spec;
}

namespace {

struct Grid {
  std::vector<std::vector<double>> values;
  std::size_t cells = 1;

  explicit Grid(const SweepSpec& spec) {
    for (const Axis& a : spec.axes) {
      values.push_back(a.points());
      cells *= values.back().size();
    }
  }

  std::vector<double> cell(std::size_t index) const {
    std::vector<double> out(values.size());
    for (std::size_t k = values.size(); k-- > 0;) {
      const std::size_t n = values[k].size();
      out[k] = values[k][index % n];
      index /= n;
    }
    return out;
  }
};

RunConfig configure(const SweepSpec& spec, const RunConfig& base) {
  RunConfig cfg = base;
  if (spec.scheme) cfg.scheme = *spec.scheme;
  for (const auto& [path, value] : spec.fixed) set_parameter(cfg, path, value);
  return cfg;
}

}  // namespace

std::vector<TransductionPoint> sweep_points(const SweepSpec& spec, const RunConfig& base,
                                            const ExecutionPolicy& policy) {
  spec.validate();
  const RunConfig cfg0 = configure(spec, base);
  const Grid grid(spec);
  std::vector<TransductionPoint> points(grid.cells);
  detail::for_each_index(grid.cells, policy, [&](std::size_t i) {
    RunConfig cfg = cfg0;
    const auto vals = grid.cell(i);
    for (std::size_t k = 0; k < vals.size(); ++k) set_parameter(cfg, spec.axes[k].param, vals[k]);
    points[i] = evaluate(cfg);
  });
  return points;
}

Table run_sweep(const SweepSpec& spec, const RunConfig& base, const ExecutionPolicy& policy,
                bool verbose) {
  const auto points = sweep_points(spec, base, policy);
  const RunConfig cfg0 = configure(spec, base);
  const Grid grid(spec);
  Table t;
  for (const Axis& a : spec.axes) t.columns.push_back(a.column());
  for (auto& c : record_columns(cfg0.scheme, verbose)) t.columns.push_back(std::move(c));
  t.rows.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<Cell> row;
    for (double v : grid.cell(i)) row.emplace_back(v);
    for (auto& c : record_row(points[i], verbose)) row.push_back(std::move(c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace terabridge
