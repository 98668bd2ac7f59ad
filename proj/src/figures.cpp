#include <cstdint>
#include <cstdio>

#include "terabridge/errors.hpp"
#include "terabridge/explore.hpp"
#include "terabridge/thermal.hpp"

namespace terabridge {

namespace {

constexpr int kMapPoints = 60;
constexpr int kSpectrumPoints = 41;

Axis log_axis(const char* param, double min, double max, int count) {
  Axis a;
  a.param = param;
  a.grid = GridKind::log;
  a.min = min;
  a.max = max;
  a.count = count;
  return a;
}

RunConfig figure_base(Scheme scheme, std::shared_ptr<const MaterialRegistry> registry) {
  nlohmann::json doc = {
      {"scheme", to_string(scheme)},
      {"frequencies", {{"f_mu", 8e9}, {"f_po", 200e12}}},
      {"geometry", {{"w", 1e-6}, {"L", 300e-6}, {"t", 20e-9}}},
      {"temperatures", {{"T1", 0.01}, {"T2", 0.01}}},
      {"occupancy_branch", "physical"},
      {"xi", 1.0},
  };
  if (scheme == Scheme::two_step) doc["frequencies"]["f_i"] = 600e9;
  return resolve_config(doc, {}, std::move(registry));
}

std::vector<Axis> wl_map() {
  return {log_axis("w", 0.2e-6, 20e-6, kMapPoints), log_axis("L", 10e-6, 1e-2, kMapPoints)};
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"fig1c", "fig1d", "fig2c", "fig2d",
                                               "fig3e", "fig3f", "figIII", "figIV"};
  return ids;
}

FigureSpec figure_spec(const std::string& id, std::shared_ptr<const MaterialRegistry> registry) {
  FigureSpec f;
  f.id = id;
  if (id == "fig1c" || id == "fig1d") {
    f.base = figure_base(Scheme::single_step, std::move(registry));
    f.sweep.axes = wl_map();
    const bool occ = id == "fig1c";
    f.description = occ ? "single-step microwave occupancy over (w, L) at 10 mK"
                        : "single-step external efficiency over (w, L) at 10 mK";
    f.columns = {"w_m", "L_m", occ ? "n_mu1" : "eta1", "flags"};
  } else if (id == "fig2c" || id == "fig2d") {
    f.base = figure_base(Scheme::two_step, std::move(registry));
    f.sweep.axes = wl_map();
    const bool eff = id == "fig2c";
    f.description = eff ? "two-step external efficiency over (w, L), 600 GHz intermediate, 10 mK"
                        : "two-step microwave occupancy over (w, L), 600 GHz intermediate, 10 mK";
    f.columns = {"w_m", "L_m", eff ? "eta2" : "n_mu2", "flags"};
  } else if (id == "fig3e" || id == "fig3f") {
    f.base = figure_base(Scheme::two_step, std::move(registry));
    Axis temps;
    temps.param = "T2";
    temps.grid = GridKind::list;
    temps.values = {0.01, 1.0};
    f.sweep.axes = {temps, log_axis("f_i", 10e9, 1e12, kSpectrumPoints)};
    f.description = id == "fig3e" ? "two-step occupancy against intermediate frequency at 10 mK and 1 K"
                                  : "two-step efficiency against intermediate frequency at 10 mK and 1 K";
    f.columns = {"omega_i_rad_s", "T2_K", "eta2", "n_mu2", "flags"};
  } else if (id == "figIII" || id == "figIV") {
    f.base = figure_base(Scheme::two_step, std::move(registry));
    f.sweep.axes = wl_map();
    if (id == "figIII") {
      f.description = "kinetic-inductance stage temperature rise over (w, L)";
      f.columns = {"w_m", "L_m", "ki_dT_K", "ki_dT_open_loop_K", "eo_dT_K", "runaway", "flags"};
    } else {
      f.description = "electro-optic stage temperature rise over (w, L)";
      f.columns = {"w_m", "L_m", "eo_dT_K", "eo_dT_open_loop_K", "ki_dT_K", "runaway", "flags"};
    }
  } else {
    std::string known;
    for (const auto& k : figure_ids()) known += (known.empty() ? "" : ", ") + k;
    throw ConfigError("figure", "unknown id '" + id + "' (known: " + known + ")");
  }
  f.sweep.scheme = f.base.scheme;
  return f;
}

nlohmann::ordered_json FigureSpec::to_json() const {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["description"] = description;
  auto prov = provenance(base);
  j["base"] = prov["resolved"];
  j["materials_source"] = base.materials_source;
  j["sweep"] = sweep.to_json();
  j["columns"] = columns;
  return j;
}

std::string spec_hash(const FigureSpec& spec) {
  const std::string text = spec.to_json().dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return hex64(h);
}

Table figure_data(const FigureSpec& spec, const ExecutionPolicy& policy) {
  const auto points = sweep_points(spec.sweep, spec.base, policy);
  const auto record_cols = record_columns(spec.base.scheme);

  Table t;
  t.columns = spec.columns;
  std::vector<int> source(spec.columns.size(), -1);
  for (std::size_t c = 0; c < spec.columns.size(); ++c)
    for (std::size_t r = 0; r < record_cols.size(); ++r)
      if (record_cols[r] == spec.columns[c]) source[c] = static_cast<int>(r);

  t.rows.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const TransductionPoint& pt = points[i];
    const auto rec = record_row(pt);
    auto& row = t.rows[i];
    for (std::size_t c = 0; c < spec.columns.size(); ++c) {
      const std::string& name = spec.columns[c];
      if (source[c] >= 0) {
        row.push_back(rec[source[c]]);
      } else if (name == "runaway") {
        row.emplace_back(pt.runaway() ? 1.0 : 0.0);
      } else if (name == "ki_dT_open_loop_K") {
        row.emplace_back(dT_scaling_ki(ki_stage_params(pt.ki_geometry, pt.freqs, pt.T1,
                                                       *spec.base.materials, spec.base.options)));
      } else if (name == "eo_dT_open_loop_K") {
        row.emplace_back(dT_scaling_eo(eo_stage_params(pt.geometry, pt.freqs, pt.T2,
                                                       *spec.base.materials, spec.base.options)));
      } else {
        throw ConfigError("figure." + spec.id, "no source for column '" + name + "'");
      }
    }
  }
  return t;
}

}  // namespace terabridge
