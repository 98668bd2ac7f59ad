#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "terabridge/config.hpp"
#include "terabridge/table.hpp"
#include "terabridge/transducer.hpp"

namespace terabridge {

// Flat records

/// Column names of a point record. The headline columns are `eta1`/`n_mu1`
/// for the single scheme and `eta2`/`n_mu2` for two-step.
std::vector<std::string> record_columns(Scheme scheme, bool verbose = false);
std::vector<Cell> record_row(const TransductionPoint& pt, bool verbose = false);
Table point_table(const TransductionPoint& pt, bool verbose = false);

// Sweeps

enum class GridKind { linear, log, list };

struct Axis {
  std::string param;  ///< a parameter path, see parameter_paths()
  GridKind grid = GridKind::linear;
  double min = 0.0;
  double max = 0.0;
  int count = 0;
  std::vector<double> values;  ///< GridKind::list

  std::vector<double> points() const;
  std::string column() const;  ///< e.g. `w_axis_m`, `f_i_axis_Hz`
};

struct SweepSpec {
  std::vector<Axis> axes;
  std::map<std::string, double> fixed;  ///< parameter path -> SI value
  std::optional<Scheme> scheme;

  /// Throws ConfigError naming the axis.
  void validate() const;
  std::size_t cells() const;
  nlohmann::ordered_json to_json() const;
};

/// Reads `axes`, `fixed` and `scheme` from a spec document; quantities take
/// unit suffixes.
SweepSpec parse_sweep_spec(const nlohmann::json& doc);

struct ExecutionPolicy {
  bool parallel = true;
  int jobs = 0;  ///< 0: runtime default
};

/// Cartesian grid, last axis fastest. Each row holds the axis values followed
/// by the point record. The first cell error in row order is rethrown after
/// all cells finish.
Table run_sweep(const SweepSpec& spec, const RunConfig& base, const ExecutionPolicy& policy = {},
                bool verbose = false);

/// Evaluates every cell and returns the points in row order.
std::vector<TransductionPoint> sweep_points(const SweepSpec& spec, const RunConfig& base,
                                            const ExecutionPolicy& policy = {});

// Figures

const std::vector<std::string>& figure_ids();

struct FigureSpec {
  std::string id;
  std::string description;
  RunConfig base;
  SweepSpec sweep;
  std::vector<std::string> columns;

  /// Canonical serialization of every frozen parameter.
  nlohmann::ordered_json to_json() const;
};

/// Throws ConfigError on an unknown id.
FigureSpec figure_spec(const std::string& id,
                       std::shared_ptr<const MaterialRegistry> registry = nullptr);
/// FNV-1a 64 of the compact canonical spec dump, as 16 hex digits.
std::string spec_hash(const FigureSpec& spec);
Table figure_data(const FigureSpec& spec, const ExecutionPolicy& policy = {});

// Optimization

struct Bounds {
  double lo = 0.0;
  double hi = 0.0;
};

struct OptimizeSpec {
  Bounds w;
  Bounds L;
  std::optional<Bounds> f_i;  ///< Hz
  double n_max = 1e-6;        ///< may be +inf
  int budget = 100000;        ///< maximum evaluations
  int grid_points = 9;
  int rounds = 3;

  void validate() const;  ///< throws ConfigError
  nlohmann::ordered_json to_json() const;
};

OptimizeSpec parse_optimize_spec(const nlohmann::json& doc);

struct OptimizeResult {
  bool feasible = false;
  std::optional<TransductionPoint> best;
  int evaluations = 0;
  bool budget_exhausted = false;
  Table trace;         ///< round, w_m, L_m, [f_i_Hz,] eta, n_mu, feasible, flags
  std::string report;  ///< why no point qualified, when infeasible
};

/// Successive log-spaced grids, each centred on the incumbent and spanning
/// one previous grid step either side. Maximizes eta subject to n <= n_max,
/// no runaway and a guided optical mode (w above the cutoff width).
OptimizeResult optimize_geometry(const OptimizeSpec& spec, const RunConfig& base,
                                 const ExecutionPolicy& policy = {});

}  // namespace terabridge
