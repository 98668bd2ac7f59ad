#include "terabridge/materials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "terabridge/bessel.hpp"
#include "terabridge/constants.hpp"
#include "terabridge/errors.hpp"

namespace terabridge {

using K = PhysicalConstants;

double bose_einstein(double omega, double T) {
  if (!(omega > 0.0)) throw DomainError("bose_einstein: omega must be positive");
  if (!(T >= 0.0)) throw DomainError("bose_einstein: T must be non-negative");
  if (T == 0.0) return 0.0;
  const double y = K::hbar * omega / (K::k_B * T);
  if (y > 700.0) return 0.0;
  if (y < 1e-6) return 1.0 / y - 0.5 + y / 12.0;
  return 1.0 / std::expm1(y);
}

// ---------------------------------------------------------------------------

namespace {

double loglog_segment(double t0, double v0, double t1, double v1, double T) {
  const double slope = std::log(v1 / v0) / std::log(t1 / t0);
  return v0 * std::pow(T / t0, slope);
}

double evaluate_anchors(const AnchorLaw& law, double T) {
  const auto& p = law.points;
  if (p.size() < 2) throw DomainError("anchor law needs at least two points");
  if (T <= p.front().first) {
    if (T == p.front().first) return p.front().second;
    return loglog_segment(p[0].first, p[0].second, p[1].first, p[1].second, T);
  }
  if (T >= p.back().first) {
    if (T == p.back().first) return p.back().second;
    const auto n = p.size();
    return loglog_segment(p[n - 2].first, p[n - 2].second, p[n - 1].first, p[n - 1].second, T);
  }
  auto hi = std::lower_bound(p.begin(), p.end(), T,
                             [](const auto& a, double t) { return a.first < t; });
  if (hi->first == T) return hi->second;
  auto lo = hi - 1;
  return loglog_segment(lo->first, lo->second, hi->first, hi->second, T);
}

struct LawEvaluator {
  double T;
  double operator()(const PowerLaw& l) const { return l.coeff * std::pow(T, l.exponent); }
  double operator()(const PolynomialLaw& l) const {
    double sum = 0.0;
    for (const auto& [coeff, exponent] : l.terms) sum += coeff * std::pow(T, exponent);
    return sum;
  }
  double operator()(const AnchorLaw& l) const { return evaluate_anchors(l, T); }
  double operator()(const TableFileLaw& l) const { return evaluate_anchors(l.data, T); }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

double evaluate(const TemperatureLaw& law, double T) {
  if (!(T > 0.0)) throw DomainError("temperature law: T must be positive");
  return std::visit(LawEvaluator{T}, law);
}

const char* law_kind(const TemperatureLaw& law) {
  switch (law.index()) {
    case 0: return "power_law";
    case 1: return "polynomial";
    case 2: return "anchors";
    default: return "table_file";
  }
}

std::string describe(const TemperatureLaw& law) {
  struct Describer {
    std::string operator()(const PowerLaw& l) const {
      return fmt(l.coeff) + "*T^" + fmt(l.exponent);
    }
    std::string operator()(const PolynomialLaw& l) const {
      std::string out;
      for (const auto& [c, e] : l.terms) {
        if (!out.empty()) out += " + ";
        out += fmt(c) + "*T^" + fmt(e);
      }
      return out.empty() ? "0" : out;
    }
    std::string operator()(const AnchorLaw& l) const {
      std::string out = "log-log through";
      for (const auto& [t, v] : l.points) out += " (" + fmt(t) + " K, " + fmt(v) + ")";
      return out;
    }
    std::string operator()(const TableFileLaw& l) const {
      return "table " + l.path.string() + " (" + std::to_string(l.data.points.size()) + " rows)";
    }
  };
  return std::visit(Describer{}, law);
}

AnchorLaw read_anchor_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open table file " + path.string());
  AnchorLaw law;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double t = 0.0;
    double v = 0.0;
    if (!(row >> t >> v)) throw std::runtime_error("malformed row in " + path.string());
    if (!(t > 0.0) || !(v > 0.0))
      throw std::runtime_error("non-positive entry in " + path.string());
    if (!law.points.empty() && t <= law.points.back().first)
      throw std::runtime_error("temperatures not strictly increasing in " + path.string());
    law.points.emplace_back(t, v);
  }
  if (law.points.size() < 2)
    throw std::runtime_error("table " + path.string() + " needs at least two rows");
  return law;
}

double thermal_conductivity(const ThermalMaterialParams& mat, double T) {
  if (!(T > 0.0)) throw DomainError("thermal_conductivity: T must be positive");
  return evaluate(mat.g_th_law, T);
}

double heat_capacity(const ThermalMaterialParams& mat, double T) {
  if (!(T > 0.0)) throw DomainError("heat_capacity: T must be positive");
  return evaluate(mat.c_th_law, T);
}

double thz_absorption(const OpticalMaterialParams& opt, double omega) {
  if (!(omega > 0.0)) throw DomainError("thz_absorption: omega must be positive");
  if (omega >= opt.thz_band_edge) return opt.alpha_thz_high;
  return opt.alpha_thz_low + (opt.alpha_thz_high - opt.alpha_thz_low) * omega / opt.thz_band_edge;
}

// ---------------------------------------------------------------------------
// Conductivity

double bcs_gap(double Tc) { return 1.76 * K::k_B * Tc; }

namespace {

// Interpolation weight for x in [a, b] in log space. Exactly 0 or 1 at nodes.
double log_weight(double a, double b, double x) {
  if (x == a) return 0.0;
  if (x == b) return 1.0;
  return std::log(x / a) / std::log(b / a);
}

double log_lerp(double va, double vb, double w) {
  if (w == 0.0) return va;
  if (w == 1.0) return vb;
  return va * std::pow(vb / va, w);
}

// Index i with grid[i] <= x <= grid[i+1]; grid has >= 1 entry.
std::size_t bracket(const std::vector<double>& grid, double x) {
  if (grid.size() == 1) return 0;
  auto it = std::upper_bound(grid.begin(), grid.end(), x);
  auto i = static_cast<std::size_t>(std::distance(grid.begin(), it));
  if (i == 0) return 0;
  return std::min(i - 1, grid.size() - 2);
}

}  // namespace

SigmaTable SigmaTable::from_grid(std::vector<double> temperatures, std::vector<double> omegas,
                                 std::vector<double> sigma1, std::vector<double> sigma2) {
  if (temperatures.empty() || omegas.empty())
    throw std::invalid_argument("sigma table: empty grid");
  if (sigma1.size() != temperatures.size() * omegas.size() || sigma2.size() != sigma1.size())
    throw std::invalid_argument("sigma table: grid is not rectangular");
  auto increasing = [](const std::vector<double>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
  };
  if (!increasing(temperatures) || !increasing(omegas))
    throw std::invalid_argument("sigma table: axes must be strictly increasing");
  auto positive = [](double v) { return v > 0.0; };
  if (!std::all_of(temperatures.begin(), temperatures.end(), positive) ||
      !std::all_of(omegas.begin(), omegas.end(), positive) ||
      !std::all_of(sigma1.begin(), sigma1.end(), positive) ||
      !std::all_of(sigma2.begin(), sigma2.end(), positive))
    throw std::invalid_argument("sigma table: all entries must be positive");
  SigmaTable t;
  t.temperatures_ = std::move(temperatures);
  t.omegas_ = std::move(omegas);
  t.sigma1_ = std::move(sigma1);
  t.sigma2_ = std::move(sigma2);
  return t;
}

SigmaTable SigmaTable::from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sigma table " + path.string());
  const std::string where = "sigma table " + path.string() + ": ";
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "T_K,omega_rad_s,sigma1_S_m,sigma2_S_m")
    throw std::runtime_error(where + "unexpected header '" + line + "'");

  struct Row {
    double T, omega, sigma1, sigma2;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    Row r{};
    if (!(fields >> r.T >> r.omega >> r.sigma1 >> r.sigma2))
      throw std::runtime_error(where + "malformed row " + std::to_string(rows.size() + 2));
    rows.push_back(r);
  }

  std::vector<double> temps;
  std::vector<double> omegas;
  std::vector<double> s1;
  std::vector<double> s2;
  for (const Row& r : rows) {
    if (temps.empty() || r.T != temps.back()) {
      if (!temps.empty() && r.T < temps.back()) throw std::runtime_error(where + "T not increasing");
      temps.push_back(r.T);
    }
    if (temps.size() == 1) omegas.push_back(r.omega);
    s1.push_back(r.sigma1);
    s2.push_back(r.sigma2);
  }
  if (omegas.empty() || rows.size() != temps.size() * omegas.size())
    throw std::runtime_error(where + "grid is not rectangular");
  for (std::size_t k = 0; k < rows.size(); ++k)
    if (rows[k].omega != omegas[k % omegas.size()])
      throw std::runtime_error(where + "omega axis differs between temperature blocks");

  SigmaTable table;
  try {
    table = from_grid(std::move(temps), std::move(omegas), std::move(s1), std::move(s2));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(where + e.what());
  }
  table.path_ = path;
  return table;
}

ComplexConductivity SigmaTable::at(double omega, double T) const {
  if (T < temperatures_.front() || T > temperatures_.back() || omega < omegas_.front() ||
      omega > omegas_.back())
    throw RangeError("sigma table: (T=" + fmt(T) + " K, omega=" + fmt(omega) +
                     " rad/s) outside tabulated grid");
  const std::size_t it = bracket(temperatures_, T);
  const std::size_t iw = bracket(omegas_, omega);
  const std::size_t nw = omegas_.size();
  const double wt = temperatures_.size() == 1
                        ? 0.0
                        : log_weight(temperatures_[it], temperatures_[it + 1], T);
  const double ww = nw == 1 ? 0.0 : log_weight(omegas_[iw], omegas_[iw + 1], omega);
  auto interp = [&](const std::vector<double>& v) {
    auto node = [&](std::size_t i, std::size_t j) {
      return v[std::min(i, temperatures_.size() - 1) * nw + std::min(j, nw - 1)];
    };
    const double lo = log_lerp(node(it, iw), node(it, iw + 1), ww);
    if (wt == 0.0) return lo;
    const double hi = log_lerp(node(it + 1, iw), node(it + 1, iw + 1), ww);
    return log_lerp(lo, hi, wt);
  };
  return {interp(sigma1_), interp(sigma2_), omega, T};
}

ComplexConductivity sc_conductivity(const SuperconductorParams& sc, double omega, double T) {
  if (!(omega > 0.0)) throw DomainError("sc_conductivity: omega must be positive");
  if (!(T > 0.0)) throw DomainError("sc_conductivity: T must be positive");
  if (T >= sc.Tc)
    throw NormalStateError(sc.name + ": T = " + fmt(T) + " K is at or above Tc = " + fmt(sc.Tc) +
                           " K (normal state)");
  const double photon = K::hbar * omega;
  if (photon >= 2.0 * sc.gap0)
    throw PairBreakingError(sc.name + ": hbar*omega >= 2*gap0 at omega = " + fmt(omega) +
                            " rad/s (pair-breaking regime)");
  if (sc.table) return sc.table->at(omega, T);

  const double kT = K::k_B * T;
  const double sigma_n = 1.0 / sc.rho_n;
  const double x = photon / (2.0 * kT);
  // exp(-gap/kT) sinh(x) K0(x) = exp(-gap/kT) * (1 - exp(-2x))/2 * [exp(x) K0(x)]
  const double freeze = std::exp(-sc.gap0 / kT);
  const double sinh_k0 = -0.5 * std::expm1(-2.0 * x) * special::bessel_k0_scaled(x);
  double sigma1 = sigma_n * (4.0 * sc.gap0 / photon) * freeze * sinh_k0;
  sigma1 = std::max(sigma1, kSigma1Floor);
  const double sigma2 =
      sigma_n * (std::numbers::pi * sc.gap0 / photon) * std::tanh(sc.gap0 / (2.0 * kT));
  return {sigma1, sigma2, omega, T};
}

}  // namespace terabridge
