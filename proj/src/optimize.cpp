#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "parallel.hpp"
#include "terabridge/errors.hpp"
#include "terabridge/explore.hpp"
#include "terabridge/units.hpp"

namespace terabridge {

namespace {

void check_bounds(const Bounds& b, const std::string& field) {
  if (!(b.lo > 0.0) || !(b.hi > 0.0) || !std::isfinite(b.hi))
    throw ConfigError(field, "bounds must be positive and finite");
  if (b.lo > b.hi) throw ConfigError(field, "empty bounds (lo > hi)");
}

std::vector<double> log_points(const Bounds& b, int n) {
  if (b.lo == b.hi || n < 2) return {b.lo};
  std::vector<double> out(static_cast<std::size_t>(n));
  const double a = std::log(b.lo), z = std::log(b.hi);
  for (int k = 0; k < n; ++k) out[k] = std::exp(a + (z - a) * k / (n - 1));
  out.front() = b.lo;
  out.back() = b.hi;
  return out;
}

double log_step(const Bounds& b, int n) {
  return b.lo == b.hi || n < 2 ? 0.0 : (std::log(b.hi) - std::log(b.lo)) / (n - 1);
}

Bounds around(double centre, double step, const Bounds& limit) {
  if (step == 0.0) return {centre, centre};
  return {std::max(limit.lo, centre * std::exp(-step)), std::min(limit.hi, centre * std::exp(step))};
}

Bounds parse_bounds(const nlohmann::json& v, units::Dimension dim, const std::string& field) {
  if (!v.is_array() || v.size() != 2) throw ConfigError(field, "expected [lo, hi]");
  Bounds b;
  double* slots[] = {&b.lo, &b.hi};
  for (int k = 0; k < 2; ++k) {
    try {
      if (v[k].is_number())
        *slots[k] = v[k].get<double>();
      else if (v[k].is_string())
        *slots[k] = units::parse_quantity(v[k].get<std::string>(), dim);
      else
        throw ConfigError(field, "expected a number or a quantity string");
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(field, e.what());
    }
  }
  return b;
}

struct Candidate {
  double w = 0.0, L = 0.0, f_i = 0.0;
  std::optional<TransductionPoint> point;
  std::string error;
  bool feasible = false;
};

}  // namespace

void OptimizeSpec::validate() const {
  check_bounds(w, "bounds.w");
  check_bounds(L, "bounds.L");
  if (f_i) check_bounds(*f_i, "bounds.f_i");
  if (!(n_max > 0.0)) throw ConfigError("n_max", "must be positive");
  if (budget < 1) throw ConfigError("budget", "must be at least 1");
  if (grid_points < 2) throw ConfigError("grid_points", "must be at least 2");
  if (rounds < 1) throw ConfigError("rounds", "must be at least 1");
}

nlohmann::ordered_json OptimizeSpec::to_json() const {
  nlohmann::ordered_json j;
  j["bounds"]["w"] = {w.lo, w.hi};
  j["bounds"]["L"] = {L.lo, L.hi};
  if (f_i) j["bounds"]["f_i"] = {f_i->lo, f_i->hi};
  j["n_max"] = std::isinf(n_max) ? nlohmann::ordered_json("inf") : nlohmann::ordered_json(n_max);
  j["budget"] = budget;
  j["grid_points"] = grid_points;
  j["rounds"] = rounds;
  return j;
}

OptimizeSpec parse_optimize_spec(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("optimize", "expected an object");
  if (!doc.contains("bounds") || !doc["bounds"].is_object()) throw ConfigError("bounds", "missing");
  const auto& b = doc["bounds"];
  for (const auto& [k, _] : b.items())
    if (k != "w" && k != "L" && k != "f_i") throw ConfigError("bounds." + k, "unknown key");
  if (!b.contains("w")) throw ConfigError("bounds.w", "missing");
  if (!b.contains("L")) throw ConfigError("bounds.L", "missing");
  OptimizeSpec s;
  s.w = parse_bounds(b["w"], units::Dimension::length, "bounds.w");
  s.L = parse_bounds(b["L"], units::Dimension::length, "bounds.L");
  if (b.contains("f_i")) s.f_i = parse_bounds(b["f_i"], units::Dimension::frequency, "bounds.f_i");
  if (doc.contains("n_max")) {
    const auto& n = doc["n_max"];
    if (n.is_string() && (n == "inf" || n == "infinity"))
      s.n_max = std::numeric_limits<double>::infinity();
    else if (n.is_number())
      s.n_max = n.get<double>();
    else
      throw ConfigError("n_max", "expected a number or \"inf\"");
  }
  auto integer = [&](const char* key, int& slot) {
    if (!doc.contains(key)) return;
    if (!doc[key].is_number_integer()) throw ConfigError(key, "expected an integer");
    slot = doc[key].get<int>();
  };
  integer("budget", s.budget);
  integer("grid_points", s.grid_points);
  integer("rounds", s.rounds);
  s.validate();
  return s;
}

OptimizeResult optimize_geometry(const OptimizeSpec& spec, const RunConfig& base,
                                 const ExecutionPolicy& policy) {
  spec.validate();
  if (spec.f_i && base.scheme != Scheme::two_step)
    throw ConfigError("bounds.f_i", "intermediate frequency bounds need the two_step scheme");

  OptimizeResult res;
  res.trace.columns = {"round", "w_m", "L_m"};
  if (spec.f_i) res.trace.columns.push_back("f_i_Hz");
  const bool two = base.scheme == Scheme::two_step;
  for (const char* c : {two ? "eta2" : "eta1", two ? "n_mu2" : "n_mu1", "feasible", "flags"})
    res.trace.columns.push_back(c);

  Bounds bw = spec.w, bL = spec.L;
  std::optional<Bounds> bf = spec.f_i;
  constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
  std::vector<Candidate> all;
  std::size_t best = npos;
  std::size_t min_n_index = npos;

  for (int round = 0; round < spec.rounds && !res.budget_exhausted; ++round) {
    const auto ws = log_points(bw, spec.grid_points);
    const auto Ls = log_points(bL, spec.grid_points);
    const auto fs = bf ? log_points(*bf, spec.grid_points) : std::vector<double>{0.0};
    std::vector<Candidate> batch;
    for (double w : ws)
      for (double L : Ls)
        for (double f : fs) batch.push_back({w, L, f, std::nullopt, {}, false});
    const std::size_t room = static_cast<std::size_t>(spec.budget - res.evaluations);
    if (batch.size() > room) {
      batch.resize(room);
      res.budget_exhausted = true;
    }

    detail::for_each_index(batch.size(), policy, [&](std::size_t i) {
      Candidate& c = batch[i];
      RunConfig cfg = base;
      set_parameter(cfg, "w", c.w);
      set_parameter(cfg, "L", c.L);
      if (bf) set_parameter(cfg, "f_i", c.f_i);
      try {
        c.point = evaluate(cfg);
        c.feasible = !c.point->runaway() && c.point->n_total <= spec.n_max &&
                     !c.point->flags.has(Flag::saturated) && !c.point->flags.has(Flag::cutoff);
      } catch (const std::exception& e) {
        c.error = e.what();
      }
    });
    res.evaluations += static_cast<int>(batch.size());

    const std::size_t first = all.size();
    for (auto& c : batch) all.push_back(std::move(c));

    for (std::size_t i = first; i < all.size(); ++i) {
      const Candidate& c = all[i];
      std::vector<Cell> row = {static_cast<double>(round + 1), c.w, c.L};
      if (bf) row.emplace_back(c.f_i);
      if (c.point) {
        row.emplace_back(c.point->eta_total);
        row.emplace_back(c.point->n_total);
        row.emplace_back(c.feasible ? 1.0 : 0.0);
        row.emplace_back(c.point->flags.to_string());
        if (!c.point->runaway() &&
            (min_n_index == npos || c.point->n_total < all[min_n_index].point->n_total))
          min_n_index = i;
      } else {
        row.emplace_back(0.0);
        row.emplace_back(0.0);
        row.emplace_back(0.0);
        row.emplace_back(std::string("error"));
      }
      res.trace.rows.push_back(std::move(row));

      if (!c.feasible) continue;
      const TransductionPoint* inc = best == npos ? nullptr : &*all[best].point;
      if (!inc || c.point->eta_total > inc->eta_total ||
          (c.point->eta_total == inc->eta_total && c.point->n_total < inc->n_total))
        best = i;
    }

    const std::size_t c_index = best != npos ? best : min_n_index;
    if (c_index == npos) break;
    const Candidate* centre = &all[c_index];
    const bool collapsed = bw.lo == bw.hi && bL.lo == bL.hi && (!bf || bf->lo == bf->hi);
    if (collapsed) break;
    bw = around(centre->w, log_step(bw, spec.grid_points), spec.w);
    bL = around(centre->L, log_step(bL, spec.grid_points), spec.L);
    if (bf) bf = around(centre->f_i, log_step(*bf, spec.grid_points), *spec.f_i);
  }

  if (best != npos) {
    res.feasible = true;
    res.best = all[best].point;
    return res;
  }

  std::size_t runaway = 0, errors = 0;
  for (const auto& c : all) {
    if (!c.point) ++errors;
    else if (c.point->runaway()) ++runaway;
  }
  std::ostringstream msg;
  msg << "no feasible point in " << all.size() << " evaluations";
  if (runaway) msg << "; " << runaway << " in thermal runaway";
  if (errors) msg << "; " << errors << " failed to evaluate";
  if (min_n_index != npos) {
    const Candidate& c = all[min_n_index];
    msg << "; lowest occupancy " << format_double(c.point->n_total) << " at w=" << format_double(c.w)
        << " m, L=" << format_double(c.L) << " m exceeds n_max=" << format_double(spec.n_max);
  }
  res.report = msg.str();
  return res;
}

}  // namespace terabridge
