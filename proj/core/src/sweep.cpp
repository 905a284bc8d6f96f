#include "medea/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "medea/overrides.hpp"

namespace medea {

namespace {

template <class Fn>
void parallel_for(std::size_t n, int jobs, Fn fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, n); ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string focus_of(const Scenario& s) {
  if (!s.focus_zone.empty()) return s.focus_zone;
  if (s.zones.empty()) throw std::invalid_argument("sweep: scenario has no zones");
  return s.zones.front().id;
}

SweepPoint evaluate_point(const Scenario& s, const std::string& focus, double cap, const SolverOptions& opts) {
  SweepPoint p;
  p.wind_cap = cap;
  p.outcome = run_scenario(s, opts);
  if (p.outcome.optimal()) {
    p.system_cost = p.outcome.objective;
    if (const ZoneOutcome* z = p.outcome.zone(focus)) p.c_net = z->net_cost;
  }
  return p;
}

}  // namespace

std::vector<double> wind_cap_grid(double w_star, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("sweep step must be positive");
  if (!std::isfinite(w_star) || w_star < 0.0) throw std::invalid_argument("w* must be finite and nonnegative");
  const double tol = 1e-9 * std::max(1.0, w_star);
  std::vector<double> caps;
  for (long k = 0;; ++k) {
    const double cap = w_star - static_cast<double>(k) * step;
    if (cap <= tol) break;
    caps.push_back(cap);
  }
  caps.push_back(0.0);
  return caps;
}

double present_value(double annual, double wacc, double years) {
  if (years <= 0.0) return 0.0;
  if (std::abs(wacc) < 1e-12) return annual * years;
  return annual * (1.0 - std::pow(1.0 + wacc, -years)) / wacc;
}

std::vector<OcPoint> opportunity_cost(const SweepResult& sweep, double annual_fraction, double wacc,
                                      double pv_horizon_years) {
  if (sweep.points.size() < 2) throw std::invalid_argument("opportunity cost needs at least two sweep points");
  if (!(annual_fraction > 0.0)) throw std::invalid_argument("opportunity cost needs a positive horizon");
  std::vector<OcPoint> out;
  for (std::size_t k = 0; k + 1 < sweep.points.size(); ++k) {
    const auto& a = sweep.points[k];
    const auto& b = sweep.points[k + 1];
    const double dw = a.wind_cap - b.wind_cap;
    if (!(dw > 0.0)) throw std::invalid_argument("opportunity cost needs strictly decreasing caps");
    OcPoint oc;
    oc.cap_high = a.wind_cap;
    oc.cap_low = b.wind_cap;
    oc.wind_mid = 0.5 * (a.wind_cap + b.wind_cap);
    if (a.outcome.optimal() && b.outcome.optimal()) {
      // k-currency per GW equals currency per MW.
      oc.oc_net = (b.c_net - a.c_net) / dw / annual_fraction;
      oc.oc_system = (b.system_cost - a.system_cost) / dw / annual_fraction;
      oc.oc_net_pv = present_value(*oc.oc_net, wacc, pv_horizon_years);
      oc.oc_system_pv = present_value(*oc.oc_system, wacc, pv_horizon_years);
    }
    out.push_back(oc);
  }
  return out;
}

SweepResult sweep_wind_cap(const Scenario& s, const SweepOptions& options) {
  if (!(options.step > 0.0)) throw std::invalid_argument("sweep step must be positive");
  SweepResult r;
  r.focus_zone = focus_of(s);
  const int fz = s.zone_index(r.focus_zone);
  if (fz < 0) throw std::invalid_argument("sweep: unknown focus zone '" + r.focus_zone + "'");

  SweepPoint first = evaluate_point(s, r.focus_zone, 0.0, options.solver);
  if (!first.outcome.optimal()) {
    r.points.push_back(std::move(first));
    return r;
  }
  r.w_star = std::max(0.0, first.outcome.zone(r.focus_zone)->onshore_wind);
  if (r.w_star < 1e-9) r.w_star = 0.0;
  const auto caps = wind_cap_grid(r.w_star, options.step);
  first.wind_cap = caps.front();

  r.points.resize(caps.size());
  r.points[0] = std::move(first);
  parallel_for(caps.size() - 1, options.jobs, [&](std::size_t i) {
    Scenario capped = s;
    capped.zones[static_cast<std::size_t>(fz)].wind_cap = caps[i + 1];
    r.points[i + 1] = evaluate_point(capped, r.focus_zone, caps[i + 1], options.solver);
  });
  if (r.points.size() >= 2) {
    r.oc = opportunity_cost(r, s.annual_fraction(), s.wacc, options.pv_horizon_years);
  }
  return r;
}

std::vector<GridCell> sensitivity_grid(const Scenario& base, const GridAxes& axes, const SweepOptions& options) {
  auto axis = [](const std::vector<double>& v) {
    std::vector<std::optional<double>> out(v.begin(), v.end());
    if (out.empty()) out.emplace_back();
    return out;
  };
  std::vector<GridCell> cells;
  for (auto co2 : axis(axes.co2)) {
    for (auto pv : axis(axes.pv_cost)) {
      for (auto ntc : axis(axes.ntc)) {
        GridCell c;
        c.co2 = co2;
        c.pv_cost = pv;
        c.ntc = ntc;
        cells.push_back(std::move(c));
      }
    }
  }
  // Parallelism goes to the cells when there are several, else to the sweep.
  SweepOptions inner = options;
  if (cells.size() > 1) inner.jobs = 1;
  parallel_for(cells.size(), cells.size() > 1 ? options.jobs : 1, [&](std::size_t i) {
    GridCell& c = cells[i];
    try {
      Scenario s = base;
      if (c.co2) s.set_co2_price(*c.co2);
      if (c.pv_cost) set_pv_capital_cost(s, *c.pv_cost);
      if (c.ntc) set_ntc(s, *c.ntc);
      c.sweep = sweep_wind_cap(s, inner);
      const auto& first = c.sweep.points.front().outcome;
      if (first.optimal()) {
        const ZoneOutcome* z = first.zone(c.sweep.focus_zone);
        if (z && z->target_dual) c.target_dual_zero = std::abs(*z->target_dual) <= 1e-7;
      } else {
        c.error = first.diagnosis.empty() ? std::string(to_string(first.status)) : first.diagnosis;
      }
    } catch (const std::exception& e) {
      c.error = e.what();
    }
  });
  return cells;
}

}  // namespace medea
