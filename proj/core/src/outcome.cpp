#include "medea/outcome.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "medea/formulation.hpp"
#include "medea/timeseries.hpp"

namespace medea {

namespace {

class Values {
 public:
  Values(const LpProblem& p, const std::vector<double>& x) : p_(p), x_(x) {}
  double operator()(VarKind kind, const EntityKey& k) const {
    auto c = p_.index.column({kind, k});
    return c ? x_[static_cast<std::size_t>(*c)] : 0.0;
  }

 private:
  const LpProblem& p_;
  const std::vector<double>& x_;
};

std::string month_of(TimePoint start, int t) {
  return format_timestamp(start + std::chrono::hours{t}).substr(0, 7);
}

}  // namespace

double SystemOutcome::total_emissions() const {
  double e = 0.0;
  for (const auto& z : zones) e += z.emissions;
  return e;
}

double SystemOutcome::total_net_cost() const {
  double c = 0.0;
  for (const auto& z : zones) c += z.net_cost;
  return c;
}

const ZoneOutcome* SystemOutcome::zone(std::string_view id) const {
  for (const auto& z : zones) {
    if (z.zone == id) return &z;
  }
  return nullptr;
}

CostBreakdown cost_breakdown(const Scenario& s, const LpProblem& p, const std::vector<double>& x, int z) {
  const Values val(p, x);
  const double frac = s.annual_fraction();
  const Zone& zone = s.zones.at(static_cast<std::size_t>(z));
  CostBreakdown c;

  for (int i = 0; i < static_cast<int>(s.dispatchables.size()); ++i) {
    const auto& d = s.dispatchables[static_cast<std::size_t>(i)];
    if (d.zone != zone.id) continue;
    const double add = val(VarKind::AddedGeneration, {z, -1, i});
    const double deco = val(VarKind::DecommissionedGen, {z, -1, i});
    if (d.initial_capacity > 0.0 || d.expandable) {
      c.om_dispatchable += (d.initial_capacity + add - deco) * d.om_qfix * frac;
    }
    c.invest_generation += d.capital_cost * add * frac;
    for (int t = 0; t < s.horizon; ++t) {
      for (const auto& fid : d.fuels) {
        const int f = s.fuel_index(fid);
        const Fuel& fuel = s.fuels[static_cast<std::size_t>(f)];
        const double b = val(VarKind::FuelBurn, {z, t, i, -1, f});
        if (!fuel.electricity) {
          c.fuel += s.fuel_price(zone.id, fid, t) * b;
          c.co2 += s.co2_price(zone.id, t) * fuel.co2_intensity * b;
        }
        for (Product m : kProducts) {
          c.om_dispatchable += d.om_var * val(VarKind::Generation, {z, t, i, static_cast<int>(m), f});
        }
      }
    }
  }
  for (int n = 0; n < static_cast<int>(s.intermittents.size()); ++n) {
    const auto& r = s.intermittents[static_cast<std::size_t>(n)];
    if (r.zone != zone.id) continue;
    const double add = val(VarKind::AddedIntermittent, {z, -1, n});
    const double deco = val(VarKind::DecommissionedInt, {z, -1, n});
    if (r.initial_capacity > 0.0 || r.expandable) {
      c.om_intermittent += (r.initial_capacity + add - deco) * r.om_qfix * frac;
    }
    c.invest_intermittent += r.capital_cost * add * frac;
    for (int t = 0; t < s.horizon; ++t) c.om_intermittent += r.om_var * val(VarKind::Intermittent, {z, t, n});
  }
  for (int k = 0; k < static_cast<int>(s.storages.size()); ++k) {
    const auto& st = s.storages[static_cast<std::size_t>(k)];
    if (st.zone != zone.id) continue;
    c.invest_storage += (st.capital_cost_power * val(VarKind::AddedStoragePower, {z, -1, k}) +
                         st.capital_cost_energy * val(VarKind::AddedStorageEnergy, {z, -1, k})) *
                        frac;
  }
  for (const auto& l : s.links) {
    int partner = -1;
    if (l.from == zone.id) partner = s.zone_index(l.to);
    if (l.to == zone.id) partner = s.zone_index(l.from);
    if (partner < 0) continue;
    auto it = zone.distance_km.find(s.zones[static_cast<std::size_t>(partner)].id);
    const double delta = it == zone.distance_km.end() ? 0.0 : it->second;
    c.invest_transmission += 0.5 * l.capital_cost * delta * val(VarKind::AddedTransfer, {z, -1, partner}) * frac;
  }
  for (int t = 0; t < s.horizon; ++t) {
    for (Product m : kProducts) c.nse += zone.voll * val(VarKind::NonServed, {z, t, -1, static_cast<int>(m)});
  }
  return c;
}

std::vector<EmissionsAndPollution> emissions_and_air_pollution(const Scenario& s, const LpProblem& p,
                                                               const std::vector<double>& x) {
  const Values val(p, x);
  const double frac = s.annual_fraction();
  std::vector<EmissionsAndPollution> out(s.zones.size());
  for (int i = 0; i < static_cast<int>(s.dispatchables.size()); ++i) {
    const auto& d = s.dispatchables[static_cast<std::size_t>(i)];
    const int z = s.zone_index(d.zone);
    if (z < 0 || !(d.initial_capacity > 0.0 || d.expandable)) continue;
    auto& o = out[static_cast<std::size_t>(z)];
    const double cap = d.initial_capacity + val(VarKind::AddedGeneration, {z, -1, i}) -
                       val(VarKind::DecommissionedGen, {z, -1, i});
    for (const auto& fid : d.fuels) {
      const int f = s.fuel_index(fid);
      const Fuel& fuel = s.fuels[static_cast<std::size_t>(f)];
      o.air_pollution += fuel.air_pollution_fix * cap * frac;
      double burn = 0.0;
      for (int t = 0; t < s.horizon; ++t) burn += val(VarKind::FuelBurn, {z, t, i, -1, f});
      o.emissions += fuel.co2_intensity * burn * 1000.0;
      o.air_pollution += fuel.air_pollution_var * burn;
    }
  }
  for (int n = 0; n < static_cast<int>(s.intermittents.size()); ++n) {
    const auto& r = s.intermittents[static_cast<std::size_t>(n)];
    const int z = s.zone_index(r.zone);
    if (z < 0 || !r.pollution_fuel || !(r.initial_capacity > 0.0 || r.expandable)) continue;
    const Fuel* fuel = s.find_fuel(*r.pollution_fuel);
    if (!fuel) continue;
    auto& o = out[static_cast<std::size_t>(z)];
    const double cap = r.initial_capacity + val(VarKind::AddedIntermittent, {z, -1, n}) -
                       val(VarKind::DecommissionedInt, {z, -1, n});
    o.air_pollution += fuel->air_pollution_fix * cap * frac;
    double gen = 0.0;
    for (int t = 0; t < s.horizon; ++t) gen += val(VarKind::Intermittent, {z, t, n});
    o.air_pollution += fuel->air_pollution_var * gen;
  }
  return out;
}

double trade_revenue(const Scenario& s, const LpProblem& p, const LpSolution& sol, int z) {
  if (sol.dual.size() != static_cast<std::size_t>(p.num_rows())) return 0.0;
  double revenue = 0.0;
  for (int zz = 0; zz < static_cast<int>(s.zones.size()); ++zz) {
    if (zz == z) continue;
    for (int t = 0; t < s.horizon; ++t) {
      auto c = p.index.column({VarKind::Exchange, {z, t, zz}});
      if (!c) continue;
      auto r = p.index.row({RowFamily::ElectricityBalance, {zz, t}});
      if (!r) continue;
      revenue += sol.primal[static_cast<std::size_t>(*c)] * sol.dual[static_cast<std::size_t>(*r)];
    }
  }
  return revenue;
}

double net_system_cost(const ZoneOutcome& z) { return z.lp_cost + z.air_pollution + z.trade_balance; }

SystemOutcome evaluate(const Scenario& s, const LpProblem& p, const LpSolution& sol) {
  SystemOutcome out;
  out.scenario_hash = p.scenario_hash;
  out.status = sol.status;
  out.objective = sol.objective;
  out.iterations = sol.iterations;
  out.rows = p.num_rows();
  out.columns = p.num_cols();
  if (sol.primal.size() == static_cast<std::size_t>(p.num_cols())) out.residuals = verify_solution(p, sol);
  if (!out.optimal()) return out;

  const auto& x = sol.primal;
  const Values val(p, x);
  const auto ep = emissions_and_air_pollution(s, p, x);
  const TimePoint start = parse_timestamp(s.start);

  for (int z = 0; z < static_cast<int>(s.zones.size()); ++z) {
    const auto zu = static_cast<std::size_t>(z);
    const Zone& zone = s.zones[zu];
    ZoneOutcome zo;
    zo.zone = zone.id;
    zo.cost = cost_breakdown(s, p, x, z);
    zo.lp_cost = p.zone_objective(x, z);
    zo.emissions = ep[zu].emissions;
    zo.air_pollution = ep[zu].air_pollution;
    zo.trade_revenue = trade_revenue(s, p, sol, z);
    zo.trade_balance = -zo.trade_revenue;
    zo.net_cost = net_system_cost(zo);

    for (int t = 0; t < s.horizon; ++t) {
      auto re = p.index.row({RowFamily::ElectricityBalance, {z, t}});
      zo.price_el.push_back(re ? sol.dual[static_cast<std::size_t>(*re)] : 0.0);
      auto rh = p.index.row({RowFamily::HeatBalance, {z, t}});
      if (rh) zo.price_ht.push_back(sol.dual[static_cast<std::size_t>(*rh)]);
      zo.curtailment += val(VarKind::Curtailment, {z, t}) * 1000.0;
      for (Product m : kProducts) zo.non_served += val(VarKind::NonServed, {z, t, -1, static_cast<int>(m)}) * 1000.0;
    }
    if (auto r = p.index.row({RowFamily::RenewableTarget, {z}})) {
      const auto ru = static_cast<std::size_t>(*r);
      zo.target_dual = sol.dual[ru];
      const double inflow = renewable_target_rhs(s, z) - zone.renewable_target.value_or(0.0) * s.annual_fraction() / 1000.0;
      zo.renewable_generation = (sol.row_activity[ru] - inflow) * 1000.0;
    } else {
      double ren = 0.0;
      for (int n = 0; n < static_cast<int>(s.intermittents.size()); ++n) {
        for (int t = 0; t < s.horizon; ++t) ren += val(VarKind::Intermittent, {z, t, n});
      }
      for (int i = 0; i < static_cast<int>(s.dispatchables.size()); ++i) {
        for (const auto& fid : s.dispatchables[static_cast<std::size_t>(i)].fuels) {
          const int f = s.fuel_index(fid);
          if (!s.fuels[static_cast<std::size_t>(f)].renewable) continue;
          for (int t = 0; t < s.horizon; ++t) {
            ren += val(VarKind::Generation, {z, t, i, static_cast<int>(Product::Electricity), f});
          }
        }
      }
      for (const auto& st : s.storages) {
        if (st.zone != zone.id) continue;
        for (int t = 0; t < s.horizon; ++t) ren += st.inflow_at(t);
      }
      zo.renewable_generation = ren * 1000.0;
    }
    out.zones.push_back(std::move(zo));
  }

  // Capacities.
  for (int i = 0; i < static_cast<int>(s.dispatchables.size()); ++i) {
    const auto& d = s.dispatchables[static_cast<std::size_t>(i)];
    const int z = s.zone_index(d.zone);
    out.capacities.push_back({d.zone, d.id, "dispatchable", d.initial_capacity,
                              val(VarKind::AddedGeneration, {z, -1, i}), val(VarKind::DecommissionedGen, {z, -1, i})});
  }
  for (int n = 0; n < static_cast<int>(s.intermittents.size()); ++n) {
    const auto& r = s.intermittents[static_cast<std::size_t>(n)];
    const int z = s.zone_index(r.zone);
    CapacityRecord rec{r.zone, r.id, "intermittent", r.initial_capacity,
                       val(VarKind::AddedIntermittent, {z, -1, n}), val(VarKind::DecommissionedInt, {z, -1, n})};
    if (r.kind == IntermittentKind::WindOnshore) out.zones[static_cast<std::size_t>(z)].onshore_wind += rec.final();
    out.capacities.push_back(rec);
  }
  for (int k = 0; k < static_cast<int>(s.storages.size()); ++k) {
    const auto& st = s.storages[static_cast<std::size_t>(k)];
    const int z = s.zone_index(st.zone);
    out.capacities.push_back({st.zone, st.id, "storage_power", st.power_out, val(VarKind::AddedStoragePower, {z, -1, k}), 0.0});
    out.capacities.push_back({st.zone, st.id, "storage_energy", st.energy, val(VarKind::AddedStorageEnergy, {z, -1, k}), 0.0});
  }
  for (const auto& l : s.links) {
    const int a = s.zone_index(l.from);
    const int b = s.zone_index(l.to);
    out.capacities.push_back({l.from, l.id(), "transmission", l.initial_ntc, val(VarKind::AddedTransfer, {a, -1, b}), 0.0});
  }

  // Monthly dispatch.
  std::map<std::tuple<int, std::string, int, std::string, std::string>, double> agg;
  int order = 0;
  std::map<std::string, int> item_order;
  auto put = [&](int z, const std::string& month, const std::string& item, const std::string& product, double v) {
    auto [it, fresh] = item_order.emplace(item, order);
    if (fresh) ++order;
    agg[{z, month, it->second, item, product}] += v;
  };
  for (int t = 0; t < s.horizon; ++t) {
    const std::string month = month_of(start, t);
    for (int i = 0; i < static_cast<int>(s.dispatchables.size()); ++i) {
      const auto& d = s.dispatchables[static_cast<std::size_t>(i)];
      const int z = s.zone_index(d.zone);
      for (Product m : kProducts) {
        double g = 0.0;
        for (const auto& fid : d.fuels) g += val(VarKind::Generation, {z, t, i, static_cast<int>(m), s.fuel_index(fid)});
        if (g != 0.0) put(z, month, d.id, std::string(to_string(m)), g);
      }
    }
    for (int n = 0; n < static_cast<int>(s.intermittents.size()); ++n) {
      const auto& r = s.intermittents[static_cast<std::size_t>(n)];
      const int z = s.zone_index(r.zone);
      const double g = val(VarKind::Intermittent, {z, t, n});
      if (g != 0.0) put(z, month, r.id, "el", g);
    }
    for (int k = 0; k < static_cast<int>(s.storages.size()); ++k) {
      const auto& st = s.storages[static_cast<std::size_t>(k)];
      const int z = s.zone_index(st.zone);
      const double o = val(VarKind::StorageOut, {z, t, k});
      const double in = val(VarKind::StorageIn, {z, t, k});
      if (o != 0.0) put(z, month, st.id, "el", o);
      if (in != 0.0) put(z, month, st.id + ".charge", "el", -in);
    }
    for (int z = 0; z < static_cast<int>(s.zones.size()); ++z) {
      double net_export = 0.0;
      for (int zz = 0; zz < static_cast<int>(s.zones.size()); ++zz) net_export += val(VarKind::Exchange, {z, t, zz});
      if (net_export != 0.0) put(z, month, "net_export", "el", net_export);
      const double q = val(VarKind::Curtailment, {z, t});
      if (q != 0.0) put(z, month, "curtailment", "el", q);
      for (Product m : kProducts) {
        const double nse = val(VarKind::NonServed, {z, t, -1, static_cast<int>(m)});
        if (nse != 0.0) put(z, month, "non_served", std::string(to_string(m)), nse);
      }
    }
  }
  for (const auto& [key, v] : agg) {
    const auto& [z, month, ord, item, product] = key;
    out.dispatch_monthly.push_back({s.zones[static_cast<std::size_t>(z)].id, month, item, product, v});
  }
  return out;
}

std::vector<std::string> diagnose_infeasibility(const LpProblem& p, const LpSolution& sol,
                                                const SolverOptions& options, int max_rows) {
  auto name = [&](int r) {
    return p.index.num_rows() == p.num_rows() ? p.index.row_name(r) : "row " + std::to_string(r);
  };
  std::vector<std::string> out;
  if (p.num_rows() <= max_rows) {
    // Deletion filter: drop each row in turn; keep it if the rest becomes feasible.
    std::vector<bool> keep(static_cast<std::size_t>(p.num_rows()), true);
    auto solve_subset = [&](const std::vector<bool>& active) {
      LpProblem q;
      q.objective.assign(p.objective.size(), 0.0);
      q.lower = p.lower;
      q.upper = p.upper;
      std::vector<int> remap(active.size(), -1);
      for (std::size_t i = 0; i < active.size(); ++i) {
        if (!active[i]) continue;
        remap[i] = q.add_row(p.senses[i], p.rhs[i]);
      }
      for (const auto& e : p.entries) {
        const int r = remap[static_cast<std::size_t>(e.row)];
        if (r >= 0) q.add_entry(r, e.col, e.value);
      }
      return solve(q, options).status;
    };
    for (std::size_t i = 0; i < keep.size(); ++i) {
      keep[i] = false;
      if (solve_subset(keep) != SolveStatus::Infeasible) keep[i] = true;
    }
    for (std::size_t i = 0; i < keep.size(); ++i) {
      if (keep[i]) out.push_back(name(static_cast<int>(i)));
    }
    return out;
  }
  std::vector<std::pair<double, int>> weight;
  for (std::size_t i = 0; i < sol.ray.size(); ++i) {
    if (std::abs(sol.ray[i]) > 1e-9) weight.emplace_back(-std::abs(sol.ray[i]), static_cast<int>(i));
  }
  std::sort(weight.begin(), weight.end());
  for (std::size_t k = 0; k < weight.size() && k < 20; ++k) out.push_back(name(weight[k].second));
  return out;
}

SystemOutcome run_scenario(const Scenario& s, const SolverOptions& options) {
  const LpProblem p = build_lp(s);
  const LpSolution sol = solve(p, options);
  SystemOutcome out = evaluate(s, p, sol);
  if (sol.status == SolveStatus::Infeasible) {
    std::string msg = "infeasible; conflicting rows:";
    for (const auto& r : diagnose_infeasibility(p, sol, options)) msg += " " + r;
    out.diagnosis = msg;
  } else if (sol.status != SolveStatus::Optimal) {
    out.diagnosis = std::string(to_string(sol.status));
  }
  return out;
}

}  // namespace medea
