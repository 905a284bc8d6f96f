#include "medea/formulation.hpp"

#include <stdexcept>
#include <string>
#include <tuple>

#include "medea/hash.hpp"

namespace medea {

namespace {

class Builder {
 public:
  explicit Builder(const Scenario& s)
      : s_(s), T_(s.horizon), frac_(s.annual_fraction()), nz_(static_cast<int>(s.zones.size())) {
    if (T_ < 0) throw std::invalid_argument("scenario: negative horizon");
    p_.horizon = T_;
    p_.zone_offset.assign(static_cast<std::size_t>(nz_), 0.0);
  }

  LpProblem build() {
    zones();
    dispatchables();
    intermittents();
    storages();
    links();
    policy();
    double offset = 0.0;
    for (double z : p_.zone_offset) offset += z;
    p_.objective_offset = offset;
    p_.canonicalize();
    p_.scenario_hash = scenario_hash(s_);
    return std::move(p_);
  }

 private:
  std::string label(const char* tag, const EntityKey& k, const std::string& entity) const {
    std::string n = tag;
    if (k.zone >= 0) n += "." + s_.zones[static_cast<std::size_t>(k.zone)].id;
    if (k.hour >= 0) n += ".t" + std::to_string(k.hour + 1);
    if (!entity.empty()) n += "." + entity;
    if (k.product >= 0) n += "." + std::string(to_string(static_cast<Product>(k.product)));
    if (k.fuel >= 0) n += "." + s_.fuels[static_cast<std::size_t>(k.fuel)].id;
    if (k.corner >= 0) n += ".l" + std::to_string(k.corner + 1);
    return n;
  }

  int col(VarKind kind, const EntityKey& k, const std::string& entity, double cost, int zone,
          double lo = 0.0, double hi = kInf) {
    const int c = p_.add_column(cost, lo, hi);
    p_.column_zone.back() = zone;
    p_.index.add_column({kind, k}, label(to_string(kind), k, entity));
    return c;
  }

  int row(RowFamily fam, const EntityKey& k, const std::string& entity, RowSense sense, double rhs) {
    const int r = p_.add_row(sense, rhs);
    p_.index.add_row({fam, k}, label(to_string(fam), k, entity));
    return r;
  }

  void coef(int r, int c, double v) {
    if (r >= 0 && c >= 0 && v != 0.0) p_.add_entry(r, c, v);
  }

  int zone_of(const std::string& id, const std::string& who) const {
    const int z = s_.zone_index(id);
    if (z < 0) throw std::invalid_argument(who + ": unknown zone '" + id + "'");
    return z;
  }

  int at(const std::vector<int>& v, int t) const { return v.empty() ? -1 : v[static_cast<std::size_t>(t)]; }

  void zones();
  void dispatchables();
  void intermittents();
  void storages();
  void links();
  void policy();

  const Scenario& s_;
  int T_;
  double frac_;
  int nz_;
  LpProblem p_;

  // Per zone, per hour row ids.
  std::vector<std::vector<int>> bal_el_, bal_ht_, reserve_, curtail_;
  std::vector<std::vector<int>> renewable_cols_;
  std::vector<std::vector<std::pair<int, double>>> wind_cols_;
  std::vector<double> wind_initial_;
};

bool produces_heat(const DispatchableTech& d) {
  if (d.is_chp()) {
    for (const auto& c : d.chp->corners) {
      if (c.heat > 0.0) return true;
    }
    return false;
  }
  return d.efficiency_ht > 0.0;
}

bool included(const DispatchableTech& d) { return d.initial_capacity > 0.0 || d.expandable; }
bool included(const IntermittentTech& r) { return r.initial_capacity > 0.0 || r.expandable; }

void Builder::zones() {
  const auto nz = static_cast<std::size_t>(nz_);
  bal_el_.assign(nz, {});
  bal_ht_.assign(nz, {});
  reserve_.assign(nz, {});
  curtail_.assign(nz, {});
  renewable_cols_.assign(nz, {});
  wind_cols_.assign(nz, {});
  wind_initial_.assign(nz, 0.0);

  for (int z = 0; z < nz_; ++z) {
    const auto zu = static_cast<std::size_t>(z);
    const Zone& zone = s_.zones[zu];
    bool heat = s_.peak_load(zone.id, Product::Heat) > 0.0;
    for (const auto& d : s_.dispatchables) {
      if (d.zone == zone.id && included(d) && produces_heat(d)) heat = true;
    }
    bool curtailable = false;
    double reserve_rhs = zone.reserve_load_factor * s_.peak_load(zone.id, Product::Electricity);
    for (const auto& r : s_.intermittents) {
      if (r.zone != zone.id || r.kind == IntermittentKind::RunOfRiver) continue;
      reserve_rhs += zone.reserve_intermittent_factor * r.peak_profile() * r.initial_capacity;
      if (included(r)) curtailable = true;
    }

    for (int t = 0; t < T_; ++t) {
      const EntityKey k{z, t};
      const int be = row(RowFamily::ElectricityBalance, k, "", RowSense::Equal,
                         s_.demand_at(zone.id, Product::Electricity, t));
      bal_el_[zu].push_back(be);
      const int nse_el = col(VarKind::NonServed, {z, t, -1, static_cast<int>(Product::Electricity)}, "",
                             zone.voll, z);
      coef(be, nse_el, 1.0);
      if (heat) {
        const int bh = row(RowFamily::HeatBalance, k, "", RowSense::Equal, s_.demand_at(zone.id, Product::Heat, t));
        bal_ht_[zu].push_back(bh);
        const int nse_ht =
            col(VarKind::NonServed, {z, t, -1, static_cast<int>(Product::Heat)}, "", zone.voll, z);
        coef(bh, nse_ht, 1.0);
      }
      reserve_[zu].push_back(row(RowFamily::Reserve, k, "", RowSense::GreaterEqual, reserve_rhs));
      if (curtailable) {
        const int q = col(VarKind::Curtailment, k, "", 0.0, z);
        coef(be, q, -1.0);
        const int rc = row(RowFamily::Curtailment, k, "", RowSense::LessEqual, 0.0);
        curtail_[zu].push_back(rc);
        coef(rc, q, 1.0);
      }
    }
  }
}

void Builder::dispatchables() {
  for (int i = 0; i < static_cast<int>(s_.dispatchables.size()); ++i) {
    const auto& d = s_.dispatchables[static_cast<std::size_t>(i)];
    if (!included(d)) continue;
    const int z = zone_of(d.zone, "dispatchable/" + d.id);
    const auto zu = static_cast<std::size_t>(z);
    const double G = d.initial_capacity;

    std::vector<int> fuels;
    for (const auto& f : d.fuels) {
      const int fi = s_.fuel_index(f);
      if (fi < 0) throw std::invalid_argument("dispatchable/" + d.id + ": unknown fuel '" + f + "'");
      fuels.push_back(fi);
    }

    const EntityKey ek{z, -1, i};
    int add = -1;
    if (d.expandable) add = col(VarKind::AddedGeneration, ek, d.id, (d.capital_cost + d.om_qfix) * frac_, z);
    const int deco = col(VarKind::DecommissionedGen, ek, d.id, -d.om_qfix * frac_, z);
    p_.zone_offset[zu] += G * d.om_qfix * frac_;
    const int dr = row(RowFamily::DecommissionGen, ek, d.id, RowSense::LessEqual, G);
    coef(dr, deco, 1.0);
    coef(dr, add, -1.0);

    std::vector<Product> products;
    for (Product m : kProducts) {
      bool active = false;
      if (d.is_chp()) {
        for (const auto& c : d.chp->corners) {
          if ((m == Product::Electricity ? c.electricity : c.heat) > 0.0) active = true;
        }
      } else {
        active = d.efficiency(m) > 0.0;
      }
      if (active) products.push_back(m);
    }

    auto balance_row = [&](Product m, int t) {
      return m == Product::Electricity ? bal_el_[zu][static_cast<std::size_t>(t)]
                                       : at(bal_ht_[zu], t);
    };

    for (int t = 0; t < T_; ++t) {
      const auto tu = static_cast<std::size_t>(t);
      std::vector<int> burn(fuels.size());
      for (std::size_t fk = 0; fk < fuels.size(); ++fk) {
        const Fuel& fuel = s_.fuels[static_cast<std::size_t>(fuels[fk])];
        double cost = 0.0;
        if (!fuel.electricity) {
          cost = s_.fuel_price(d.zone, fuel.id, t) + s_.co2_price(d.zone, t) * fuel.co2_intensity;
        }
        burn[fk] = col(VarKind::FuelBurn, {z, t, i, -1, fuels[fk]}, d.id, cost, z);
        if (fuel.electricity) coef(bal_el_[zu][tu], burn[fk], -1.0);
      }

      auto add_output = [&](Product m, std::size_t fk) {
        const int g = col(VarKind::Generation, {z, t, i, static_cast<int>(m), fuels[fk]}, d.id, d.om_var, z);
        coef(balance_row(m, t), g, 1.0);
        if (m == Product::Electricity) {
          coef(reserve_[zu][tu], g, 1.0);
          if (s_.fuels[static_cast<std::size_t>(fuels[fk])].renewable) renewable_cols_[zu].push_back(g);
        }
        return g;
      };

      if (d.is_chp()) {
        const auto& corners = d.chp->corners;
        const int cap = row(RowFamily::ChpCapacity, {z, t, i}, d.id, RowSense::LessEqual, G);
        coef(cap, add, -1.0);
        coef(cap, deco, 1.0);
        for (std::size_t fk = 0; fk < fuels.size(); ++fk) {
          const int f = fuels[fk];
          const int fuel_row = row(RowFamily::ChpFuel, {z, t, i, -1, f}, d.id, RowSense::Equal, 0.0);
          coef(fuel_row, burn[fk], 1.0);
          std::vector<int> out_rows;
          for (Product m : products) {
            const int g = add_output(m, fk);
            const int r = row(RowFamily::ChpOutput, {z, t, i, static_cast<int>(m), f}, d.id, RowSense::Equal, 0.0);
            coef(r, g, 1.0);
            out_rows.push_back(r);
          }
          for (std::size_t l = 0; l < corners.size(); ++l) {
            const auto& c = corners[l];
            if (!(c.fuel > 0.0)) continue;
            const int w = col(VarKind::CornerWeight, {z, t, i, -1, f, static_cast<int>(l)}, d.id, 0.0, z);
            coef(cap, w, 1.0);
            coef(fuel_row, w, -c.fuel);
            for (std::size_t mk = 0; mk < products.size(); ++mk) {
              coef(out_rows[mk], w, -(products[mk] == Product::Electricity ? c.electricity : c.heat));
            }
          }
        }
      } else {
        for (Product m : products) {
          const int cap =
              row(RowFamily::GenerationCapacity, {z, t, i, static_cast<int>(m)}, d.id, RowSense::LessEqual, G);
          coef(cap, add, -1.0);
          coef(cap, deco, 1.0);
          for (std::size_t fk = 0; fk < fuels.size(); ++fk) {
            const int g = add_output(m, fk);
            coef(cap, g, 1.0);
            const int link = row(RowFamily::FuelConversion, {z, t, i, static_cast<int>(m), fuels[fk]}, d.id,
                                 RowSense::Equal, 0.0);
            coef(link, g, 1.0);
            coef(link, burn[fk], -d.efficiency(m));
          }
        }
      }
    }
  }
}

void Builder::intermittents() {
  for (int n = 0; n < static_cast<int>(s_.intermittents.size()); ++n) {
    const auto& r = s_.intermittents[static_cast<std::size_t>(n)];
    if (!included(r)) continue;
    const int z = zone_of(r.zone, "intermittent/" + r.id);
    const auto zu = static_cast<std::size_t>(z);
    const Zone& zone = s_.zones[zu];
    const double R = r.initial_capacity;
    const bool ror = r.kind == IntermittentKind::RunOfRiver;

    const EntityKey ek{z, -1, n};
    int add = -1;
    if (r.expandable) add = col(VarKind::AddedIntermittent, ek, r.id, (r.capital_cost + r.om_qfix) * frac_, z);
    const int deco = col(VarKind::DecommissionedInt, ek, r.id, -r.om_qfix * frac_, z);
    p_.zone_offset[zu] += R * r.om_qfix * frac_;
    const int dr = row(RowFamily::DecommissionInt, ek, r.id, RowSense::LessEqual, R);
    coef(dr, deco, 1.0);
    coef(dr, add, -1.0);

    if (r.kind == IntermittentKind::WindOnshore) {
      if (add >= 0) wind_cols_[zu].emplace_back(add, 1.0);
      wind_cols_[zu].emplace_back(deco, -1.0);
      wind_initial_[zu] += R;
    }

    const double peak = r.peak_profile();
    for (int t = 0; t < T_; ++t) {
      const auto tu = static_cast<std::size_t>(t);
      const double phi = r.profile[tu];
      const int g = col(VarKind::Intermittent, {z, t, n}, r.id, r.om_var, z);
      const int out = row(RowFamily::IntermittentOutput, {z, t, n}, r.id, RowSense::Equal, phi * R);
      coef(out, g, 1.0);
      coef(out, add, -phi);
      coef(out, deco, phi);
      coef(bal_el_[zu][tu], g, 1.0);
      if (ror) {
        coef(reserve_[zu][tu], g, 1.0);
      } else {
        coef(curtail_[zu][tu], g, -1.0);
        coef(reserve_[zu][tu], add, -zone.reserve_intermittent_factor * peak);
      }
      renewable_cols_[zu].push_back(g);
    }
  }
}

void Builder::storages() {
  for (int k = 0; k < static_cast<int>(s_.storages.size()); ++k) {
    const auto& st = s_.storages[static_cast<std::size_t>(k)];
    const int z = zone_of(st.zone, "storage/" + st.id);
    const auto zu = static_cast<std::size_t>(z);
    const EntityKey ek{z, -1, k};

    int add_s = -1;
    int add_v = -1;
    if (st.expandable) {
      add_s = col(VarKind::AddedStoragePower, ek, st.id, st.capital_cost_power * frac_, z);
      add_v = col(VarKind::AddedStorageEnergy, ek, st.id, st.capital_cost_energy * frac_, z);
      const int cover = row(RowFamily::StorageEnergyCoversPower, ek, st.id, RowSense::GreaterEqual, 0.0);
      coef(cover, add_v, 1.0);
      coef(cover, add_s, -1.0);
    }
    const bool has_in = st.power_in > 0.0 || st.expandable;
    const double vbar = st.boundary();

    int prev_v = -1;
    for (int t = 0; t < T_; ++t) {
      const auto tu = static_cast<std::size_t>(t);
      const EntityKey kt{z, t, k};

      const int out = col(VarKind::StorageOut, kt, st.id, 0.0, z);
      coef(bal_el_[zu][tu], out, 1.0);
      coef(reserve_[zu][tu], out, 1.0);
      const int cap_out = row(RowFamily::StorageOutCapacity, kt, st.id, RowSense::LessEqual, st.power_out);
      coef(cap_out, out, 1.0);
      coef(cap_out, add_s, -1.0);

      int in = -1;
      if (has_in) {
        in = col(VarKind::StorageIn, kt, st.id, 0.0, z);
        coef(bal_el_[zu][tu], in, -1.0);
        coef(reserve_[zu][tu], in, 1.0);
        const int cap_in = row(RowFamily::StorageInCapacity, kt, st.id, RowSense::LessEqual, st.power_in);
        coef(cap_in, in, 1.0);
        coef(cap_in, add_s, -1.0);
      }

      const int v = col(VarKind::StorageLevel, kt, st.id, 0.0, z);
      const int cap_v = row(RowFamily::StorageEnergyCapacity, kt, st.id, RowSense::LessEqual, st.energy);
      coef(cap_v, v, 1.0);
      coef(cap_v, add_v, -1.0);

      if (st.efficiency_out > 0.0) {
        const double rhs = st.inflow_at(t) + (t == 0 ? vbar : 0.0);
        const int bal = row(RowFamily::StorageBalance, kt, st.id, RowSense::Equal, rhs);
        coef(bal, v, 1.0);
        coef(bal, in, -st.efficiency_in);
        coef(bal, out, 1.0 / st.efficiency_out);
        coef(bal, prev_v, -1.0);
      }
      if (t == 0) {
        const int r = row(RowFamily::StorageStartLevel, ek, st.id, RowSense::GreaterEqual, vbar);
        coef(r, v, 1.0);
      }
      if (t == T_ - 1) {
        const int r = row(RowFamily::StorageEndLevel, ek, st.id, RowSense::GreaterEqual, vbar);
        coef(r, v, 1.0);
      }
      prev_v = v;
    }
  }
}

void Builder::links() {
  for (const auto& link : s_.links) {
    const std::string who = "link/" + link.id();
    const int a = zone_of(link.from, who);
    const int b = zone_of(link.to, who);
    const auto& za = s_.zones[static_cast<std::size_t>(a)];
    const auto& zb = s_.zones[static_cast<std::size_t>(b)];
    const double X = link.initial_ntc;
    const double bound = X + (link.expandable ? link.max_expansion : 0.0);

    auto distance = [](const Zone& from, const Zone& to) {
      auto it = from.distance_km.find(to.id);
      return it == from.distance_km.end() ? 0.0 : it->second;
    };

    int add_ab = -1;
    int add_ba = -1;
    if (link.expandable) {
      add_ab = col(VarKind::AddedTransfer, {a, -1, b}, zb.id,
                   0.5 * link.capital_cost * distance(za, zb) * frac_, a);
      add_ba = col(VarKind::AddedTransfer, {b, -1, a}, za.id,
                   0.5 * link.capital_cost * distance(zb, za) * frac_, b);
      const int sym = row(RowFamily::TransferExpansionSymmetry, {a, -1, b}, zb.id, RowSense::Equal, 0.0);
      coef(sym, add_ab, 1.0);
      coef(sym, add_ba, -1.0);
    }

    for (int t = 0; t < T_; ++t) {
      const auto tu = static_cast<std::size_t>(t);
      const int x_ab = col(VarKind::Exchange, {a, t, b}, zb.id, 0.0, -1, -bound, bound);
      const int x_ba = col(VarKind::Exchange, {b, t, a}, za.id, 0.0, -1, -bound, bound);
      coef(bal_el_[static_cast<std::size_t>(a)][tu], x_ab, -1.0);
      coef(bal_el_[static_cast<std::size_t>(b)][tu], x_ba, -1.0);
      const int anti = row(RowFamily::TransferAntisymmetry, {a, t, b}, zb.id, RowSense::Equal, 0.0);
      coef(anti, x_ab, 1.0);
      coef(anti, x_ba, 1.0);
      for (auto [x, add, from, to] : {std::tuple{x_ab, add_ab, a, b}, std::tuple{x_ba, add_ba, b, a}}) {
        const EntityKey k{from, t, to};
        const auto& partner = s_.zones[static_cast<std::size_t>(to)].id;
        const int up = row(RowFamily::TransferUpper, k, partner, RowSense::LessEqual, X);
        coef(up, x, 1.0);
        coef(up, add, -1.0);
        const int lo = row(RowFamily::TransferLower, k, partner, RowSense::GreaterEqual, -X);
        coef(lo, x, 1.0);
        coef(lo, add, 1.0);
      }
    }
  }
}

void Builder::policy() {
  for (int z = 0; z < nz_; ++z) {
    const auto zu = static_cast<std::size_t>(z);
    const Zone& zone = s_.zones[zu];
    if (zone.renewable_target && *zone.renewable_target > 0.0) {
      const int r = row(RowFamily::RenewableTarget, {z}, "", RowSense::GreaterEqual, renewable_target_rhs(s_, z));
      for (int c : renewable_cols_[zu]) coef(r, c, 1.0);
    }
    if (zone.wind_cap) {
      const int r = row(RowFamily::WindCap, {z}, "", RowSense::LessEqual, *zone.wind_cap - wind_initial_[zu]);
      for (auto [c, v] : wind_cols_[zu]) coef(r, c, v);
    }
  }
}

}  // namespace

double renewable_target_rhs(const Scenario& s, int zone) {
  const Zone& z = s.zones.at(static_cast<std::size_t>(zone));
  double rhs = z.renewable_target.value_or(0.0) * s.annual_fraction() / 1000.0;
  for (const auto& st : s.storages) {
    if (st.zone != z.id) continue;
    for (int t = 0; t < s.horizon; ++t) rhs -= st.inflow_at(t);
  }
  return rhs;
}

LpProblem build_lp(const Scenario& s) {
  return Builder(s).build();
}

}  // namespace medea
