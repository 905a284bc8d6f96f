#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "medea/domain.hpp"

namespace medea {
namespace {

class Checker {
 public:
  explicit Checker(const Scenario& s) : s_(s) {}

  std::vector<Violation> run() {
    check_scenario();
    check_zones();
    check_fuels();
    check_dispatchables();
    check_intermittents();
    check_storages();
    check_links();
    check_demand();
    check_prices();
    return std::move(out_);
  }

 private:
  void add(std::string path, std::string rule, std::string message) {
    out_.push_back({std::move(path), std::move(rule), std::move(message)});
  }

  static std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  }

  void nonnegative(const std::string& path, const char* field, double v) {
    if (!std::isfinite(v) || v < 0.0) {
      add(path + "/" + field, "value.nonnegative", std::string(field) + " = " + num(v) + " must be >= 0");
    }
  }

  void zone_ref(const std::string& path, const std::string& zone) {
    if (!s_.find_zone(zone)) add(path + "/zone", "ref.zone", "unknown zone '" + zone + "'");
  }

  // Length must equal the horizon; values finite and within [lo, hi].
  void series(const std::string& path, const std::vector<double>& v, double lo, double hi,
              const char* range_rule) {
    if (static_cast<int>(v.size()) != s_.horizon) {
      add(path, "series.length",
          "length " + std::to_string(v.size()) + " != horizon " + std::to_string(s_.horizon));
    }
    for (std::size_t t = 0; t < v.size(); ++t) {
      if (!std::isfinite(v[t]) || v[t] < lo || v[t] > hi) {
        add(path + "[" + std::to_string(t) + "]", range_rule,
            "value " + num(v[t]) + " outside [" + num(lo) + ", " + num(hi) + "]");
      }
    }
  }

  template <class Range, class Id>
  void unique_ids(const Range& items, const char* kind, Id id_of) {
    std::set<std::string> seen;
    for (const auto& item : items) {
      auto id = id_of(item);
      if (!seen.insert(id).second) add(std::string(kind) + "/" + id, "id.duplicate", "duplicate id");
    }
  }

  void check_scenario() {
    if (s_.horizon < 0) add("scenario/horizon", "value.nonnegative", "horizon must be >= 0");
    if (!(s_.hours_per_year > 0.0)) add("scenario/hours_per_year", "value.positive", "must be > 0");
    if (!std::isfinite(s_.wacc) || s_.wacc < 0.0) add("scenario/wacc", "value.nonnegative", "must be >= 0");
    if (!s_.focus_zone.empty() && !s_.find_zone(s_.focus_zone)) {
      add("scenario/focus_zone", "ref.zone", "unknown zone '" + s_.focus_zone + "'");
    }
  }

  void check_zones() {
    unique_ids(s_.zones, "zone", [](const Zone& z) { return z.id; });
    for (const auto& z : s_.zones) {
      const std::string path = "zone/" + z.id;
      nonnegative(path, "reserve_load_factor", z.reserve_load_factor);
      nonnegative(path, "reserve_intermittent_factor", z.reserve_intermittent_factor);
      if (!std::isfinite(z.voll) || z.voll <= 0.0) add(path + "/voll", "value.positive", "voll must be > 0");
      if (z.renewable_target) nonnegative(path, "renewable_target", *z.renewable_target);
      if (z.wind_cap) nonnegative(path, "wind_cap", *z.wind_cap);
      for (const auto& [other, km] : z.distance_km) {
        const Zone* partner = s_.find_zone(other);
        if (!partner) {
          add(path + "/distance." + other, "ref.zone", "unknown zone '" + other + "'");
          continue;
        }
        nonnegative(path, ("distance." + other).c_str(), km);
        auto back = partner->distance_km.find(z.id);
        if (back != partner->distance_km.end() && back->second != km) {
          add(path + "/distance." + other, "distance.symmetric",
              "distance differs from the reverse direction");
        }
      }
    }
  }

  void check_fuels() {
    unique_ids(s_.fuels, "fuel", [](const Fuel& f) { return f.id; });
    for (const auto& f : s_.fuels) {
      const std::string path = "fuel/" + f.id;
      nonnegative(path, "co2_intensity", f.co2_intensity);
      nonnegative(path, "air_pollution_var", f.air_pollution_var);
      nonnegative(path, "air_pollution_fix", f.air_pollution_fix);
      if ((f.renewable || f.electricity) && f.co2_intensity != 0.0) {
        add(path + "/co2_intensity", "fuel.zero_emission", "renewable and power carriers emit no CO2");
      }
    }
  }

  void check_dispatchables() {
    unique_ids(s_.dispatchables, "dispatchable", [](const DispatchableTech& d) { return d.id; });
    for (const auto& d : s_.dispatchables) {
      const std::string path = "dispatchable/" + d.id;
      zone_ref(path, d.zone);
      if (d.fuels.empty()) add(path + "/fuels", "tech.fuels_nonempty", "fuel set is empty");
      for (const auto& f : d.fuels) {
        if (!s_.find_fuel(f)) add(path + "/fuels", "ref.fuel", "unknown fuel '" + f + "'");
      }
      nonnegative(path, "initial_capacity", d.initial_capacity);
      nonnegative(path, "capital_cost", d.capital_cost);
      nonnegative(path, "om_qfix", d.om_qfix);
      nonnegative(path, "om_var", d.om_var);
      if (d.is_chp()) {
        const auto& corners = d.chp->corners;
        if (corners.empty()) add(path + "/chp", "chp.corners", "operating region has no corners");
        for (std::size_t l = 0; l < corners.size(); ++l) {
          const auto& c = corners[l];
          const std::string cp = path + "/chp/l" + std::to_string(l + 1);
          if (c.electricity < 0 || c.electricity > 1 || c.heat < 0 || c.heat > 1) {
            add(cp, "chp.output_range", "corner outputs must lie in [0, 1]");
          }
          if ((c.electricity > 0 || c.heat > 0) && !(c.fuel > 0)) {
            add(cp, "chp.fuel_positive", "corner with output needs positive fuel input");
          }
        }
      } else {
        if (!std::isfinite(d.efficiency_el) || d.efficiency_el < 0.0 || d.efficiency_el > 1.0) {
          add(path + "/efficiency.el", "tech.efficiency_range", "electric efficiency must lie in [0, 1]");
        }
        if (!std::isfinite(d.efficiency_ht) || d.efficiency_ht < 0.0) {
          add(path + "/efficiency.ht", "tech.efficiency_range", "heat efficiency must be >= 0");
        }
        if (!(d.efficiency_el > 0.0) && !(d.efficiency_ht > 0.0)) {
          add(path + "/efficiency", "tech.efficiency_range", "no output with positive efficiency");
        }
      }
    }
  }

  void check_intermittents() {
    unique_ids(s_.intermittents, "intermittent", [](const IntermittentTech& r) { return r.id; });
    for (const auto& r : s_.intermittents) {
      const std::string path = "intermittent/" + r.id;
      zone_ref(path, r.zone);
      nonnegative(path, "initial_capacity", r.initial_capacity);
      nonnegative(path, "capital_cost", r.capital_cost);
      nonnegative(path, "om_qfix", r.om_qfix);
      nonnegative(path, "om_var", r.om_var);
      series(path + "/profile", r.profile, 0.0, 1.0, "profile.range");
      if (r.pollution_fuel && !s_.find_fuel(*r.pollution_fuel)) {
        add(path + "/pollution_fuel", "ref.fuel", "unknown fuel '" + *r.pollution_fuel + "'");
      }
    }
  }

  void check_storages() {
    unique_ids(s_.storages, "storage", [](const StorageTech& k) { return k.id; });
    for (const auto& k : s_.storages) {
      const std::string path = "storage/" + k.id;
      zone_ref(path, k.zone);
      nonnegative(path, "power_in", k.power_in);
      nonnegative(path, "power_out", k.power_out);
      nonnegative(path, "energy", k.energy);
      for (auto [name, eta] : {std::pair{"efficiency_in", k.efficiency_in},
                               std::pair{"efficiency_out", k.efficiency_out}}) {
        if (!std::isfinite(eta) || eta <= 0.0 || eta > 1.0) {
          add(path + "/" + name, "storage.efficiency_range", std::string(name) + " must lie in (0, 1]");
        }
      }
      if (k.energy < std::max(k.power_in, k.power_out) * 1.0) {
        add(path + "/energy", "storage.energy_covers_power",
            "energy capacity must hold at least one hour at full power");
      }
      if (!k.inflow.empty()) {
        series(path + "/inflow", k.inflow, 0.0, HUGE_VAL, "inflow.nonnegative");
      }
      if (k.boundary_level) {
        nonnegative(path, "boundary_level", *k.boundary_level);
        if (!k.expandable && *k.boundary_level > k.energy) {
          add(path + "/boundary_level", "storage.boundary_fits", "boundary level exceeds energy capacity");
        }
      }
      nonnegative(path, "capital_cost_power", k.capital_cost_power);
      nonnegative(path, "capital_cost_energy", k.capital_cost_energy);
    }
  }

  void check_links() {
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& l : s_.links) {
      const std::string path = "link/" + l.id();
      const Zone* a = s_.find_zone(l.from);
      const Zone* b = s_.find_zone(l.to);
      if (!a) add(path + "/from", "ref.zone", "unknown zone '" + l.from + "'");
      if (!b) add(path + "/to", "ref.zone", "unknown zone '" + l.to + "'");
      if (l.from == l.to) add(path, "link.distinct", "link connects a zone to itself");
      auto key = std::minmax(l.from, l.to);
      if (!seen.insert({key.first, key.second}).second) add(path, "id.duplicate", "duplicate link");
      nonnegative(path, "initial_ntc", l.initial_ntc);
      nonnegative(path, "max_expansion", l.max_expansion);
      nonnegative(path, "capital_cost", l.capital_cost);
      if (l.expandable && a && b && !a->distance_km.contains(l.to) && !b->distance_km.contains(l.from)) {
        add(path, "link.distance", "expandable link needs a zone distance");
      }
    }
  }

  void check_demand() {
    for (const auto& z : s_.zones) {
      auto it = s_.demand.find(z.id);
      const std::string path = "demand/" + z.id;
      if (it == s_.demand.end()) {
        add(path + "/el", "series.missing", "no electricity demand series");
        continue;
      }
      series(path + "/el", it->second.electricity, 0.0, HUGE_VAL, "demand.nonnegative");
      if (!it->second.heat.empty()) series(path + "/ht", it->second.heat, 0.0, HUGE_VAL, "demand.nonnegative");
    }
    for (const auto& [zone, d] : s_.demand) {
      if (!s_.find_zone(zone)) add("demand/" + zone, "ref.zone", "demand for unknown zone");
    }
  }

  void check_prices() {
    std::set<std::pair<std::string, std::string>> needed;
    for (const auto& d : s_.dispatchables) {
      for (const auto& f : d.fuels) {
        const Fuel* fuel = s_.find_fuel(f);
        if (fuel && !fuel->electricity) needed.insert({d.zone, f});
      }
    }
    for (const auto& key : needed) {
      const std::string path = "price/" + key.first + "/" + key.second;
      auto it = s_.fuel_prices.find(key);
      if (it == s_.fuel_prices.end()) {
        add(path, "series.missing", "no fuel price series");
        continue;
      }
      series(path, it->second, 0.0, HUGE_VAL, "price.nonnegative");
    }
    for (const auto& [zone, v] : s_.co2_prices) {
      series("co2_price/" + zone, v, 0.0, HUGE_VAL, "price.nonnegative");
    }
  }

  const Scenario& s_;
  std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> validate_scenario(const Scenario& s) { return Checker(s).run(); }

}  // namespace medea
