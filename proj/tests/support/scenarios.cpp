#include "scenarios.hpp"

#include <cmath>
#include <numeric>

namespace medea::testing {

std::filesystem::path toy_config_path() { return std::filesystem::path(MEDEA_SOURCE_DIR) / "data" / "toy" / "scenario.ini"; }

Scenario single_zone(const std::vector<double>& demand) {
  Scenario s;
  s.name = "test";
  s.horizon = static_cast<int>(demand.size());
  s.focus_zone = "AT";
  Zone z;
  z.id = "AT";
  z.reserve_load_factor = 0.0;
  z.reserve_intermittent_factor = 0.0;
  s.zones.push_back(z);
  s.demand["AT"].electricity = demand;
  return s;
}

Fuel& add_fuel(Scenario& s, const std::string& id, double price, double co2_intensity) {
  Fuel f;
  f.id = id;
  f.co2_intensity = co2_intensity;
  s.fuels.push_back(f);
  for (const auto& z : s.zones) s.fuel_prices[{z.id, id}].assign(static_cast<std::size_t>(s.horizon), price);
  return s.fuels.back();
}

DispatchableTech& add_plant(Scenario& s, const std::string& id, const std::string& fuel, double capacity,
                            double eta_el, double om_var) {
  DispatchableTech d;
  d.id = id;
  d.zone = s.zones.front().id;
  d.fuels = {fuel};
  d.efficiency_el = eta_el;
  d.initial_capacity = capacity;
  d.om_var = om_var;
  s.dispatchables.push_back(d);
  return s.dispatchables.back();
}

IntermittentTech& add_intermittent(Scenario& s, const std::string& id, IntermittentKind kind, double capacity,
                                   std::vector<double> profile) {
  IntermittentTech r;
  r.id = id;
  r.zone = s.zones.front().id;
  r.kind = kind;
  r.initial_capacity = capacity;
  r.profile = std::move(profile);
  s.intermittents.push_back(r);
  return s.intermittents.back();
}

Scenario gas_plant_hour(double om_var) {
  Scenario s = single_zone({1.0});
  add_fuel(s, "gas", 20.0);
  add_plant(s, "AT.gas", "gas", 1.0, 0.5, om_var);
  return s;
}

Scenario dispatch_toy(const DispatchToy& d) {
  Scenario s = single_zone(d.demand);
  add_fuel(s, "coal", d.coal_price);
  add_fuel(s, "gas", d.gas_price);
  add_plant(s, "AT.coal", "coal", d.coal_cap, d.coal_eta, d.coal_om);
  add_plant(s, "AT.gas", "gas", d.gas_cap, d.gas_eta, d.gas_om);
  StorageTech st;
  st.id = "AT.storage";
  st.zone = "AT";
  st.power_in = d.p_in;
  st.power_out = d.p_out;
  st.energy = d.energy;
  st.efficiency_in = d.eta_in;
  st.efficiency_out = d.eta_out;
  st.boundary_level = d.boundary;
  s.storages.push_back(st);
  return s;
}

std::vector<double> lcg_series(std::size_t n, double lo, double hi, std::uint64_t seed) {
  std::vector<double> out(n);
  std::uint64_t x = seed;
  for (auto& v : out) {
    x = x * 6364136223846793005ULL + 1442695040888963407ULL;
    v = lo + (hi - lo) * static_cast<double>(x >> 11) * 0x1.0p-53;
  }
  return out;
}

namespace {

std::vector<double> with_mean(std::vector<double> v, double mean) {
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  for (auto& x : v) x *= mean / m;
  return v;
}

}  // namespace

Scenario substitution_instance(int hours, double wind_mean, double pv_mean) {
  const double load = 10.0;
  Scenario s = single_zone(std::vector<double>(static_cast<std::size_t>(hours), load));
  s.zones.front().renewable_target = 0.2 * load * s.hours_per_year * 1000.0;
  add_fuel(s, "gas", 20.0);
  add_plant(s, "AT.gas", "gas", load, 0.5);

  const auto n = static_cast<std::size_t>(hours);
  auto wind = with_mean(lcg_series(n, 0.1, 0.35, 7), wind_mean);
  std::vector<double> pv(n);
  const auto cloud = lcg_series(n, 0.6, 1.0, 11);
  for (std::size_t t = 0; t < n; ++t) {
    const double hod = static_cast<double>(t % 24);
    pv[t] = hod > 6 && hod < 18 ? std::sin(M_PI * (hod - 6.0) / 12.0) * cloud[t] : 0.0;
  }
  pv = with_mean(pv, pv_mean);

  auto& w = add_intermittent(s, "AT.wind_on", IntermittentKind::WindOnshore, 0.0, wind);
  w.expandable = true;
  w.investment = {1040e3, 30.0};
  w.om_qfix = 20000.0;
  auto& p = add_intermittent(s, "AT.pv", IntermittentKind::Solar, 0.0, pv);
  p.expandable = true;
  p.investment = {625e3, 40.0};
  p.om_qfix = 10815.0;
  s.refresh_annuities();
  return s;
}

}  // namespace medea::testing
