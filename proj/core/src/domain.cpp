#include "medea/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace medea {

std::string_view to_string(Product p) {
  return p == Product::Electricity ? "el" : "ht";
}

std::string_view to_string(IntermittentKind k) {
  switch (k) {
    case IntermittentKind::WindOnshore:
      return "wind_on";
    case IntermittentKind::WindOffshore:
      return "wind_off";
    case IntermittentKind::Solar:
      return "pv";
    case IntermittentKind::RunOfRiver:
      return "ror";
  }
  return "?";
}

std::optional<IntermittentKind> parse_intermittent_kind(std::string_view s) {
  if (s == "wind_on") return IntermittentKind::WindOnshore;
  if (s == "wind_off") return IntermittentKind::WindOffshore;
  if (s == "pv") return IntermittentKind::Solar;
  if (s == "ror") return IntermittentKind::RunOfRiver;
  return std::nullopt;
}

double annuity(double overnight_cost, double wacc, double lifetime) {
  if (!std::isfinite(overnight_cost) || !std::isfinite(wacc) || !std::isfinite(lifetime)) {
    throw std::invalid_argument("annuity: non-finite input");
  }
  if (overnight_cost < 0.0 || wacc < 0.0 || lifetime < 1.0) {
    throw std::invalid_argument("annuity: requires cost >= 0, wacc >= 0, lifetime >= 1");
  }
  if (wacc == 0.0) return overnight_cost / lifetime;
  return overnight_cost * wacc / (1.0 - std::pow(1.0 + wacc, -lifetime));
}

FeasibleOperatingRegion build_feasible_operating_region(double eta_el, double beta,
                                                        double sigma_bp, double max_heat) {
  for (double v : {eta_el, beta, sigma_bp, max_heat}) {
    if (!std::isfinite(v)) throw std::invalid_argument("operating region: non-finite parameter");
  }
  if (eta_el <= 0.0 || eta_el > 1.0) {
    throw std::invalid_argument("operating region: electrical efficiency must lie in (0, 1]");
  }
  if (beta < 0.0 || sigma_bp < 0.0 || max_heat < 0.0) {
    throw std::invalid_argument("operating region: beta, backpressure and max heat must be >= 0");
  }
  auto corner = [&](double el, double ht) {
    return OperatingCorner{el, ht, (el + beta * ht) / eta_el};
  };
  FeasibleOperatingRegion region;
  if (max_heat == 0.0) {
    region.corners = {corner(1.0, 0.0), corner(0.0, 0.0)};
    return region;
  }
  const double el_at_max_heat = 1.0 - beta * max_heat;
  if (el_at_max_heat < sigma_bp * max_heat) {
    throw std::invalid_argument(
        "operating region: max heat exceeds the backpressure line (1 - beta*q < sigma*q)");
  }
  region.corners = {corner(1.0, 0.0), corner(el_at_max_heat, max_heat),
                    corner(sigma_bp * max_heat, max_heat), corner(0.0, 0.0)};
  return region;
}

double IntermittentTech::peak_profile() const {
  if (profile.empty()) return 0.0;
  return *std::max_element(profile.begin(), profile.end());
}

double IntermittentTech::mean_profile() const {
  if (profile.empty()) return 0.0;
  return std::accumulate(profile.begin(), profile.end(), 0.0) / static_cast<double>(profile.size());
}

const Zone* Scenario::find_zone(std::string_view id) const {
  for (const auto& z : zones)
    if (z.id == id) return &z;
  return nullptr;
}

const Fuel* Scenario::find_fuel(std::string_view id) const {
  for (const auto& f : fuels)
    if (f.id == id) return &f;
  return nullptr;
}

int Scenario::zone_index(std::string_view id) const {
  for (std::size_t i = 0; i < zones.size(); ++i)
    if (zones[i].id == id) return static_cast<int>(i);
  return -1;
}

int Scenario::fuel_index(std::string_view id) const {
  for (std::size_t i = 0; i < fuels.size(); ++i)
    if (fuels[i].id == id) return static_cast<int>(i);
  return -1;
}

double Scenario::peak_load(std::string_view zone, Product p) const {
  auto it = demand.find(std::string(zone));
  if (it == demand.end()) return 0.0;
  const auto& series = p == Product::Electricity ? it->second.electricity : it->second.heat;
  if (series.empty()) return 0.0;
  return *std::max_element(series.begin(), series.end());
}

double Scenario::demand_at(std::string_view zone, Product p, int t) const {
  auto it = demand.find(std::string(zone));
  if (it == demand.end()) return 0.0;
  const auto& series = p == Product::Electricity ? it->second.electricity : it->second.heat;
  return series.empty() ? 0.0 : series[static_cast<std::size_t>(t)];
}

double Scenario::fuel_price(std::string_view zone, std::string_view fuel, int t) const {
  auto it = fuel_prices.find({std::string(zone), std::string(fuel)});
  if (it == fuel_prices.end() || it->second.empty()) return 0.0;
  return it->second[static_cast<std::size_t>(t)];
}

double Scenario::co2_price(std::string_view zone, int t) const {
  auto it = co2_prices.find(std::string(zone));
  if (it == co2_prices.end() || it->second.empty()) return 0.0;
  return it->second[static_cast<std::size_t>(t)];
}

void Scenario::set_co2_price(double price) {
  for (const auto& z : zones) {
    co2_prices[z.id].assign(static_cast<std::size_t>(horizon), price);
  }
}

void Scenario::refresh_annuities() {
  for (auto& d : dispatchables)
    d.capital_cost = annuity(d.investment.overnight, wacc, d.investment.lifetime);
  for (auto& r : intermittents)
    r.capital_cost = annuity(r.investment.overnight, wacc, r.investment.lifetime);
  for (auto& s : storages) {
    s.capital_cost_power = annuity(s.investment_power.overnight, wacc, s.investment_power.lifetime);
    s.capital_cost_energy =
        annuity(s.investment_energy.overnight, wacc, s.investment_energy.lifetime);
  }
  for (auto& l : links) l.capital_cost = annuity(l.investment.overnight, wacc, l.investment.lifetime);
}

void Scenario::truncate(int hours) {
  if (hours < 0) throw std::invalid_argument("horizon must be nonnegative");
  const auto n = static_cast<std::size_t>(hours);
  auto cut = [&](std::vector<double>& v, const std::string& what) {
    if (v.empty()) return;
    if (v.size() < n) {
      throw std::invalid_argument("horizon " + std::to_string(hours) + " exceeds series '" + what +
                                  "' of length " + std::to_string(v.size()));
    }
    v.resize(n);
  };
  for (auto& [zone, d] : demand) {
    cut(d.electricity, "demand.el." + zone);
    cut(d.heat, "demand.ht." + zone);
  }
  for (auto& [key, v] : fuel_prices) cut(v, "price." + key.first + "." + key.second);
  for (auto& [zone, v] : co2_prices) cut(v, "co2_price." + zone);
  for (auto& r : intermittents) cut(r.profile, "profile." + r.id);
  for (auto& s : storages) cut(s.inflow, "inflow." + s.id);
  horizon = hours;
}

}  // namespace medea
