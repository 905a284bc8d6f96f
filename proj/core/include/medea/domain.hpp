#pragma once

// Domain model of the capacity-expansion and dispatch engine: zones, fuels,
// technologies and the Scenario that ties them to hourly time series.
//
// Units used throughout: capacities in GW, energy in GWh, specific costs in
// currency per MW (per year) or per MWh. Multiplying a GW/GWh quantity by a
// per-MW/per-MWh price yields kilo-currency, which is the unit of every cost
// the LP reports.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace medea {

enum class Product : int { Electricity = 0, Heat = 1 };

inline constexpr std::array<Product, 2> kProducts{Product::Electricity, Product::Heat};

std::string_view to_string(Product p);

enum class IntermittentKind { WindOnshore, WindOffshore, Solar, RunOfRiver };

std::string_view to_string(IntermittentKind k);
std::optional<IntermittentKind> parse_intermittent_kind(std::string_view s);

/// Overnight investment and economic lifetime; the annuity is derived from it.
struct Investment {
  double overnight = 0.0;  // currency per MW (or per MWh for storage energy)
  double lifetime = 1.0;   // years
};

/// Annualized capital cost of an overnight investment.
///
/// Returns overnight * wacc / (1 - (1 + wacc)^-lifetime), and overnight / lifetime
/// in the zero-rate limit. Throws std::invalid_argument on non-finite or
/// out-of-domain inputs.
double annuity(double overnight_cost, double wacc, double lifetime);

struct Zone {
  std::string id;
  double reserve_load_factor = 0.2;          // lambda
  double reserve_intermittent_factor = 0.1;  // sigma
  double voll = 12500.0;                     // currency per MWh
  std::optional<double> renewable_target;    // MWh per year
  std::optional<double> wind_cap;            // GW, total onshore wind
  std::map<std::string, double> distance_km;
};

struct Fuel {
  std::string id;
  double co2_intensity = 0.0;      // t CO2 per MWh fuel
  double air_pollution_var = 0.0;  // currency per MWh fuel
  double air_pollution_fix = 0.0;  // currency per MW per year
  bool renewable = false;
  bool electricity = false;  // the "power" carrier consumed by power-to-heat units
};

/// One corner of a co-generation feasible operating region, per unit of
/// electric capacity: electricity and heat output and the fuel it burns.
struct OperatingCorner {
  double electricity = 0.0;
  double heat = 0.0;
  double fuel = 0.0;
};

struct FeasibleOperatingRegion {
  std::vector<OperatingCorner> corners;  // l1..l4 (or l1, l4 when degenerate)
};

/// Extraction-condensing operating region built from the electrical efficiency,
/// the power loss per unit of heat, the backpressure ratio and the maximum heat
/// extraction per unit of electric capacity.
///
/// Corners: l1 = (1, 0), l2 = (1 - beta*q, q), l3 = (sigma_bp*q, q), l4 = (0, 0),
/// with fuel (el + beta*ht) / eta_el. A zero max_heat yields the two-corner
/// condensing region {l1, l4}.
FeasibleOperatingRegion build_feasible_operating_region(double eta_el, double beta,
                                                        double sigma_bp, double max_heat);

struct DispatchableTech {
  std::string id;
  std::string zone;
  std::vector<std::string> fuels;
  double efficiency_el = 0.0;  // ignored for CHP units
  double efficiency_ht = 0.0;
  double initial_capacity = 0.0;  // GW
  Investment investment;
  double capital_cost = 0.0;  // currency per MW and year (annuity)
  double om_qfix = 0.0;       // currency per MW and year
  double om_var = 0.0;        // currency per MWh output
  bool expandable = false;
  std::optional<FeasibleOperatingRegion> chp;

  bool is_chp() const { return chp.has_value(); }
  double efficiency(Product p) const {
    return p == Product::Electricity ? efficiency_el : efficiency_ht;
  }
};

struct IntermittentTech {
  std::string id;
  std::string zone;
  IntermittentKind kind = IntermittentKind::WindOnshore;
  double initial_capacity = 0.0;  // GW
  Investment investment;
  double capital_cost = 0.0;
  double om_qfix = 0.0;
  double om_var = 0.0;
  bool expandable = false;
  std::vector<double> profile;  // share of capacity generating, per hour
  std::optional<std::string> pollution_fuel;  // pseudo-fuel carrying air-pollution rates

  double peak_profile() const;
  double mean_profile() const;
};

struct StorageTech {
  std::string id;
  std::string zone;
  double power_in = 0.0;   // GW
  double power_out = 0.0;  // GW
  double energy = 0.0;     // GWh
  double efficiency_in = 1.0;
  double efficiency_out = 1.0;
  std::vector<double> inflow;  // GW, may be empty (no natural inflow)
  Investment investment_power;
  Investment investment_energy;
  double capital_cost_power = 0.0;   // currency per MW and year
  double capital_cost_energy = 0.0;  // currency per MWh and year
  bool expandable = false;
  std::optional<double> boundary_level;  // GWh; defaults to half the energy capacity

  double boundary() const { return boundary_level.value_or(0.5 * energy); }
  double inflow_at(int t) const {
    return inflow.empty() ? 0.0 : inflow[static_cast<std::size_t>(t)];
  }
};

struct TransmissionLink {
  std::string from;
  std::string to;
  double initial_ntc = 0.0;  // GW
  Investment investment;     // overnight per MW and km
  double capital_cost = 0.0;  // currency per MW and km and year
  bool expandable = false;
  double max_expansion = 100.0;  // GW, bounds the signed flow columns

  std::string id() const { return from + "-" + to; }
};

struct Demand {
  std::vector<double> electricity;  // GW
  std::vector<double> heat;         // GW
};

/// Full parameterization of one model run.
struct Scenario {
  std::string name = "scenario";
  int horizon = 0;  // hours
  double hours_per_year = 8760.0;
  double wacc = 0.05;
  std::string start = "2016-01-01T00:00:00Z";
  std::string focus_zone;

  std::vector<Zone> zones;
  std::vector<Fuel> fuels;
  std::vector<DispatchableTech> dispatchables;
  std::vector<IntermittentTech> intermittents;
  std::vector<StorageTech> storages;
  std::vector<TransmissionLink> links;

  std::map<std::string, Demand> demand;  // by zone
  std::map<std::pair<std::string, std::string>, std::vector<double>> fuel_prices;  // (zone, fuel)
  std::map<std::string, std::vector<double>> co2_prices;  // by zone, currency per t

  /// Share of a year covered by the horizon; scales annualized quantities.
  double annual_fraction() const { return hours_per_year > 0 ? horizon / hours_per_year : 0.0; }

  const Zone* find_zone(std::string_view id) const;
  const Fuel* find_fuel(std::string_view id) const;
  int zone_index(std::string_view id) const;  // -1 if unknown
  int fuel_index(std::string_view id) const;

  double peak_load(std::string_view zone, Product p) const;
  double demand_at(std::string_view zone, Product p, int t) const;
  double fuel_price(std::string_view zone, std::string_view fuel, int t) const;
  double co2_price(std::string_view zone, int t) const;

  /// Sets a constant CO2 price for every zone and hour.
  void set_co2_price(double price);
  /// Recomputes every annuity from the stored investments and the WACC.
  void refresh_annuities();
  /// Truncates every hourly series to `hours` and sets the horizon.
  void truncate(int hours);
};

struct Violation {
  std::string path;  // entity path, e.g. "intermittent/AT.wind_on/profile[12]"
  std::string rule;  // stable rule id
  std::string message;
};

/// Checks every type invariant and cross reference. Empty result means the
/// scenario can be turned into an LP.
std::vector<Violation> validate_scenario(const Scenario& s);

}  // namespace medea
