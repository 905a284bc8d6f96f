#pragma once

// Scalar scenario edits addressed by key, as used by `medea solve --set k=v`.
//
//   co2_price                 currency per t, every zone and hour
//   pv_capital_cost           currency per kW overnight, every solar plant
//   ntc                       GW, every link
//   wind_cap                  GW of onshore wind in the focus zone ("none" lifts it)
//   horizon                   hours, truncates every series
//   tech.<id>.<field>         capacity, capital_cost (per kW), capital_cost_energy (per kWh),
//                             lifetime, om_fix, om_var, expandable, eta_el, eta_ht,
//                             power_in, power_out, energy, eta_in, eta_out
//   zone.<id>.<field>         renewable_target, wind_cap, voll,
//                             reserve_load_factor, reserve_intermittent_factor
//   link.<from-to>.ntc        GW

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "medea/domain.hpp"

namespace medea {

class OverrideError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void apply_override(Scenario& s, std::string_view key, std::string_view value);

/// Splits "key=value".
std::pair<std::string, std::string> parse_assignment(std::string_view text);

void apply_overrides(Scenario& s, const std::vector<std::pair<std::string, std::string>>& overrides);

void set_pv_capital_cost(Scenario& s, double per_kw);
void set_ntc(Scenario& s, double gw);

}  // namespace medea
