#include "medea/overrides.hpp"

#include <charconv>
#include <cmath>

namespace medea {

namespace {

double number(std::string_view key, std::string_view v) {
  double out = 0.0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  if (!v.empty() && *first == '+') ++first;
  auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc{} || res.ptr != last || !std::isfinite(out)) {
    throw OverrideError("override '" + std::string(key) + "': '" + std::string(v) + "' is not a number");
  }
  return out;
}

double nonnegative(std::string_view key, std::string_view v) {
  const double x = number(key, v);
  if (x < 0.0) throw OverrideError("override '" + std::string(key) + "' must be nonnegative");
  return x;
}

bool boolean(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw OverrideError("override '" + std::string(key) + "': '" + std::string(v) + "' is not a boolean");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

Zone& zone_by_id(Scenario& s, std::string_view key, std::string_view id) {
  for (auto& z : s.zones) {
    if (z.id == id) return z;
  }
  throw OverrideError("override '" + std::string(key) + "': unknown zone '" + std::string(id) + "'");
}

[[noreturn]] void bad_field(std::string_view key, std::string_view kind) {
  throw OverrideError("override '" + std::string(key) + "': field not applicable to " + std::string(kind));
}

void tech_override(Scenario& s, std::string_view key, std::string_view id, std::string_view field,
                   std::string_view v) {
  for (auto& d : s.dispatchables) {
    if (d.id != id) continue;
    if (field == "capacity") d.initial_capacity = nonnegative(key, v);
    else if (field == "capital_cost") d.investment.overnight = nonnegative(key, v) * 1000.0;
    else if (field == "lifetime") d.investment.lifetime = number(key, v);
    else if (field == "om_fix") d.om_qfix = nonnegative(key, v);
    else if (field == "om_var") d.om_var = nonnegative(key, v);
    else if (field == "expandable") d.expandable = boolean(key, v);
    else if (field == "eta_el") d.efficiency_el = nonnegative(key, v);
    else if (field == "eta_ht") d.efficiency_ht = nonnegative(key, v);
    else bad_field(key, "dispatchable");
    return;
  }
  for (auto& r : s.intermittents) {
    if (r.id != id) continue;
    if (field == "capacity") r.initial_capacity = nonnegative(key, v);
    else if (field == "capital_cost") r.investment.overnight = nonnegative(key, v) * 1000.0;
    else if (field == "lifetime") r.investment.lifetime = number(key, v);
    else if (field == "om_fix") r.om_qfix = nonnegative(key, v);
    else if (field == "om_var") r.om_var = nonnegative(key, v);
    else if (field == "expandable") r.expandable = boolean(key, v);
    else bad_field(key, "intermittent");
    return;
  }
  for (auto& st : s.storages) {
    if (st.id != id) continue;
    if (field == "capital_cost") st.investment_power.overnight = nonnegative(key, v) * 1000.0;
    else if (field == "capital_cost_energy") st.investment_energy.overnight = nonnegative(key, v) * 1000.0;
    else if (field == "lifetime") st.investment_power.lifetime = st.investment_energy.lifetime = number(key, v);
    else if (field == "expandable") st.expandable = boolean(key, v);
    else if (field == "power_in") st.power_in = nonnegative(key, v);
    else if (field == "power_out") st.power_out = nonnegative(key, v);
    else if (field == "energy") st.energy = nonnegative(key, v);
    else if (field == "eta_in") st.efficiency_in = nonnegative(key, v);
    else if (field == "eta_out") st.efficiency_out = nonnegative(key, v);
    else bad_field(key, "storage");
    return;
  }
  throw OverrideError("override '" + std::string(key) + "': unknown technology '" + std::string(id) + "'");
}

}  // namespace

void set_pv_capital_cost(Scenario& s, double per_kw) {
  for (auto& r : s.intermittents) {
    if (r.kind == IntermittentKind::Solar) r.investment.overnight = per_kw * 1000.0;
  }
  s.refresh_annuities();
}

void set_ntc(Scenario& s, double gw) {
  for (auto& l : s.links) l.initial_ntc = gw;
}

std::pair<std::string, std::string> parse_assignment(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw OverrideError("override '" + std::string(text) + "' lacks '='");
  const auto key = trim(text.substr(0, eq));
  const auto value = trim(text.substr(eq + 1));
  if (key.empty() || value.empty()) throw OverrideError("override '" + std::string(text) + "' is incomplete");
  return {std::string(key), std::string(value)};
}

void apply_override(Scenario& s, std::string_view key, std::string_view value) {
  if (key == "co2_price") {
    s.set_co2_price(nonnegative(key, value));
  } else if (key == "pv_capital_cost") {
    set_pv_capital_cost(s, nonnegative(key, value));
  } else if (key == "ntc") {
    set_ntc(s, nonnegative(key, value));
  } else if (key == "wind_cap") {
    const std::string focus = s.focus_zone.empty() && !s.zones.empty() ? s.zones.front().id : s.focus_zone;
    Zone& z = zone_by_id(s, key, focus);
    if (value == "none") z.wind_cap.reset();
    else z.wind_cap = nonnegative(key, value);
  } else if (key == "horizon") {
    const double h = nonnegative(key, value);
    if (h != std::floor(h) || h > s.horizon) {
      throw OverrideError("override 'horizon' must be an integer no larger than " + std::to_string(s.horizon));
    }
    s.truncate(static_cast<int>(h));
  } else if (key.substr(0, 5) == "tech.") {
    const auto rest = key.substr(5);
    const auto dot = rest.rfind('.');
    if (dot == std::string_view::npos || dot == 0) throw OverrideError("override '" + std::string(key) + "' is malformed");
    tech_override(s, key, rest.substr(0, dot), rest.substr(dot + 1), value);
  } else if (key.substr(0, 5) == "zone.") {
    const auto rest = key.substr(5);
    const auto dot = rest.find('.');
    if (dot == std::string_view::npos) throw OverrideError("override '" + std::string(key) + "' is malformed");
    Zone& z = zone_by_id(s, key, rest.substr(0, dot));
    const auto field = rest.substr(dot + 1);
    if (field == "renewable_target") {
      if (value == "none") z.renewable_target.reset();
      else z.renewable_target = nonnegative(key, value);
    } else if (field == "wind_cap") {
      if (value == "none") z.wind_cap.reset();
      else z.wind_cap = nonnegative(key, value);
    } else if (field == "voll") {
      z.voll = nonnegative(key, value);
    } else if (field == "reserve_load_factor") {
      z.reserve_load_factor = nonnegative(key, value);
    } else if (field == "reserve_intermittent_factor") {
      z.reserve_intermittent_factor = nonnegative(key, value);
    } else {
      throw OverrideError("override '" + std::string(key) + "': unknown zone field");
    }
  } else if (key.substr(0, 5) == "link.") {
    const auto rest = key.substr(5);
    const auto dot = rest.rfind('.');
    if (dot == std::string_view::npos || rest.substr(dot + 1) != "ntc") {
      throw OverrideError("override '" + std::string(key) + "': only link.<from-to>.ntc is supported");
    }
    const auto id = rest.substr(0, dot);
    for (auto& l : s.links) {
      if (l.id() == id) {
        l.initial_ntc = nonnegative(key, value);
        return;
      }
    }
    throw OverrideError("override '" + std::string(key) + "': unknown link '" + std::string(id) + "'");
  } else {
    throw OverrideError("unknown override key '" + std::string(key) + "'");
  }
  s.refresh_annuities();
}

void apply_overrides(Scenario& s, const std::vector<std::pair<std::string, std::string>>& overrides) {
  for (const auto& [k, v] : overrides) apply_override(s, k, v);
}

}  // namespace medea
