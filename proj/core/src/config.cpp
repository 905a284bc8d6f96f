#include "medea/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "medea/preprocess.hpp"
#include "medea/timeseries.hpp"

namespace medea {

namespace fs = std::filesystem;

ConfigError::ConfigError(const std::string& f, int l, const std::string& msg)
    : std::runtime_error(f + ":" + std::to_string(l) + ": " + msg), file(f), line(l) {}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<double> to_number(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto res = std::from_chars(first, last, v);
  if (s.empty() || res.ec != std::errc() || res.ptr != last) return std::nullopt;
  return v;
}

std::string fmt(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    auto t = trim(cur);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
  bool used = false;
};

struct Section {
  std::string kind;
  std::string name;
  int line = 0;
  std::vector<Entry> entries;
};

std::vector<Section> parse_ini(std::istream& in, const std::string& label) {
  std::vector<Section> out;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(label, lineno, "unterminated section header");
      const std::string inner = trim(line.substr(1, line.size() - 2));
      const auto sp = inner.find_first_of(" \t");
      Section s;
      s.kind = sp == std::string::npos ? inner : inner.substr(0, sp);
      s.name = sp == std::string::npos ? std::string() : trim(inner.substr(sp));
      s.line = lineno;
      out.push_back(std::move(s));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(label, lineno, "expected 'key = value'");
    if (out.empty()) throw ConfigError(label, lineno, "key outside of any section");
    Entry e{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno};
    if (e.key.empty()) throw ConfigError(label, lineno, "empty key");
    for (const auto& prev : out.back().entries) {
      if (prev.key == e.key) throw ConfigError(label, lineno, "duplicate key '" + e.key + "'");
    }
    out.back().entries.push_back(std::move(e));
  }
  return out;
}

class Loader {
 public:
  Loader(fs::path base, std::string label) : base_(std::move(base)), label_(std::move(label)) {}

  LoadedConfig run(std::istream& in);

 private:
  ConfigError error(int line, const std::string& msg) const { return ConfigError(label_, line, msg); }

  Entry* find(Section& s, std::string_view key) {
    for (auto& e : s.entries) {
      if (e.key == key) {
        e.used = true;
        return &e;
      }
    }
    return nullptr;
  }
  double number(const Entry& e) const {
    auto v = to_number(e.value);
    if (!v || !std::isfinite(*v)) throw error(e.line, "'" + e.key + "' expects a number, got '" + e.value + "'");
    return *v;
  }
  std::optional<double> opt_number(Section& s, std::string_view key) {
    if (Entry* e = find(s, key)) return number(*e);
    return std::nullopt;
  }
  double number_or(Section& s, std::string_view key, double fallback) {
    return opt_number(s, key).value_or(fallback);
  }
  double required_number(Section& s, std::string_view key) {
    if (Entry* e = find(s, key)) return number(*e);
    throw error(s.line, "[" + s.kind + " " + s.name + "] missing mandatory key '" + std::string(key) + "'");
  }
  bool flag_or(Section& s, std::string_view key, bool fallback) {
    Entry* e = find(s, key);
    if (!e) return fallback;
    std::string v = e->value;
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
    if (v == "false" || v == "no" || v == "0" || v == "off") return false;
    throw error(e->line, "'" + e->key + "' expects true/false, got '" + e->value + "'");
  }
  std::optional<std::string> opt_text(Section& s, std::string_view key) {
    if (Entry* e = find(s, key)) return e->value;
    return std::nullopt;
  }
  void finish(const Section& s) const {
    for (const auto& e : s.entries) {
      if (!e.used) throw error(e.line, "unknown key '" + e.key + "' in [" + s.kind + (s.name.empty() ? "" : " ") + s.name + "]");
    }
  }

  const TimeSeriesFile& file(const std::string& rel, int line) {
    const fs::path p = base_ / rel;
    auto it = cache_.find(p);
    if (it != cache_.end()) return it->second;
    try {
      return cache_.emplace(p, load_time_series(p)).first->second;
    } catch (const TimeSeriesError& e) {
      throw error(line, e.what());
    }
  }

  struct Ref {
    const TimeSeriesFile* file;
    const TimeSeriesColumn* column;
  };
  Ref resolve(const Entry& e) {
    const auto colon = e.value.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == e.value.size()) {
      throw error(e.line, "'" + e.key + "' expects a number or 'file.csv:column', got '" + e.value + "'");
    }
    const auto& f = file(e.value.substr(0, colon), e.line);
    const std::string col = e.value.substr(colon + 1);
    auto it = f.columns.find(col);
    if (it == f.columns.end()) throw error(e.line, "series file '" + f.path.string() + "' has no column '" + col + "'");
    return {&f, &it->second};
  }

  std::size_t start_index(const TimeSeriesFile& f, int line) const {
    auto it = std::lower_bound(f.timestamps.begin(), f.timestamps.end(), start_);
    if (it == f.timestamps.end() || *it != start_) {
      throw error(line, "series '" + f.path.string() + "' does not contain the scenario start " + format_timestamp(start_));
    }
    return static_cast<std::size_t>(it - f.timestamps.begin());
  }

  /// Hours available from the scenario start, or nullopt for constants.
  std::optional<int> available_hours(const Entry& e) {
    if (to_number(e.value)) return std::nullopt;
    const Ref r = resolve(e);
    if (r.file->frequency != Frequency::Hourly) return std::nullopt;
    return static_cast<int>(r.file->size() - start_index(*r.file, e.line));
  }

  std::vector<double> series(const Entry& e, Unit expected, bool allow_monthly) {
    if (auto v = to_number(e.value)) return std::vector<double>(static_cast<std::size_t>(T_), *v);
    const Ref r = resolve(e);
    if (r.column->unit != expected) {
      throw error(e.line, "unit mismatch for '" + e.key + "': expected " + std::string(to_string(expected)) + ", file declares " +
                              std::string(to_string(r.column->unit)));
    }
    const auto& f = *r.file;
    if (f.frequency == Frequency::Monthly || (allow_monthly && f.size() == 1)) {
      if (!allow_monthly) throw error(e.line, "'" + e.key + "' needs an hourly series");
      return resample_monthly_prices(r.column->values, f.timestamps.front(), start_, T_);
    }
    if (f.frequency != Frequency::Hourly) throw error(e.line, "'" + e.key + "' needs an hourly series");
    const std::size_t k0 = start_index(f, e.line);
    if (k0 + static_cast<std::size_t>(T_) > f.size()) {
      throw error(e.line, "series for '" + e.key + "' has " + std::to_string(f.size() - k0) + " hours from the start, horizon is " +
                              std::to_string(T_));
    }
    return {r.column->values.begin() + static_cast<std::ptrdiff_t>(k0),
            r.column->values.begin() + static_cast<std::ptrdiff_t>(k0) + T_};
  }

  std::pair<std::string, std::string> split_id(const Section& s) const {
    const auto dot = s.name.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == s.name.size()) {
      throw error(s.line, "[" + s.kind + "] name must be '<zone>.<name>', got '" + s.name + "'");
    }
    return {s.name.substr(0, dot), s.name.substr(dot + 1)};
  }

  void require_zone(const std::string& zone, int line, const std::string& who) const {
    if (!cfg_.scenario.find_zone(zone)) throw error(line, who + " references unknown zone '" + zone + "'");
  }

  double overnight_per_mw(Section& s, const char* per_kw, const char* per_mw) {
    auto kw = opt_number(s, per_kw);
    auto mw = opt_number(s, per_mw);
    if (kw && mw) throw error(s.line, std::string("give either ") + per_kw + " or " + per_mw);
    if (mw) return *mw;
    if (kw) return *kw * 1000.0;
    return 0.0;
  }

  void scenario_section(Section& s);
  void solver_section(Section& s);
  void zone_section(Section& s);
  void fuel_section(Section& s);
  void dispatchable_section(Section& s);
  void intermittent_section(Section& s);
  void storage_section(Section& s);
  void link_section(Section& s);

  fs::path base_;
  std::string label_;
  std::map<fs::path, TimeSeriesFile> cache_;
  LoadedConfig cfg_;
  TimePoint start_{};
  int T_ = 0;
  bool horizon_given_ = false;
  Entry* co2_ = nullptr;
};

LoadedConfig Loader::run(std::istream& in) {
  auto sections = parse_ini(in, label_);
  static const std::vector<std::string> kinds{"scenario", "solver", "zone", "fuel", "dispatchable",
                                              "intermittent", "storage", "link"};
  Section* scenario = nullptr;
  for (auto& s : sections) {
    if (std::find(kinds.begin(), kinds.end(), s.kind) == kinds.end()) {
      throw error(s.line, "unknown section kind '" + s.kind + "'");
    }
    if (s.kind == "scenario") {
      if (scenario) throw error(s.line, "duplicate [scenario] section");
      scenario = &s;
    }
  }
  if (!scenario) throw error(1, "missing [scenario] section");
  scenario_section(*scenario);
  if (!horizon_given_) {
    std::optional<int> hours;
    for (auto& s : sections) {
      if (s.kind != "zone") continue;
      if (Entry* e = find(s, "demand_el")) {
        if (auto h = available_hours(*e)) hours = hours ? std::min(*hours, *h) : *h;
      }
    }
    if (!hours) throw error(scenario->line, "horizon not given and no hourly demand series to infer it from");
    T_ = *hours;
    cfg_.scenario.horizon = T_;
  }
  for (auto& s : sections) {
    if (s.kind == "solver") solver_section(s);
  }
  for (auto& s : sections) {
    if (s.kind == "zone") zone_section(s);
  }
  for (auto& s : sections) {
    if (s.kind == "fuel") fuel_section(s);
  }
  for (auto& s : sections) {
    if (s.kind == "dispatchable") dispatchable_section(s);
    else if (s.kind == "intermittent") intermittent_section(s);
    else if (s.kind == "storage") storage_section(s);
    else if (s.kind == "link") link_section(s);
  }
  auto& sc = cfg_.scenario;
  if (!sc.focus_zone.empty()) require_zone(sc.focus_zone, scenario->line, "[scenario] focus_zone");
  if (sc.focus_zone.empty() && !sc.zones.empty()) sc.focus_zone = sc.zones.front().id;
  for (auto& s : sections) finish(s);
  return std::move(cfg_);
}

void Loader::scenario_section(Section& s) {
  auto& sc = cfg_.scenario;
  if (auto v = opt_text(s, "name")) sc.name = *v;
  sc.hours_per_year = number_or(s, "hours_per_year", sc.hours_per_year);
  sc.wacc = number_or(s, "wacc", sc.wacc);
  if (auto v = opt_text(s, "start")) sc.start = *v;
  if (auto v = opt_text(s, "focus_zone")) sc.focus_zone = *v;
  cfg_.pv_horizon_years = number_or(s, "pv_horizon_years", cfg_.pv_horizon_years);
  try {
    start_ = parse_timestamp(sc.start);
  } catch (const std::invalid_argument& e) {
    throw error(s.line, e.what());
  }
  sc.start = format_timestamp(start_);
  if (auto h = opt_number(s, "horizon")) {
    if (*h < 0 || std::floor(*h) != *h) throw error(s.line, "horizon must be a nonnegative integer");
    T_ = static_cast<int>(*h);
    horizon_given_ = true;
  }
  sc.horizon = T_;
  co2_ = find(s, "co2_price");
}

void Loader::solver_section(Section& s) {
  auto& o = cfg_.solver;
  o.feasibility_tolerance = number_or(s, "feasibility_tolerance", o.feasibility_tolerance);
  o.optimality_tolerance = number_or(s, "optimality_tolerance", o.optimality_tolerance);
  o.iteration_limit = static_cast<long>(number_or(s, "iteration_limit", static_cast<double>(o.iteration_limit)));
  o.scaling = flag_or(s, "scaling", o.scaling);
  o.bland_rule = flag_or(s, "bland_rule", o.bland_rule);
  o.refactor_interval = static_cast<int>(number_or(s, "refactor_interval", o.refactor_interval));
  if (!(o.feasibility_tolerance > 0) || !(o.optimality_tolerance > 0)) throw error(s.line, "solver tolerances must be positive");
}

void Loader::zone_section(Section& s) {
  auto& sc = cfg_.scenario;
  if (s.name.empty()) throw error(s.line, "[zone] needs a name");
  if (sc.find_zone(s.name)) throw error(s.line, "duplicate zone '" + s.name + "'");
  Zone z;
  z.id = s.name;
  z.reserve_load_factor = number_or(s, "reserve_load_factor", z.reserve_load_factor);
  z.reserve_intermittent_factor = number_or(s, "reserve_intermittent_factor", z.reserve_intermittent_factor);
  z.voll = number_or(s, "voll", z.voll);
  z.renewable_target = opt_number(s, "renewable_target");
  z.wind_cap = opt_number(s, "wind_cap");
  for (auto& e : s.entries) {
    if (e.key.rfind("distance.", 0) == 0) {
      e.used = true;
      z.distance_km[e.key.substr(9)] = number(e);
    }
  }
  Demand d;
  Entry* el = find(s, "demand_el");
  if (!el) throw error(s.line, "[zone " + s.name + "] missing mandatory key 'demand_el'");
  d.electricity = series(*el, Unit::GW, false);
  if (Entry* ht = find(s, "demand_ht")) d.heat = series(*ht, Unit::GW, false);
  sc.demand[z.id] = std::move(d);
  if (Entry* c = find(s, "co2_price")) {
    sc.co2_prices[z.id] = series(*c, Unit::CurrencyPerTonne, true);
  } else if (co2_) {
    sc.co2_prices[z.id] = series(*co2_, Unit::CurrencyPerTonne, true);
  }
  sc.zones.push_back(std::move(z));
}

void Loader::fuel_section(Section& s) {
  auto& sc = cfg_.scenario;
  if (s.name.empty()) throw error(s.line, "[fuel] needs a name");
  if (sc.find_fuel(s.name)) throw error(s.line, "duplicate fuel '" + s.name + "'");
  Fuel f;
  f.id = s.name;
  f.co2_intensity = number_or(s, "co2_intensity", 0.0);
  f.air_pollution_var = number_or(s, "air_pollution_var", 0.0);
  f.air_pollution_fix = number_or(s, "air_pollution_fix", 0.0);
  f.renewable = flag_or(s, "renewable", false);
  f.electricity = flag_or(s, "electricity", false);
  Entry* all = find(s, "price");
  std::map<std::string, Entry*> per_zone;
  for (auto& e : s.entries) {
    if (e.key.rfind("price.", 0) == 0) {
      e.used = true;
      const std::string zone = e.key.substr(6);
      require_zone(zone, e.line, "[fuel " + s.name + "] " + e.key);
      per_zone[zone] = &e;
    }
  }
  for (const auto& z : sc.zones) {
    Entry* e = per_zone.count(z.id) ? per_zone[z.id] : all;
    if (e) sc.fuel_prices[{z.id, f.id}] = series(*e, Unit::CurrencyPerMWh, true);
  }
  sc.fuels.push_back(std::move(f));
}

void Loader::dispatchable_section(Section& s) {
  auto& sc = cfg_.scenario;
  const auto [zone, local] = split_id(s);
  require_zone(zone, s.line, "[dispatchable " + s.name + "]");
  DispatchableTech d;
  d.id = s.name;
  d.zone = zone;
  auto fuels = opt_text(s, "fuels");
  if (!fuels) throw error(s.line, "[dispatchable " + s.name + "] missing mandatory key 'fuels'");
  d.fuels = split_list(*fuels, ',');
  for (const auto& f : d.fuels) {
    if (!sc.find_fuel(f)) throw error(s.line, "dispatchable '" + s.name + "' references unknown fuel '" + f + "'");
  }
  d.initial_capacity = required_number(s, "capacity");
  d.investment.overnight = overnight_per_mw(s, "capex_per_kw", "capex_per_mw");
  d.investment.lifetime = number_or(s, "lifetime", 30.0);
  d.om_qfix = number_or(s, "om_fix", 0.0);
  d.om_var = number_or(s, "om_var", 0.0);
  d.expandable = flag_or(s, "expandable", false);
  d.efficiency_el = number_or(s, "eta_el", 0.0);
  d.efficiency_ht = number_or(s, "eta_ht", 0.0);
  if (Entry* corners = find(s, "chp.corners")) {
    FeasibleOperatingRegion region;
    for (const auto& c : split_list(corners->value, ';')) {
      auto parts = split_list(c, ':');
      if (parts.size() != 3) throw error(corners->line, "chp.corners expects 'el:ht:fuel; ...'");
      OperatingCorner oc;
      auto el = to_number(parts[0]), ht = to_number(parts[1]), fu = to_number(parts[2]);
      if (!el || !ht || !fu) throw error(corners->line, "chp.corners: bad number in '" + c + "'");
      oc.electricity = *el;
      oc.heat = *ht;
      oc.fuel = *fu;
      region.corners.push_back(oc);
    }
    d.chp = std::move(region);
  } else if (auto eta = opt_number(s, "chp.eta_el")) {
    const double beta = number_or(s, "chp.beta", 0.0);
    const double bp = number_or(s, "chp.backpressure", 0.0);
    auto q = opt_number(s, "chp.max_heat");
    if (!q) throw error(s.line, "[dispatchable " + s.name + "] CHP needs 'chp.max_heat'");
    try {
      d.chp = build_feasible_operating_region(*eta, beta, bp, *q);
    } catch (const std::invalid_argument& e) {
      throw error(s.line, "dispatchable '" + s.name + "': " + e.what());
    }
    d.efficiency_el = *eta;
  }
  try {
    d.capital_cost = annuity(d.investment.overnight, sc.wacc, d.investment.lifetime);
  } catch (const std::invalid_argument& e) {
    throw error(s.line, "dispatchable '" + s.name + "': " + e.what());
  }
  sc.dispatchables.push_back(std::move(d));
}

void Loader::intermittent_section(Section& s) {
  auto& sc = cfg_.scenario;
  const auto [zone, local] = split_id(s);
  require_zone(zone, s.line, "[intermittent " + s.name + "]");
  IntermittentTech r;
  r.id = s.name;
  r.zone = zone;
  const std::string kind = opt_text(s, "kind").value_or(local);
  auto k = parse_intermittent_kind(kind);
  if (!k) throw error(s.line, "intermittent '" + s.name + "': unknown kind '" + kind + "' (wind_on, wind_off, pv, ror)");
  r.kind = *k;
  r.initial_capacity = required_number(s, "capacity");
  r.investment.overnight = overnight_per_mw(s, "capex_per_kw", "capex_per_mw");
  r.investment.lifetime = number_or(s, "lifetime", 25.0);
  r.om_qfix = number_or(s, "om_fix", 0.0);
  r.om_var = number_or(s, "om_var", 0.0);
  r.expandable = flag_or(s, "expandable", false);
  r.pollution_fuel = opt_text(s, "pollution_fuel");
  if (r.pollution_fuel && !sc.find_fuel(*r.pollution_fuel)) {
    throw error(s.line, "intermittent '" + s.name + "' references unknown fuel '" + *r.pollution_fuel + "'");
  }
  Entry* profile = find(s, "profile");
  if (!profile) throw error(s.line, "[intermittent " + s.name + "] missing mandatory key 'profile'");
  r.profile = series(*profile, Unit::Ratio, false);
  if (Entry* target = find(s, "profile.annual_energy")) {
    // Annual energy in MWh, rescaled to the horizon; capacity in MW.
    const double energy = number(*target) * sc.annual_fraction();
    try {
      r.profile = scale_profile(r.profile, energy, r.initial_capacity * 1000.0);
    } catch (const std::exception& e) {
      throw error(target->line, "intermittent '" + s.name + "': " + e.what());
    }
  }
  try {
    r.capital_cost = annuity(r.investment.overnight, sc.wacc, r.investment.lifetime);
  } catch (const std::invalid_argument& e) {
    throw error(s.line, "intermittent '" + s.name + "': " + e.what());
  }
  sc.intermittents.push_back(std::move(r));
}

void Loader::storage_section(Section& s) {
  auto& sc = cfg_.scenario;
  const auto [zone, local] = split_id(s);
  require_zone(zone, s.line, "[storage " + s.name + "]");
  StorageTech st;
  st.id = s.name;
  st.zone = zone;
  st.power_out = required_number(s, "power_out");
  st.power_in = number_or(s, "power_in", 0.0);
  st.energy = required_number(s, "energy");
  st.efficiency_in = number_or(s, "eta_in", 1.0);
  st.efficiency_out = number_or(s, "eta_out", 1.0);
  st.investment_power.overnight = overnight_per_mw(s, "capex_per_kw", "capex_per_mw");
  st.investment_energy.overnight = overnight_per_mw(s, "capex_per_kwh", "capex_per_mwh");
  st.investment_power.lifetime = number_or(s, "lifetime", 20.0);
  st.investment_energy.lifetime = number_or(s, "lifetime_energy", st.investment_power.lifetime);
  st.expandable = flag_or(s, "expandable", false);
  st.boundary_level = opt_number(s, "boundary_level");

  Entry* inflow = find(s, "inflow");
  Entry* fill = find(s, "inflow.fill_levels");
  Entry* gen = find(s, "inflow.generation");
  Entry* pump = find(s, "inflow.pumping");
  if (inflow && fill) throw error(fill->line, "give either 'inflow' or 'inflow.fill_levels'");
  if (inflow) {
    st.inflow = series(*inflow, Unit::GW, false);
  } else if (fill) {
    if (!gen || !pump) throw error(fill->line, "inflow estimation needs 'inflow.generation' and 'inflow.pumping'");
    const Ref fr = resolve(*fill);
    if (fr.file->frequency != Frequency::Weekly || fr.column->unit != Unit::GWh) {
      throw error(fill->line, "inflow.fill_levels must be a weekly GWh series");
    }
    const Ref gr = resolve(*gen);
    const Ref pr = resolve(*pump);
    for (const auto* r : {&gr, &pr}) {
      if (r->file->frequency != Frequency::Hourly || r->column->unit != Unit::GW) {
        throw error(gen->line, "inflow.generation and inflow.pumping must be hourly GW series");
      }
    }
    // Generation and pumping are aligned to the first fill observation.
    const TimePoint t0 = fr.file->timestamps.front();
    auto slice = [&](const Ref& r, int line) {
      auto it = std::lower_bound(r.file->timestamps.begin(), r.file->timestamps.end(), t0);
      if (it == r.file->timestamps.end() || *it != t0) {
        throw error(line, "series '" + r.file->path.string() + "' does not start at the first fill level");
      }
      const auto k0 = static_cast<std::size_t>(it - r.file->timestamps.begin());
      const std::size_t n = (fr.file->size() - 1) * 168;
      if (k0 + n > r.column->values.size()) {
        throw error(line, "span mismatch: fill levels cover " + std::to_string(n) + " hours, series '" +
                              r.file->path.string() + "' has " + std::to_string(r.column->values.size() - k0));
      }
      return std::vector<double>(r.column->values.begin() + static_cast<std::ptrdiff_t>(k0),
                                 r.column->values.begin() + static_cast<std::ptrdiff_t>(k0 + n));
    };
    InflowEstimate est;
    try {
      est = estimate_inflows(fr.column->values, slice(gr, gen->line), slice(pr, pump->line), st.efficiency_in,
                             st.efficiency_out);
    } catch (const std::invalid_argument& e) {
      throw error(fill->line, "storage '" + s.name + "': " + e.what());
    }
    for (auto& w : est.warnings) cfg_.warnings.push_back("storage '" + s.name + "': " + w);
    const auto offset = std::chrono::duration_cast<std::chrono::hours>(start_ - t0).count();
    if (offset < 0 || static_cast<std::size_t>(offset) + static_cast<std::size_t>(T_) > est.hourly.size()) {
      throw error(fill->line, "estimated inflows do not cover the scenario horizon");
    }
    st.inflow.assign(est.hourly.begin() + offset, est.hourly.begin() + offset + T_);
  } else if (gen || pump) {
    throw error((gen ? gen : pump)->line, "inflow.generation/pumping require inflow.fill_levels");
  }
  try {
    st.capital_cost_power = annuity(st.investment_power.overnight, sc.wacc, st.investment_power.lifetime);
    st.capital_cost_energy = annuity(st.investment_energy.overnight, sc.wacc, st.investment_energy.lifetime);
  } catch (const std::invalid_argument& e) {
    throw error(s.line, "storage '" + s.name + "': " + e.what());
  }
  sc.storages.push_back(std::move(st));
}

void Loader::link_section(Section& s) {
  auto& sc = cfg_.scenario;
  const auto dash = s.name.find('-');
  if (dash == std::string::npos || dash == 0 || dash + 1 == s.name.size()) {
    throw error(s.line, "[link] name must be '<zone>-<zone>', got '" + s.name + "'");
  }
  TransmissionLink l;
  l.from = s.name.substr(0, dash);
  l.to = s.name.substr(dash + 1);
  require_zone(l.from, s.line, "[link " + s.name + "]");
  require_zone(l.to, s.line, "[link " + s.name + "]");
  l.initial_ntc = required_number(s, "ntc");
  l.investment.overnight = number_or(s, "capex_per_mw_km", 0.0);
  l.investment.lifetime = number_or(s, "lifetime", 40.0);
  l.expandable = flag_or(s, "expandable", false);
  l.max_expansion = number_or(s, "max_expansion", l.max_expansion);
  try {
    l.capital_cost = annuity(l.investment.overnight, sc.wacc, l.investment.lifetime);
  } catch (const std::invalid_argument& e) {
    throw error(s.line, "link '" + s.name + "': " + e.what());
  }
  sc.links.push_back(std::move(l));
}

}  // namespace

LoadedConfig parse_config(std::istream& in, const fs::path& base_dir, const std::string& label) {
  Loader loader(base_dir, label);
  auto cfg = loader.run(in);
  return cfg;
}

LoadedConfig load_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), 0, "cannot open config file");
  auto cfg = parse_config(in, path.parent_path(), path.string());
  cfg.path = path;
  return cfg;
}

fs::path write_config(const LoadedConfig& config, const fs::path& dir) {
  const Scenario& sc = config.scenario;
  fs::create_directories(dir);
  TimeSeriesFile series;
  series.timestamps = hourly_stamps(parse_timestamp(sc.start), sc.horizon);
  auto add = [&](const std::string& name, Unit unit, const std::vector<double>& values) {
    series.order.push_back(name);
    series.columns[name] = TimeSeriesColumn{unit, values};
    return "series.csv:" + name;
  };

  std::ostringstream o;
  o << "[scenario]\n";
  o << "name = " << sc.name << "\n";
  o << "horizon = " << sc.horizon << "\n";
  o << "hours_per_year = " << fmt(sc.hours_per_year) << "\n";
  o << "wacc = " << fmt(sc.wacc) << "\n";
  o << "start = " << sc.start << "\n";
  if (!sc.focus_zone.empty()) o << "focus_zone = " << sc.focus_zone << "\n";
  o << "pv_horizon_years = " << fmt(config.pv_horizon_years) << "\n";

  const auto& so = config.solver;
  o << "\n[solver]\n";
  o << "feasibility_tolerance = " << fmt(so.feasibility_tolerance) << "\n";
  o << "optimality_tolerance = " << fmt(so.optimality_tolerance) << "\n";
  o << "iteration_limit = " << so.iteration_limit << "\n";
  o << "scaling = " << (so.scaling ? "true" : "false") << "\n";
  o << "bland_rule = " << (so.bland_rule ? "true" : "false") << "\n";
  o << "refactor_interval = " << so.refactor_interval << "\n";

  for (const auto& z : sc.zones) {
    o << "\n[zone " << z.id << "]\n";
    o << "reserve_load_factor = " << fmt(z.reserve_load_factor) << "\n";
    o << "reserve_intermittent_factor = " << fmt(z.reserve_intermittent_factor) << "\n";
    o << "voll = " << fmt(z.voll) << "\n";
    if (z.renewable_target) o << "renewable_target = " << fmt(*z.renewable_target) << "\n";
    if (z.wind_cap) o << "wind_cap = " << fmt(*z.wind_cap) << "\n";
    for (const auto& [p, d] : z.distance_km) o << "distance." << p << " = " << fmt(d) << "\n";
    auto dit = sc.demand.find(z.id);
    const Demand empty;
    const Demand& d = dit == sc.demand.end() ? empty : dit->second;
    o << "demand_el = " << add("demand." + z.id + ".el", Unit::GW, d.electricity) << "\n";
    if (!d.heat.empty()) o << "demand_ht = " << add("demand." + z.id + ".ht", Unit::GW, d.heat) << "\n";
    auto cit = sc.co2_prices.find(z.id);
    if (cit != sc.co2_prices.end() && !cit->second.empty()) {
      o << "co2_price = " << add("co2." + z.id, Unit::CurrencyPerTonne, cit->second) << "\n";
    }
  }
  for (const auto& f : sc.fuels) {
    o << "\n[fuel " << f.id << "]\n";
    o << "co2_intensity = " << fmt(f.co2_intensity) << "\n";
    o << "air_pollution_var = " << fmt(f.air_pollution_var) << "\n";
    o << "air_pollution_fix = " << fmt(f.air_pollution_fix) << "\n";
    o << "renewable = " << (f.renewable ? "true" : "false") << "\n";
    o << "electricity = " << (f.electricity ? "true" : "false") << "\n";
    for (const auto& z : sc.zones) {
      auto it = sc.fuel_prices.find({z.id, f.id});
      if (it == sc.fuel_prices.end() || it->second.empty()) continue;
      o << "price." << z.id << " = " << add("price." + z.id + "." + f.id, Unit::CurrencyPerMWh, it->second) << "\n";
    }
  }
  for (const auto& d : sc.dispatchables) {
    o << "\n[dispatchable " << d.id << "]\n";
    o << "fuels = ";
    for (std::size_t k = 0; k < d.fuels.size(); ++k) o << (k ? "," : "") << d.fuels[k];
    o << "\n";
    o << "capacity = " << fmt(d.initial_capacity) << "\n";
    o << "capex_per_mw = " << fmt(d.investment.overnight) << "\n";
    o << "lifetime = " << fmt(d.investment.lifetime) << "\n";
    o << "om_fix = " << fmt(d.om_qfix) << "\n";
    o << "om_var = " << fmt(d.om_var) << "\n";
    o << "expandable = " << (d.expandable ? "true" : "false") << "\n";
    o << "eta_el = " << fmt(d.efficiency_el) << "\n";
    o << "eta_ht = " << fmt(d.efficiency_ht) << "\n";
    if (d.chp) {
      o << "chp.corners = ";
      for (std::size_t k = 0; k < d.chp->corners.size(); ++k) {
        const auto& c = d.chp->corners[k];
        o << (k ? "; " : "") << fmt(c.electricity) << ":" << fmt(c.heat) << ":" << fmt(c.fuel);
      }
      o << "\n";
    }
  }
  for (const auto& r : sc.intermittents) {
    o << "\n[intermittent " << r.id << "]\n";
    o << "kind = " << to_string(r.kind) << "\n";
    o << "capacity = " << fmt(r.initial_capacity) << "\n";
    o << "capex_per_mw = " << fmt(r.investment.overnight) << "\n";
    o << "lifetime = " << fmt(r.investment.lifetime) << "\n";
    o << "om_fix = " << fmt(r.om_qfix) << "\n";
    o << "om_var = " << fmt(r.om_var) << "\n";
    o << "expandable = " << (r.expandable ? "true" : "false") << "\n";
    if (r.pollution_fuel) o << "pollution_fuel = " << *r.pollution_fuel << "\n";
    o << "profile = " << add("profile." + r.id, Unit::Ratio, r.profile) << "\n";
  }
  for (const auto& st : sc.storages) {
    o << "\n[storage " << st.id << "]\n";
    o << "power_in = " << fmt(st.power_in) << "\n";
    o << "power_out = " << fmt(st.power_out) << "\n";
    o << "energy = " << fmt(st.energy) << "\n";
    o << "eta_in = " << fmt(st.efficiency_in) << "\n";
    o << "eta_out = " << fmt(st.efficiency_out) << "\n";
    o << "capex_per_mw = " << fmt(st.investment_power.overnight) << "\n";
    o << "capex_per_mwh = " << fmt(st.investment_energy.overnight) << "\n";
    o << "lifetime = " << fmt(st.investment_power.lifetime) << "\n";
    o << "lifetime_energy = " << fmt(st.investment_energy.lifetime) << "\n";
    o << "expandable = " << (st.expandable ? "true" : "false") << "\n";
    if (st.boundary_level) o << "boundary_level = " << fmt(*st.boundary_level) << "\n";
    if (!st.inflow.empty()) o << "inflow = " << add("inflow." + st.id, Unit::GW, st.inflow) << "\n";
  }
  for (const auto& l : sc.links) {
    o << "\n[link " << l.id() << "]\n";
    o << "ntc = " << fmt(l.initial_ntc) << "\n";
    o << "capex_per_mw_km = " << fmt(l.investment.overnight) << "\n";
    o << "lifetime = " << fmt(l.investment.lifetime) << "\n";
    o << "expandable = " << (l.expandable ? "true" : "false") << "\n";
    o << "max_expansion = " << fmt(l.max_expansion) << "\n";
  }

  const fs::path ini = dir / "scenario.ini";
  {
    std::ofstream out(ini, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + ini.string());
    out << o.str();
  }
  {
    std::ofstream out(dir / "series.csv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / "series.csv").string());
    write_time_series(out, series);
  }
  return ini;
}

}  // namespace medea
