#include "medea/hash.hpp"

#include <charconv>
#include <cstdio>

namespace medea {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

class Canon {
 public:
  Canon& key(std::string_view k) {
    out_ += k;
    out_ += '=';
    return *this;
  }
  Canon& num(double v) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    out_.append(buf, r.ptr);
    out_ += ';';
    return *this;
  }
  Canon& str(std::string_view s) {
    out_ += std::to_string(s.size());
    out_ += ':';
    out_ += s;
    out_ += ';';
    return *this;
  }
  Canon& flag(bool b) { return num(b ? 1.0 : 0.0); }
  Canon& opt(const std::optional<double>& v) { return v ? num(*v) : str("none"); }
  Canon& series(const std::vector<double>& v) {
    out_ += '[';
    for (double x : v) num(x);
    out_ += ']';
    return *this;
  }
  Canon& investment(const Investment& i) { return num(i.overnight).num(i.lifetime); }
  void end() { out_ += '\n'; }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

}  // namespace

std::string canonical_text(const Scenario& s) {
  Canon c;
  c.key("scenario").str(s.name).num(s.horizon).num(s.hours_per_year).num(s.wacc).str(s.start).str(s.focus_zone);
  c.end();
  for (const auto& z : s.zones) {
    c.key("zone").str(z.id).num(z.reserve_load_factor).num(z.reserve_intermittent_factor).num(z.voll);
    c.opt(z.renewable_target).opt(z.wind_cap);
    for (const auto& [p, d] : z.distance_km) c.str(p).num(d);
    c.end();
  }
  for (const auto& f : s.fuels) {
    c.key("fuel").str(f.id).num(f.co2_intensity).num(f.air_pollution_var).num(f.air_pollution_fix);
    c.flag(f.renewable).flag(f.electricity).end();
  }
  for (const auto& d : s.dispatchables) {
    c.key("dispatchable").str(d.id).str(d.zone);
    for (const auto& f : d.fuels) c.str(f);
    c.num(d.efficiency_el).num(d.efficiency_ht).num(d.initial_capacity).investment(d.investment);
    c.num(d.capital_cost).num(d.om_qfix).num(d.om_var).flag(d.expandable);
    if (d.chp) {
      for (const auto& k : d.chp->corners) c.num(k.electricity).num(k.heat).num(k.fuel);
    }
    c.end();
  }
  for (const auto& r : s.intermittents) {
    c.key("intermittent").str(r.id).str(r.zone).str(to_string(r.kind)).num(r.initial_capacity);
    c.investment(r.investment).num(r.capital_cost).num(r.om_qfix).num(r.om_var).flag(r.expandable);
    c.str(r.pollution_fuel.value_or("")).series(r.profile).end();
  }
  for (const auto& st : s.storages) {
    c.key("storage").str(st.id).str(st.zone).num(st.power_in).num(st.power_out).num(st.energy);
    c.num(st.efficiency_in).num(st.efficiency_out).series(st.inflow);
    c.investment(st.investment_power).investment(st.investment_energy);
    c.num(st.capital_cost_power).num(st.capital_cost_energy).flag(st.expandable).opt(st.boundary_level).end();
  }
  for (const auto& l : s.links) {
    c.key("link").str(l.from).str(l.to).num(l.initial_ntc).investment(l.investment).num(l.capital_cost);
    c.flag(l.expandable).num(l.max_expansion).end();
  }
  for (const auto& [zone, d] : s.demand) c.key("demand").str(zone).series(d.electricity).series(d.heat).end();
  for (const auto& [k, v] : s.fuel_prices) c.key("fuel_price").str(k.first).str(k.second).series(v).end();
  for (const auto& [zone, v] : s.co2_prices) c.key("co2_price").str(zone).series(v).end();
  return c.take();
}

std::string scenario_hash(const Scenario& s) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical_text(s))));
  return buf;
}

}  // namespace medea
