#include "medea/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace medea {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

class Csv {
 public:
  explicit Csv(std::initializer_list<const char*> header) {
    bool first = true;
    for (const char* h : header) {
      if (!first) out_ << ',';
      out_ << h;
      first = false;
    }
    out_ << '\n';
  }
  Csv& operator<<(const std::string& cell) {
    sep();
    if (cell.find_first_of(",\"\n") != std::string::npos) {
      out_ << '"';
      for (char c : cell) {
        if (c == '"') out_ << '"';
        out_ << c;
      }
      out_ << '"';
    } else {
      out_ << cell;
    }
    return *this;
  }
  Csv& operator<<(const char* cell) { return *this << std::string(cell); }
  Csv& operator<<(double v) { return *this << format_number(v); }
  Csv& operator<<(int v) { return *this << std::to_string(v); }
  void end() {
    out_ << '\n';
    fresh_ = true;
  }
  std::string str() const { return out_.str(); }

 private:
  void sep() {
    if (!fresh_) out_ << ',';
    fresh_ = false;
  }
  std::ostringstream out_;
  bool fresh_ = true;
};

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ReportError("cannot create directory " + dir.string());
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ReportError("cannot write " + path.string());
  f << text;
  f.close();
  if (!f) throw ReportError("cannot write " + path.string());
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v == 0.0 ? 0.0 : v) : Json(nullptr); }

Json zone_json(const ZoneOutcome& z) {
  Json j;
  j["zone"] = z.zone;
  j["lp_cost"] = number_or_null(z.lp_cost);
  j["fuel_and_co2"] = number_or_null(z.cost.fuel_and_co2());
  j["investment"] = number_or_null(z.cost.investment());
  j["om"] = number_or_null(z.cost.om());
  j["nse"] = number_or_null(z.cost.nse);
  j["air_pollution"] = number_or_null(z.air_pollution);
  j["trade_balance"] = number_or_null(z.trade_balance);
  j["net_cost"] = number_or_null(z.net_cost);
  j["emissions_t"] = number_or_null(z.emissions);
  j["renewable_generation_mwh"] = number_or_null(z.renewable_generation);
  j["curtailment_mwh"] = number_or_null(z.curtailment);
  j["non_served_mwh"] = number_or_null(z.non_served);
  j["onshore_wind_gw"] = number_or_null(z.onshore_wind);
  j["target_dual"] = z.target_dual ? number_or_null(*z.target_dual) : Json(nullptr);
  return j;
}

Json outcome_json(const SystemOutcome& o) {
  Json j;
  j["scenario_hash"] = o.scenario_hash;
  j["status"] = std::string(to_string(o.status));
  j["objective"] = number_or_null(o.objective);
  j["iterations"] = o.iterations;
  j["rows"] = o.rows;
  j["columns"] = o.columns;
  j["max_primal_residual"] = number_or_null(o.residuals.max_primal_residual());
  j["duality_gap"] = number_or_null(o.residuals.duality_gap);
  j["emissions_t"] = number_or_null(o.total_emissions());
  j["diagnosis"] = o.diagnosis;
  j["zones"] = Json::array();
  for (const auto& z : o.zones) j["zones"].push_back(zone_json(z));
  return j;
}

void sweep_plot_rows(Csv& plot, const SweepResult& s, const std::string& cell) {
  for (const auto& p : s.points) {
    if (!p.outcome.optimal()) continue;
    for (const auto& z : p.outcome.zones) {
      plot << cell << "net_cost" << z.zone << p.wind_cap << z.net_cost;
      plot.end();
      plot << cell << "emissions_t" << z.zone << p.wind_cap << z.emissions;
      plot.end();
    }
    for (const auto& c : p.outcome.capacities) {
      if (c.category != "intermittent" && c.category != "dispatchable") continue;
      plot << cell << "capacity_gw" << c.technology << p.wind_cap << c.final();
      plot.end();
    }
    plot << cell << "system_cost" << "total" << p.wind_cap << p.system_cost;
    plot.end();
  }
  for (const auto& oc : s.oc) {
    if (oc.oc_net) {
      plot << cell << "oc_net" << s.focus_zone << oc.wind_mid << *oc.oc_net;
      plot.end();
    }
    if (oc.oc_system) {
      plot << cell << "oc_system" << "total" << oc.wind_mid << *oc.oc_system;
      plot.end();
    }
  }
}

std::string grid_label(const GridCell& c) {
  return "co2=" + opt(c.co2) + ";pv=" + opt(c.pv_cost) + ";ntc=" + opt(c.ntc);
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_outcome(const SystemOutcome& o, const fs::path& dir) {
  ensure_dir(dir);

  Csv costs({"zone", "fuel_and_co2", "investment", "om", "nse", "lp_cost", "air_pollution", "trade_balance",
             "net_cost", "emissions_t"});
  for (const auto& z : o.zones) {
    costs << z.zone << z.cost.fuel_and_co2() << z.cost.investment() << z.cost.om() << z.cost.nse << z.lp_cost
          << z.air_pollution << z.trade_balance << z.net_cost << z.emissions;
    costs.end();
  }
  write_file(dir / "cost_components.csv", costs.str());

  Csv caps({"zone", "technology", "category", "initial_gw", "added_gw", "decommissioned_gw", "final_gw"});
  for (const auto& c : o.capacities) {
    caps << c.zone << c.technology << c.category << c.initial << c.added << c.decommissioned << c.final();
    caps.end();
  }
  write_file(dir / "capacities.csv", caps.str());

  Csv disp({"zone", "month", "item", "product", "energy_gwh"});
  for (const auto& d : o.dispatch_monthly) {
    disp << d.zone << d.month << d.item << d.product << d.energy;
    disp.end();
  }
  write_file(dir / "dispatch_monthly.csv", disp.str());

  Csv prices({"zone", "hour", "price_el", "price_ht"});
  for (const auto& z : o.zones) {
    for (std::size_t t = 0; t < z.price_el.size(); ++t) {
      prices << z.zone << static_cast<int>(t + 1) << z.price_el[t]
             << (t < z.price_ht.size() ? format_number(z.price_ht[t]) : std::string());
      prices.end();
    }
  }
  write_file(dir / "prices.csv", prices.str());

  write_file(dir / "summary.json", outcome_json(o).dump(2) + "\n");
}

void write_sweep(const SweepResult& s, const fs::path& dir) {
  ensure_dir(dir);

  Csv sweep({"wind_cap_gw", "status", "c_net", "system_cost", "emissions_t", "onshore_wind_gw",
             "renewable_generation_mwh", "target_dual"});
  for (const auto& p : s.points) {
    const ZoneOutcome* z = p.outcome.zone(s.focus_zone);
    sweep << p.wind_cap << std::string(to_string(p.outcome.status));
    if (p.outcome.optimal() && z) {
      sweep << p.c_net << p.system_cost << p.outcome.total_emissions() << z->onshore_wind
            << z->renewable_generation << opt(z->target_dual);
    } else {
      sweep << "" << "" << "" << "" << "" << "";
    }
    sweep.end();
  }
  write_file(dir / "sweep.csv", sweep.str());

  Csv oc({"cap_high_gw", "cap_low_gw", "wind_mid_gw", "oc_net", "oc_system", "oc_net_pv", "oc_system_pv"});
  for (const auto& o : s.oc) {
    oc << o.cap_high << o.cap_low << o.wind_mid << opt(o.oc_net) << opt(o.oc_system) << opt(o.oc_net_pv)
       << opt(o.oc_system_pv);
    oc.end();
  }
  write_file(dir / "opportunity_cost.csv", oc.str());

  Csv plot({"cell", "series", "key", "x", "y"});
  sweep_plot_rows(plot, s, "");
  write_file(dir / "plot_long.csv", plot.str());

  Json j;
  j["focus_zone"] = s.focus_zone;
  j["w_star_gw"] = number_or_null(s.w_star);
  j["points"] = Json::array();
  for (const auto& p : s.points) {
    Json pj = outcome_json(p.outcome);
    pj["wind_cap_gw"] = number_or_null(p.wind_cap);
    pj["c_net"] = number_or_null(p.c_net);
    j["points"].push_back(std::move(pj));
  }
  write_file(dir / "summary.json", j.dump(2) + "\n");
}

void write_grid(const std::vector<GridCell>& cells, const fs::path& dir) {
  ensure_dir(dir);
  Csv grid({"cell", "co2", "pv_cost", "ntc", "status", "w_star_gw", "points", "target_dual_zero", "error"});
  Csv plot({"cell", "series", "key", "x", "y"});
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const auto& c = cells[k];
    char name[32];
    std::snprintf(name, sizeof name, "cell_%03zu", k);
    const bool ok = !c.sweep.points.empty() && c.sweep.points.front().outcome.optimal();
    grid << name << opt(c.co2) << opt(c.pv_cost) << opt(c.ntc) << (ok ? "ok" : "failed") << c.sweep.w_star
         << static_cast<int>(c.sweep.points.size())
         << (c.target_dual_zero ? (*c.target_dual_zero ? "true" : "false") : "") << c.error;
    grid.end();
    if (!c.sweep.points.empty()) write_sweep(c.sweep, dir / name);
    sweep_plot_rows(plot, c.sweep, grid_label(c));
  }
  write_file(dir / "grid.csv", grid.str());
  write_file(dir / "plot_long.csv", plot.str());
}

}  // namespace medea
