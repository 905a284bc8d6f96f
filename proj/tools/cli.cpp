#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "medea/config.hpp"
#include "medea/formulation.hpp"
#include "medea/mps.hpp"
#include "medea/outcome.hpp"
#include "medea/overrides.hpp"
#include "medea/report.hpp"
#include "medea/sweep.hpp"
#include "medea/timeseries.hpp"

#ifndef MEDEA_VERSION
#define MEDEA_VERSION "unknown"
#endif

namespace medea::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Backend { Internal, Interchange };

Backend backend_from_env() {
  const char* v = std::getenv("MEDEA_SOLVER");
  if (!v || std::string(v).empty() || std::string(v) == "internal") return Backend::Internal;
  if (std::string(v) == "interchange") return Backend::Interchange;
  throw UsageError("MEDEA_SOLVER must be 'internal' or 'interchange', got '" + std::string(v) + "'");
}

struct Loaded {
  LoadedConfig config;
  std::vector<std::pair<std::string, std::string>> overrides;
};

// Returns the exit code on failure, 0 on success.
int load(const std::string& path, const std::vector<std::string>& sets, Loaded& out, std::ostream& err) {
  if (!fs::exists(path)) {
    err << "error: config file '" << path << "' not found\n";
    return kUsage;
  }
  try {
    out.config = load_config(path);
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return e.line > 0 ? kValidation : kUsage;
  } catch (const std::exception& e) {
    err << path << ": " << e.what() << "\n";
    return kValidation;
  }
  for (const auto& w : out.config.warnings) err << "warning: " << w << "\n";
  try {
    for (const auto& s : sets) out.overrides.push_back(parse_assignment(s));
    apply_overrides(out.config.scenario, out.overrides);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  const auto violations = validate_scenario(out.config.scenario);
  if (!violations.empty()) {
    for (const auto& v : violations) err << v.path << ": " << v.rule << ": " << v.message << "\n";
    return kValidation;
  }
  return kOk;
}

Json manifest(const std::string& command, const Loaded& l, const std::string& hash, Clock::time_point t0) {
  Json j;
  j["command"] = command;
  j["config"] = l.config.path.string();
  j["overrides"] = Json::object();
  for (const auto& [k, v] : l.overrides) j["overrides"][k] = v;
  j["scenario_hash"] = hash;
  j["tool_version"] = MEDEA_VERSION;
  j["started_utc"] = format_timestamp(std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now()));
  j["wall_clock_s"] = std::chrono::duration<double>(Clock::now() - t0).count();
  return j;
}

Json solver_stats(const SystemOutcome& o) {
  Json j;
  j["status"] = std::string(to_string(o.status));
  j["objective"] = o.objective;
  j["iterations"] = o.iterations;
  j["rows"] = o.rows;
  j["columns"] = o.columns;
  j["max_primal_residual"] = o.residuals.max_primal_residual();
  j["duality_gap"] = o.residuals.duality_gap;
  j["max_dual_infeasibility"] = o.residuals.max_dual_infeasibility;
  return j;
}

void write_manifest(const fs::path& dir, const Json& j) {
  fs::create_directories(dir);
  std::ofstream f(dir / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!f) throw ReportError("cannot write " + (dir / "manifest.json").string());
  f << j.dump(2) << "\n";
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    double v = 0.0;
    auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || res.ec != std::errc{} || res.ptr != item.data() + item.size()) {
      throw UsageError("--grid " + key + ": '" + item + "' is not a number");
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

GridAxes parse_grid(const std::string& text) {
  GridAxes axes;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto semi = text.find(';', pos);
    const std::string part = text.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
    pos = semi == std::string::npos ? text.size() : semi + 1;
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw UsageError("--grid expects 'axis=v1,v2;...', got '" + part + "'");
    const std::string key = part.substr(0, eq);
    auto values = parse_list(key, part.substr(eq + 1));
    if (key == "co2") axes.co2 = std::move(values);
    else if (key == "pv") axes.pv_cost = std::move(values);
    else if (key == "ntc") axes.ntc = std::move(values);
    else throw UsageError("--grid: unknown axis '" + key + "' (co2, pv, ntc)");
  }
  return axes;
}

double onshore_added(const Scenario& s, const SystemOutcome& o) {
  const std::string focus = s.focus_zone.empty() ? s.zones.front().id : s.focus_zone;
  double added = 0.0;
  for (const auto& r : s.intermittents) {
    if (r.zone != focus || r.kind != IntermittentKind::WindOnshore) continue;
    for (const auto& c : o.capacities) {
      if (c.technology == r.id) added += c.added - c.decommissioned;
    }
  }
  return added;
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  Loaded l;
  const int rc = load(path, {}, l, err);
  if (rc == kOk) out << path << ": ok (hash " << build_lp(l.config.scenario).scenario_hash << ")\n";
  return rc;
}

int cmd_solve(const std::string& path, const std::vector<std::string>& sets, const std::string& out_dir,
              std::ostream& out, std::ostream& err) {
  const auto t0 = Clock::now();
  Loaded l;
  if (const int rc = load(path, sets, l, err)) return rc;
  const Scenario& s = l.config.scenario;

  if (backend_from_env() == Backend::Interchange) {
    const LpProblem p = build_lp(s);
    fs::create_directories(out_dir);
    write_interchange(p, fs::path(out_dir) / "model");
    Json m = manifest("solve", l, p.scenario_hash, t0);
    m["solver"] = "interchange";
    write_manifest(out_dir, m);
    out << "wrote " << (fs::path(out_dir) / "model.mps").string() << " (" << p.num_rows() << " rows, "
        << p.num_cols() << " columns)\n";
    return kOk;
  }

  const SystemOutcome o = run_scenario(s, l.config.solver);
  Json m = manifest("solve", l, o.scenario_hash, t0);
  m["solver"] = "internal";
  m["solver_stats"] = solver_stats(o);
  write_manifest(out_dir, m);
  if (!o.optimal()) {
    err << "solver: " << to_string(o.status) << "\n";
    if (!o.diagnosis.empty()) err << o.diagnosis << "\n";
    return kSolver;
  }
  write_outcome(o, out_dir);
  double trade = 0.0;
  const std::string focus = s.focus_zone.empty() ? s.zones.front().id : s.focus_zone;
  if (const ZoneOutcome* z = o.zone(focus)) trade = z->trade_balance;
  out << "objective=" << format_number(o.objective) << " wind_added_gw=" << format_number(onshore_added(s, o))
      << " emissions_t=" << format_number(o.total_emissions()) << " trade_balance=" << format_number(trade) << "\n";
  return kOk;
}

int cmd_sweep(const std::string& path, const std::vector<std::string>& sets, const std::string& out_dir,
              double step, const std::string& grid, int jobs, std::ostream& out, std::ostream& err) {
  const auto t0 = Clock::now();
  if (!(step > 0.0)) {
    err << "error: --step must be positive\n";
    return kUsage;
  }
  if (jobs < 1) {
    err << "error: --jobs must be at least 1\n";
    return kUsage;
  }
  if (backend_from_env() == Backend::Interchange) {
    err << "error: sweep needs the internal solver (unset MEDEA_SOLVER)\n";
    return kUsage;
  }
  Loaded l;
  if (const int rc = load(path, sets, l, err)) return rc;
  const Scenario& s = l.config.scenario;
  SweepOptions opts;
  opts.step = step;
  opts.jobs = jobs;
  opts.solver = l.config.solver;
  opts.pv_horizon_years = l.config.pv_horizon_years;

  Json m = manifest("sweep", l, build_lp(s).scenario_hash, t0);
  if (grid.empty()) {
    const SweepResult r = sweep_wind_cap(s, opts);
    write_sweep(r, out_dir);
    int ok = 0;
    for (const auto& p : r.points) {
      if (p.outcome.optimal()) ++ok;
      else err << "point wind_cap=" << format_number(p.wind_cap) << ": " << p.outcome.diagnosis << "\n";
    }
    m = manifest("sweep", l, m["scenario_hash"], t0);
    m["step_gw"] = step;
    m["points"] = r.points.size();
    m["w_star_gw"] = r.w_star;
    write_manifest(out_dir, m);
    out << "w*=" << format_number(r.w_star) << " GW, " << r.points.size() << " points, " << ok << " optimal\n";
    return ok > 0 ? kOk : kSolver;
  }

  const GridAxes axes = parse_grid(grid);
  const auto cells = sensitivity_grid(s, axes, opts);
  write_grid(cells, out_dir);
  int ok = 0;
  for (const auto& c : cells) {
    if (c.error.empty()) ++ok;
    else err << "cell co2=" << (c.co2 ? format_number(*c.co2) : "base") << " pv="
             << (c.pv_cost ? format_number(*c.pv_cost) : "base") << " ntc="
             << (c.ntc ? format_number(*c.ntc) : "base") << ": " << c.error << "\n";
  }
  m = manifest("sweep", l, m["scenario_hash"], t0);
  m["step_gw"] = step;
  m["grid"] = grid;
  m["cells"] = cells.size();
  write_manifest(out_dir, m);
  out << cells.size() << " cells, " << ok << " succeeded\n";
  return ok > 0 ? kOk : kSolver;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacity-expansion and dispatch model with wind opportunity-cost sweeps", "medea"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(MEDEA_VERSION));

  std::string config;
  std::vector<std::string> sets;
  std::string out_dir = "out";
  double step = 0.5;
  std::string grid;
  int jobs = 1;

  auto* validate = app.add_subcommand("validate", "Check a scenario config");
  validate->add_option("config", config, "Scenario config file")->required();

  auto* solve = app.add_subcommand("solve", "Solve one scenario and write outcome files");
  solve->add_option("config", config, "Scenario config file")->required();
  solve->add_option("--set", sets, "Override, key=value (repeatable)");
  solve->add_option("--out", out_dir, "Output directory");

  auto* sweep = app.add_subcommand("sweep", "Wind-cap sweep or sensitivity grid");
  sweep->add_option("config", config, "Scenario config file")->required();
  sweep->add_option("--set", sets, "Override, key=value (repeatable)");
  sweep->add_option("--out", out_dir, "Output directory");
  sweep->add_option("--step", step, "Wind-cap step in GW");
  sweep->add_option("--grid", grid, "Sensitivity axes, e.g. co2=0,50;pv=625,275;ntc=4.9,10");
  sweep->add_option("--jobs", jobs, "Parallel solves");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(config, out, err);
    if (solve->parsed()) return cmd_solve(config, sets, out_dir, out, err);
    return cmd_sweep(config, sets, out_dir, step, grid, jobs, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ReportError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kSolver;
  }
}

}  // namespace medea::cli
