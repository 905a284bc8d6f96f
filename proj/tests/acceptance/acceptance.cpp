// Acceptance suite: one PASS/FAIL line per criterion.
//
//   medea_acceptance                 run every criterion
//   medea_acceptance --criterion N   run one

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "brute_force.hpp"
#include "cli.hpp"
#include "medea/config.hpp"
#include "medea/formulation.hpp"
#include "medea/mps.hpp"
#include "medea/outcome.hpp"
#include "medea/simplex.hpp"
#include "medea/sweep.hpp"
#include "mps_conformance.hpp"
#include "scenarios.hpp"
#include "vertex_oracle.hpp"

namespace {

using namespace medea;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

Scenario toy() { return load_config(testing::toy_config_path()).scenario; }

// 1 -----------------------------------------------------------------------
Verdict solver_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  int optimal = 0, infeasible = 0, bad = 0;
  double worst = 0.0;
  std::string first_bad;
  for (int k = 0; k < 200; ++k) {
    const auto p = testing::random_lp(rng, {6, 8, true});
    const auto oracle = testing::vertex_enumeration_optimum(p);
    const auto sol = solve(p);
    if (!oracle) {
      if (sol.status == SolveStatus::Infeasible) ++infeasible;
      else if (++bad == 1) first_bad = "lp " + std::to_string(k) + ": oracle infeasible, solver " + std::string(to_string(sol.status));
      continue;
    }
    const double err = sol.status == SolveStatus::Optimal ? rel(sol.objective, *oracle) : INFINITY;
    worst = std::max(worst, err);
    if (err <= 1e-7) ++optimal;
    else if (++bad == 1) first_bad = "lp " + std::to_string(k) + ": rel error " + num(err);
  }
  const double secs = seconds_since(t0);
  Verdict v;
  v.pass = bad == 0 && secs < 10.0;
  v.detail = std::to_string(optimal) + " optimal + " + std::to_string(infeasible) + " infeasible agree, " +
             std::to_string(bad) + " disagree, max rel error " + num(worst) + ", " + num(secs, 3) + " s";
  if (!first_bad.empty()) v.detail += "; first: " + first_bad;
  return v;
}

// 2 -----------------------------------------------------------------------
Verdict dispatch_brute_force() {
  const auto t0 = Clock::now();
  const testing::DispatchToy d;
  const double step = 0.01;
  const Scenario s = testing::dispatch_toy(d);
  const double voll = s.zones.front().voll;
  const LpProblem p = build_lp(s);
  const LpSolution sol = solve(p);
  if (sol.status != SolveStatus::Optimal) return {false, "LP status " + std::string(to_string(sol.status))};

  // Rounding the LP's net flows down to the grid keeps every level at or
  // above the LP's (boundary rows stay satisfied) and adds at most `step` of
  // residual load per hour, priced at the dearest marginal cost. This needs
  // room below the energy cap and in the peaking plant, checked here.
  const int T = static_cast<int>(d.demand.size());
  const double mc_max = std::max(d.coal_price / d.coal_eta + d.coal_om, d.gas_price / d.gas_eta + d.gas_om);
  const double bound = T * step * mc_max;
  double max_level = 0.0, max_gas = 0.0;
  for (int t = 0; t < T; ++t) {
    max_level = std::max(max_level, sol.primal[static_cast<std::size_t>(*p.index.column({VarKind::StorageLevel, {0, t, 0}}))]);
    max_gas = std::max(max_gas, sol.primal[static_cast<std::size_t>(
                                    *p.index.column({VarKind::Generation, {0, t, 1, 0, s.fuel_index("gas")}}))]);
  }
  const bool preconditions = d.energy - max_level >= T * d.eta_in * step && d.gas_cap - max_gas >= step;

  const auto bf = testing::brute_force_dispatch(d, step, voll);
  const double secs = seconds_since(t0);
  const double gap = bf.cost - sol.objective;
  Verdict v;
  v.pass = preconditions && gap >= -1e-9 && gap <= bound && secs < 60.0;
  v.detail = "LP " + num(sol.objective, 10) + " k, brute force " + num(bf.cost, 10) + " k over " +
             std::to_string(bf.feasible_plans) + " plans, gap " + num(gap) + " (bound " + num(bound) + "), " +
             (preconditions ? "" : "rounding preconditions violated, ") + num(secs, 3) + " s";
  return v;
}

// 3 -----------------------------------------------------------------------
Scenario two_zone_exchange() {
  Scenario s = testing::single_zone({0.0, 0.4});
  Zone b;
  b.id = "DE";
  b.reserve_load_factor = b.reserve_intermittent_factor = 0.0;
  s.zones.push_back(b);
  s.demand["DE"].electricity = {1.0, 0.8};
  testing::add_fuel(s, "coal", 4.0, 0.337);
  testing::add_fuel(s, "gas", 50.0, 0.202);
  auto& coal = testing::add_plant(s, "AT.coal", "coal", 2.0, 0.4, 3.0);
  coal.om_qfix = 31500.0;
  testing::add_plant(s, "DE.gas", "gas", 2.0, 0.5, 4.2).zone = "DE";
  s.set_co2_price(25.0);
  TransmissionLink l;
  l.from = "AT";
  l.to = "DE";
  l.initial_ntc = 0.5;
  l.expandable = true;
  l.investment = {1000.0, 40.0};
  s.zones[0].distance_km["DE"] = 500.0;
  s.zones[1].distance_km["AT"] = 500.0;
  s.links.push_back(l);
  s.refresh_annuities();
  return s;
}

Verdict ledger_closure() {
  std::vector<std::pair<std::string, Scenario>> cases;
  cases.emplace_back("gas hour", testing::gas_plant_hour(2.0));
  cases.emplace_back("dispatch toy", testing::dispatch_toy());
  cases.emplace_back("two-zone exchange", two_zone_exchange());
  cases.emplace_back("substitution 168 h", testing::substitution_instance(168, 0.226, 0.114));
  cases.emplace_back("toy fixture", toy());
  double worst = 0.0;
  std::string where;
  bool ok = true;
  for (const auto& [name, s] : cases) {
    const auto out = run_scenario(s);
    if (!out.optimal()) {
      ok = false;
      where += name + " not optimal; ";
      continue;
    }
    double sum = 0.0;
    for (const auto& z : out.zones) {
      const double e = rel(z.cost.total(), z.lp_cost);
      if (e > worst) {
        worst = e;
        where = name + "/" + z.zone;
      }
      sum += z.lp_cost;
    }
    const double e = rel(sum, out.objective);
    if (e > worst) {
      worst = e;
      where = name + " (zone sum)";
    }
  }
  Verdict v;
  v.pass = ok && worst <= 1e-6;
  v.detail = std::to_string(cases.size()) + " scenarios, max rel deviation " + num(worst) +
             (where.empty() ? "" : " at " + where);
  return v;
}

// 4 -----------------------------------------------------------------------
Verdict annuity_check() {
  // Independent formula: overnight cost over the sum of discount factors.
  double factor = 0.0;
  for (int k = 1; k <= 30; ++k) factor += std::pow(1.05, -k);
  const double independent = 1040.0 * 1000.0 / factor;
  const double library = annuity(1040.0 * 1000.0, 0.05, 30.0);
  const double expected = 67655.0;
  Verdict v;
  v.pass = std::abs(library - expected) <= 1.0 && std::abs(library - independent) <= 1e-6;
  v.detail = "library " + num(library, 9) + ", independent formula " + num(independent, 9) + ", expected " +
             num(expected, 9) + " +/- 1 per MW and year";
  return v;
}

// 5 -----------------------------------------------------------------------
Verdict emission_accounting() {
  // 0.4 MWh of electricity at 40 % efficiency burns 1 MWh of lignite.
  Scenario lig = testing::single_zone({0.0004});
  testing::add_fuel(lig, "lignite", 1.5, 0.399);
  testing::add_plant(lig, "AT.lignite", "lignite", 1.0, 0.4);
  const auto a = run_scenario(lig);

  Scenario ren = testing::single_zone({1.0, 1.2, 0.8, 1.0});
  testing::add_intermittent(ren, "AT.wind_on", IntermittentKind::WindOnshore, 4.0, {0.5, 0.2, 0.4, 0.3});
  testing::add_intermittent(ren, "AT.pv", IntermittentKind::Solar, 2.0, {0.0, 0.3, 0.5, 0.1});
  StorageTech st;
  st.id = "AT.psp";
  st.zone = "AT";
  st.power_in = st.power_out = 1.0;
  st.energy = 4.0;
  st.efficiency_in = st.efficiency_out = 0.9;
  ren.storages.push_back(st);
  const auto b = run_scenario(ren);

  if (!a.optimal() || !b.optimal()) return {false, "a run was not optimal"};
  const double burn_mwh = [&] {
    const LpProblem p = build_lp(lig);
    const LpSolution sol = solve(p);
    return sol.primal[static_cast<std::size_t>(*p.index.column({VarKind::FuelBurn, {0, 0, 0, -1, 0}}))] * 1000.0;
  }();
  Verdict v;
  v.pass = std::abs(burn_mwh - 1.0) <= 1e-12 && std::abs(a.total_emissions() - 0.399) <= 1e-12 &&
           b.total_emissions() == 0.0 && b.zones.front().non_served == 0.0;
  v.detail = "lignite burn " + num(burn_mwh, 17) + " MWh -> " + num(a.total_emissions(), 17) +
             " t; renewable run " + num(b.total_emissions(), 17) + " t";
  return v;
}

// 6 -----------------------------------------------------------------------
double final_capacity(const SystemOutcome& o, const std::string& tech) {
  for (const auto& c : o.capacities) {
    if (c.technology == tech) return c.final();
  }
  return NAN;
}

Verdict substitution_ratio() {
  const auto t0 = Clock::now();
  const Scenario s = testing::substitution_instance(672, 0.226, 0.114);
  SweepOptions o;
  o.step = 2.0;
  const auto r = sweep_wind_cap(s, o);
  const double target = 1.982;
  int pairs = 0;
  bool ok = r.points.size() >= 2;
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t k = 0; k + 1 < r.points.size(); ++k) {
    const auto& a = r.points[k].outcome;
    const auto& b = r.points[k + 1].outcome;
    if (!a.optimal() || !b.optimal()) {
      ok = false;
      continue;
    }
    const double dw = final_capacity(a, "AT.wind_on") - final_capacity(b, "AT.wind_on");
    const double dpv = final_capacity(b, "AT.pv") - final_capacity(a, "AT.pv");
    const double slope = dpv / dw;
    lo = std::min(lo, slope);
    hi = std::max(hi, slope);
    if (!(std::abs(slope - target) <= 0.02 * target)) ok = false;
    if (!(a.zones.front().target_dual.value_or(0.0) > 1e-7)) ok = false;
    ++pairs;
  }
  const double secs = seconds_since(t0);
  Verdict v;
  v.pass = ok && pairs > 0 && secs < 300.0;
  v.detail = "w* " + num(r.w_star) + " GW, " + std::to_string(pairs) + " steps, slope range [" + num(lo, 7) + ", " +
             num(hi, 7) + "] vs " + num(target, 4) + " +/- 2 %, " + num(secs, 3) + " s";
  return v;
}

// 7 -----------------------------------------------------------------------
Verdict monotonicity() {
  struct Case {
    std::string name;
    Scenario s;
    double step;
  };
  std::vector<Case> cases;
  cases.push_back({"toy", toy(), 1.0});
  Scenario wide = toy();
  for (auto& l : wide.links) l.initial_ntc = 10.0;
  wide.set_co2_price(60.0);
  cases.push_back({"toy ntc 10 co2 60", wide, 2.0});
  cases.push_back({"substitution 168 h", testing::substitution_instance(168, 0.226, 0.114), 1.5});

  bool ok = true;
  int points = 0, steps = 0;
  double worst_rise = 0.0, worst_oc = INFINITY;
  std::string note;
  for (const auto& c : cases) {
    SweepOptions o;
    o.step = c.step;
    const auto r = sweep_wind_cap(c.s, o);
    for (std::size_t k = 0; k < r.points.size(); ++k) {
      if (!r.points[k].outcome.optimal()) {
        ok = false;
        note += c.name + " point " + std::to_string(k) + " not optimal; ";
        continue;
      }
      ++points;
      if (k == 0) continue;
      // Caps decrease along the sweep, so the objective may only grow.
      const double drop = r.points[k - 1].system_cost - r.points[k].system_cost;
      worst_rise = std::max(worst_rise, drop);
      if (drop > 1e-6) ok = false;
    }
    for (const auto& oc : r.oc) {
      if (!oc.oc_system) continue;
      ++steps;
      worst_oc = std::min(worst_oc, *oc.oc_system);
      if (*oc.oc_system < -1e-6) ok = false;
    }
  }
  Verdict v;
  v.pass = ok && steps > 0;
  v.detail = std::to_string(cases.size()) + " sweeps, " + std::to_string(points) + " points, largest objective decrease " +
             "toward lower caps " + num(worst_rise) + " k, min oc_system " + num(worst_oc) + " per MW-a" +
             (note.empty() ? "" : "; " + note);
  return v;
}

// 8 -----------------------------------------------------------------------
Verdict policy_binding() {
  const Scenario base = toy();
  auto target_dual = [](const SystemOutcome& o) { return o.zone("AT")->target_dual.value_or(NAN); };

  Scenario at25 = base;
  at25.set_co2_price(25.0);
  const auto ref = run_scenario(at25);
  if (!ref.optimal()) return {false, "toy at CO2 25 not optimal"};
  const double dual25 = target_dual(ref);

  std::optional<double> p0;
  for (double price : {30.0, 35.0, 40.0, 45.0, 50.0, 60.0, 70.0, 80.0, 100.0}) {
    Scenario s = base;
    s.set_co2_price(price);
    const auto o = run_scenario(s);
    if (o.optimal() && std::abs(target_dual(o)) <= 1e-7) {
      p0 = price;
      break;
    }
  }
  if (!(dual25 > 1e-7) || !p0) {
    return {false, "target dual at CO2 25 is " + num(dual25) + (p0 ? "" : "; no price up to 100 makes it zero")};
  }

  bool ok = true;
  std::string detail = "target dual " + num(dual25) + " at CO2 25, zero from " + num(*p0);
  for (double price : {*p0 + 10.0, *p0 + 40.0}) {
    Scenario with = base;
    with.set_co2_price(price);
    Scenario without = with;
    without.zones[0].renewable_target.reset();
    const auto a = run_scenario(with);
    const auto b = run_scenario(without);
    if (!a.optimal() || !b.optimal()) {
      ok = false;
      detail += "; CO2 " + num(price) + " not optimal";
      continue;
    }
    const double d_obj = rel(a.objective, b.objective);
    const double d_w = std::abs(a.zone("AT")->onshore_wind - b.zone("AT")->onshore_wind);
    if (d_obj > 1e-6 || d_w > 1e-6) ok = false;
    detail += "; CO2 " + num(price) + ": first point with vs without target rel " + num(d_obj) + ", w* " +
              num(a.zone("AT")->onshore_wind) + " vs " + num(b.zone("AT")->onshore_wind) + " GW";
  }
  return {ok, detail};
}

// 9 -----------------------------------------------------------------------
Verdict mps_round_trip() {
  const LpProblem p = build_lp(toy());
  const std::string text = to_mps(p);
  const LpProblem q = parse_mps(text);
  const bool same = p.entries == q.entries && p.senses == q.senses && p.rhs == q.rhs && p.lower == q.lower &&
                    p.upper == q.upper && p.objective == q.objective && p.objective_offset == q.objective_offset;
  const auto issues = testing::check_mps_conformance(text);
  Verdict v;
  v.pass = same && issues.empty();
  v.detail = std::to_string(p.num_rows()) + " rows, " + std::to_string(p.num_cols()) + " columns, " +
             std::to_string(p.entries.size()) + " nonzeros, " + (same ? "identical" : "DIFFERENT") + " after reparse, " +
             std::to_string(issues.size()) + " conformance issues" + (issues.empty() ? "" : " (first: " + issues.front() + ")");
  return v;
}

// 10 ----------------------------------------------------------------------
std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file() || e.path().filename() == "manifest.json") continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    files[fs::relative(e.path(), root).generic_string()] = ss.str();
  }
  return files;
}

Verdict determinism() {
  const fs::path root = fs::temp_directory_path() / "medea_acceptance_determinism";
  fs::remove_all(root);
  const std::string cfg = testing::toy_config_path().string();
  std::vector<std::map<std::string, std::string>> runs;
  for (const char* jobs : {"1", "2"}) {
    const std::string out = (root / (std::string("jobs") + jobs)).string();
    const char* argv[] = {"medea", "sweep", cfg.c_str(), "--step", "2.5", "--jobs", jobs, "--out", out.c_str()};
    std::ostringstream o, e;
    const int rc = cli::run(static_cast<int>(std::size(argv)), argv, o, e);
    if (rc != cli::kOk) return {false, std::string("sweep --jobs ") + jobs + " exited " + std::to_string(rc) + ": " + e.str()};
    runs.push_back(tree(out));
  }
  std::vector<std::string> differing;
  for (const auto& [name, bytes] : runs[0]) {
    auto it = runs[1].find(name);
    if (it == runs[1].end() || it->second != bytes) differing.push_back(name);
  }
  for (const auto& [name, bytes] : runs[1]) {
    if (!runs[0].count(name)) differing.push_back(name);
  }
  fs::remove_all(root);
  Verdict v;
  v.pass = differing.empty() && runs[0].count("sweep.csv") && runs[0].count("opportunity_cost.csv");
  v.detail = std::to_string(runs[0].size()) + " output files compared across --jobs 1 and --jobs 2, " +
             std::to_string(differing.size()) + " differ" + (differing.empty() ? "" : " (first: " + differing.front() + ")");
  return v;
}

struct Criterion {
  const char* title;
  std::function<Verdict()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"solver matches vertex enumeration on 200 random LPs", solver_oracle},
      {"3-hour storage dispatch matches exhaustive search", dispatch_brute_force},
      {"zonal cost components sum to the LP objective", ledger_closure},
      {"onshore wind annuity is 67655 +/- 1", annuity_check},
      {"emission accounting", emission_accounting},
      {"PV-per-wind substitution slope is 1.982 +/- 2 %", substitution_ratio},
      {"objective nonincreasing in wind cap, system OC nonnegative", monotonicity},
      {"non-binding target leaves the first sweep point unchanged", policy_binding},
      {"MPS round trip and conformance", mps_round_trip},
      {"repeated sweeps are byte-identical", determinism},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (std::size_t k = 0; k < criteria().size(); ++k) {
    const int n = static_cast<int>(k) + 1;
    if (only && only != n) continue;
    const auto& c = criteria()[k];
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << n << ": " << (v.pass ? "PASS" : "FAIL") << ": " << c.title << " [" << v.detail
              << "]" << std::endl;
    if (!v.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
