#pragma once

// Economic evaluation of a solved scenario.
//
// Money is in kilo-currency, energy in GWh, capacity in GW unless a field
// name says otherwise. Prices are currency per MWh (= k-currency per GWh).

#include <optional>
#include <string>
#include <vector>

#include "medea/domain.hpp"
#include "medea/lp_problem.hpp"
#include "medea/simplex.hpp"
#include "medea/verify.hpp"

namespace medea {

struct CostBreakdown {
  double fuel = 0.0;
  double co2 = 0.0;
  double invest_generation = 0.0;
  double invest_intermittent = 0.0;
  double invest_storage = 0.0;
  double invest_transmission = 0.0;
  double om_dispatchable = 0.0;
  double om_intermittent = 0.0;
  double nse = 0.0;

  double fuel_and_co2() const { return fuel + co2; }
  double investment() const {
    return invest_generation + invest_intermittent + invest_storage + invest_transmission;
  }
  double om() const { return om_dispatchable + om_intermittent; }
  double total() const { return fuel_and_co2() + investment() + om() + nse; }
};

struct CapacityRecord {
  std::string zone;
  std::string technology;
  std::string category;  // dispatchable, intermittent, storage_power, storage_energy, transmission
  double initial = 0.0;
  double added = 0.0;
  double decommissioned = 0.0;
  double final() const { return initial + added - decommissioned; }
};

struct DispatchRecord {
  std::string zone;
  std::string month;  // YYYY-MM
  std::string item;   // technology id or a balance term (nse, curtailment, net_export, ...)
  std::string product;
  double energy = 0.0;  // GWh
};

struct ZoneOutcome {
  std::string zone;
  CostBreakdown cost;
  double lp_cost = 0.0;        // the zone's share of the LP objective
  double emissions = 0.0;      // t CO2
  double air_pollution = 0.0;  // k-currency
  double trade_revenue = 0.0;  // k-currency earned from net exports
  double trade_balance = 0.0;  // cost convention: -trade_revenue
  double net_cost = 0.0;       // lp_cost + air_pollution + trade_balance
  double renewable_generation = 0.0;  // MWh over the horizon, as counted by the target
  double curtailment = 0.0;           // MWh
  double non_served = 0.0;            // MWh
  double onshore_wind = 0.0;          // GW net installed
  std::vector<double> price_el;       // currency per MWh, per hour
  std::vector<double> price_ht;
  std::optional<double> target_dual;  // currency per MWh of renewable energy
};

struct SystemOutcome {
  std::string scenario_hash;
  SolveStatus status = SolveStatus::IterationLimit;
  double objective = 0.0;
  long iterations = 0;
  ResidualReport residuals;
  std::vector<ZoneOutcome> zones;
  std::vector<CapacityRecord> capacities;
  std::vector<DispatchRecord> dispatch_monthly;
  std::string diagnosis;  // set when the solve did not reach optimality
  int rows = 0;
  int columns = 0;

  bool optimal() const { return status == SolveStatus::Optimal; }
  double total_emissions() const;
  double total_net_cost() const;
  const ZoneOutcome* zone(std::string_view id) const;
};

/// Builds, solves, verifies and evaluates.
SystemOutcome run_scenario(const Scenario& s, const SolverOptions& options = {});

/// Evaluation of an existing solution (any status; economics only when optimal).
SystemOutcome evaluate(const Scenario& s, const LpProblem& p, const LpSolution& sol);

/// Cost components of one zone recomputed from scenario data and primal values.
CostBreakdown cost_breakdown(const Scenario& s, const LpProblem& p, const std::vector<double>& x, int zone);

struct EmissionsAndPollution {
  double emissions = 0.0;      // t CO2
  double air_pollution = 0.0;  // k-currency
};
std::vector<EmissionsAndPollution> emissions_and_air_pollution(const Scenario& s, const LpProblem& p,
                                                               const std::vector<double>& x);

/// Net-export revenue of a zone, each flow valued at the partner zone's price.
double trade_revenue(const Scenario& s, const LpProblem& p, const LpSolution& sol, int zone);

/// lp_cost + air_pollution + trade_balance.
double net_system_cost(const ZoneOutcome& z);

/// Semantic names of a small row subset explaining infeasibility: a deletion
/// filter for problems up to `max_rows` rows, otherwise the rows carrying the
/// largest phase-1 multipliers.
std::vector<std::string> diagnose_infeasibility(const LpProblem& p, const LpSolution& sol,
                                                const SolverOptions& options = {}, int max_rows = 150);

}  // namespace medea
