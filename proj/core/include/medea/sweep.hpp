#pragma once

// Opportunity cost of wind: restrict onshore wind in the focus zone step by
// step from its unconstrained optimum down to zero and difference the net
// system cost.

#include <optional>
#include <string>
#include <vector>

#include "medea/domain.hpp"
#include "medea/outcome.hpp"
#include "medea/simplex.hpp"

namespace medea {

struct SweepOptions {
  double step = 0.5;  // GW
  int jobs = 1;
  SolverOptions solver;
  double pv_horizon_years = 30.0;
};

struct SweepPoint {
  double wind_cap = 0.0;  // GW; the first point is unconstrained and carries w*
  SystemOutcome outcome;
  double c_net = 0.0;        // focus zone, k-currency over the horizon
  double system_cost = 0.0;  // LP objective, k-currency over the horizon
};

/// Opportunity cost on one pair of consecutive caps, in currency per MW and year.
struct OcPoint {
  double cap_high = 0.0;
  double cap_low = 0.0;
  double wind_mid = 0.0;
  std::optional<double> oc_net;     // from the focus zone's c_net
  std::optional<double> oc_system;  // from the total LP objective
  std::optional<double> oc_net_pv;  // present value over pv_horizon_years
  std::optional<double> oc_system_pv;
};

struct SweepResult {
  std::string focus_zone;
  double w_star = 0.0;
  std::vector<SweepPoint> points;  // caps strictly decreasing
  std::vector<OcPoint> oc;
};

/// Caps w*, w* - step, ..., 0. Values within 1e-9 GW of zero collapse to a single 0.
std::vector<double> wind_cap_grid(double w_star, double step);

SweepResult sweep_wind_cap(const Scenario& s, const SweepOptions& options = {});

/// Finite differences on consecutive points. Annual values divide the
/// horizon's cost difference by the horizon's share of a year. Pairs with a
/// non-optimal endpoint yield empty values.
std::vector<OcPoint> opportunity_cost(const SweepResult& sweep, double annual_fraction, double wacc,
                                      double pv_horizon_years);

/// Present value of a constant annual amount.
double present_value(double annual, double wacc, double years);

/// Empty axes keep the base scenario's value.
struct GridAxes {
  std::vector<double> co2;      // currency per t
  std::vector<double> pv_cost;  // currency per kW overnight
  std::vector<double> ntc;      // GW, every link
};

struct GridCell {
  std::optional<double> co2;
  std::optional<double> pv_cost;
  std::optional<double> ntc;
  SweepResult sweep;
  std::string error;  // set when the cell could not be swept
  /// Whether the focus zone's renewable-target dual is zero at the
  /// unconstrained point; empty without a target row or an optimal solve.
  std::optional<bool> target_dual_zero;
};

/// Cells in (co2, pv_cost, ntc) lexicographic order.
std::vector<GridCell> sensitivity_grid(const Scenario& base, const GridAxes& axes, const SweepOptions& options = {});

}  // namespace medea
