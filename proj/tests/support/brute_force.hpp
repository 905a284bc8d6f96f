#pragma once

#include <vector>

#include "scenarios.hpp"

namespace medea::testing {

struct BruteForceResult {
  double cost = 0.0;          // k-currency
  std::vector<double> flows;  // net storage discharge per hour (negative: charging)
  long feasible_plans = 0;
};

/// Exhaustive search over net storage flows on a grid of `step` GW, with the
/// residual load served by merit order and the rest valued at `voll`.
/// Simultaneous charging and discharging is never enumerated. Storage level
/// starts at the boundary level, must be at least that level after the first
/// and last hour, and stays within [0, energy].
BruteForceResult brute_force_dispatch(const DispatchToy& d, double step, double voll);

/// Cost of a given net-flow plan under the same rules; infinite if infeasible.
double plan_cost(const DispatchToy& d, const std::vector<double>& flows, double voll);

}  // namespace medea::testing
