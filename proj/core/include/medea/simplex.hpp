#pragma once

// Bounded-variable revised primal simplex.
//
// Rows are turned into equalities with one logical per row (A x - r = 0, the
// row sense becoming bounds on r). Phase 1 minimizes the sum of artificials
// placed on rows the starting point violates; phase 2 minimizes the original
// objective. The basis is kept as a sparse LU factorization plus a product-form
// eta file that is refactored periodically.
//
// Dual sign convention: dual[i] = d objective / d rhs[i], so duals of >= rows
// are nonnegative, duals of <= rows nonpositive, equality duals free.

#include <string_view>
#include <vector>

#include "medea/lp_problem.hpp"

namespace medea {

enum class SolveStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string_view to_string(SolveStatus s);

struct SolverOptions {
  double feasibility_tolerance = 1e-8;  // on the scaled problem
  double optimality_tolerance = 1e-9;   // on scaled reduced costs
  long iteration_limit = 20'000'000;
  bool scaling = true;      // geometric row/column scaling (powers of two)
  bool bland_rule = false;  // Bland's rule throughout; otherwise only on stalls
  int refactor_interval = 100;
};

struct LpSolution {
  SolveStatus status = SolveStatus::IterationLimit;
  std::vector<double> primal;         // per column
  std::vector<double> dual;           // per row
  std::vector<double> reduced_costs;  // per column: c - A'y
  std::vector<double> row_activity;   // A x
  double objective = 0.0;             // c'x + offset
  long iterations = 0;
  double max_primal_residual = 0.0;
  double max_dual_residual = 0.0;
  /// Unbounded: improving primal direction (per column).
  /// Infeasible: Farkas multipliers from phase 1 (per row).
  std::vector<double> ray;
};

/// Solves the LP. Never throws for Infeasible/Unbounded/IterationLimit; throws
/// std::invalid_argument for malformed problems before iterating.
LpSolution solve(const LpProblem& problem, const SolverOptions& options = {});

}  // namespace medea
