#pragma once

#include <vector>

#include "medea/lp_problem.hpp"
#include "medea/simplex.hpp"

namespace medea {

/// Residuals recomputed from the problem's triplets, independent of the solver.
struct ResidualReport {
  double max_equality_residual = 0.0;     // max |Ax - b| over equality rows
  double max_inequality_violation = 0.0;  // over <= and >= rows
  double max_bound_violation = 0.0;       // over column bounds
  double max_dual_infeasibility = 0.0;    // wrong-signed duals and reduced costs
  double max_complementarity = 0.0;       // |dual * slack| over rows and columns
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double duality_gap = 0.0;  // |primal - dual| / max(1, |primal|)
  std::vector<int> flagged_rows;  // rows whose primal residual exceeds the tolerance

  double max_primal_residual() const;
  bool primal_feasible(double tol) const { return max_primal_residual() <= tol; }
};

ResidualReport verify_solution(const LpProblem& problem, const LpSolution& solution,
                               double tolerance = 1e-6);

}  // namespace medea
