#include "medea/verify.hpp"

#include <algorithm>
#include <cmath>

namespace medea {

double ResidualReport::max_primal_residual() const {
  return std::max({max_equality_residual, max_inequality_violation, max_bound_violation});
}

ResidualReport verify_solution(const LpProblem& problem, const LpSolution& solution, double tolerance) {
  ResidualReport r;
  const auto m = static_cast<std::size_t>(problem.num_rows());
  const auto n = static_cast<std::size_t>(problem.num_cols());
  if (solution.primal.size() != n) return r;

  const auto act = problem.row_activity(solution.primal);
  for (std::size_t i = 0; i < m; ++i) {
    const double diff = act[i] - problem.rhs[i];
    const double scale = std::max(1.0, std::abs(problem.rhs[i]));
    double viol = 0.0;
    switch (problem.senses[i]) {
      case RowSense::Equal:
        viol = std::abs(diff);
        r.max_equality_residual = std::max(r.max_equality_residual, viol);
        break;
      case RowSense::LessEqual:
        viol = std::max(0.0, diff);
        r.max_inequality_violation = std::max(r.max_inequality_violation, viol);
        break;
      case RowSense::GreaterEqual:
        viol = std::max(0.0, -diff);
        r.max_inequality_violation = std::max(r.max_inequality_violation, viol);
        break;
    }
    if (viol > tolerance * scale) r.flagged_rows.push_back(static_cast<int>(i));
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double x = solution.primal[j];
    r.max_bound_violation = std::max({r.max_bound_violation, problem.lower[j] - x, x - problem.upper[j]});
  }

  r.primal_objective = problem.evaluate_objective(solution.primal);
  if (solution.dual.size() != m) return r;

  std::vector<double> d = problem.objective;
  for (const auto& e : problem.entries) {
    d[static_cast<std::size_t>(e.col)] -= e.value * solution.dual[static_cast<std::size_t>(e.row)];
  }

  double dual_obj = problem.objective_offset;
  for (std::size_t i = 0; i < m; ++i) {
    const double y = solution.dual[i];
    dual_obj += problem.rhs[i] * y;
    const double slack = act[i] - problem.rhs[i];
    if (problem.senses[i] == RowSense::GreaterEqual) {
      r.max_dual_infeasibility = std::max(r.max_dual_infeasibility, -y);
      r.max_complementarity = std::max(r.max_complementarity, std::abs(y * slack));
    } else if (problem.senses[i] == RowSense::LessEqual) {
      r.max_dual_infeasibility = std::max(r.max_dual_infeasibility, y);
      r.max_complementarity = std::max(r.max_complementarity, std::abs(y * slack));
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double dj = d[j];
    const double lo = problem.lower[j];
    const double hi = problem.upper[j];
    const double x = solution.primal[j];
    if (dj > 0.0) {
      if (std::isfinite(lo)) {
        dual_obj += dj * lo;
        r.max_complementarity = std::max(r.max_complementarity, std::abs(dj * (x - lo)));
      } else {
        r.max_dual_infeasibility = std::max(r.max_dual_infeasibility, dj);
      }
    } else if (dj < 0.0) {
      if (std::isfinite(hi)) {
        dual_obj += dj * hi;
        r.max_complementarity = std::max(r.max_complementarity, std::abs(dj * (hi - x)));
      } else {
        r.max_dual_infeasibility = std::max(r.max_dual_infeasibility, -dj);
      }
    }
  }
  r.dual_objective = dual_obj;
  r.duality_gap = std::abs(r.primal_objective - r.dual_objective) / std::max(1.0, std::abs(r.primal_objective));
  return r;
}

}  // namespace medea
