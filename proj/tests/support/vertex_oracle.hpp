#pragma once

#include <optional>
#include <random>

#include "medea/lp_problem.hpp"

namespace medea::testing {

/// Optimum of a small LP with finite column bounds by enumerating every basic
/// point (n active hyperplanes out of rows and bounds). nullopt if infeasible.
std::optional<double> vertex_enumeration_optimum(const LpProblem& p, double tol = 1e-9);

struct RandomLpShape {
  int max_vars = 6;
  int max_rows = 8;
  bool allow_degenerate = true;
};

/// Random boxed LP with mixed row senses; some instances are infeasible,
/// some carry duplicated (redundant) rows.
LpProblem random_lp(std::mt19937_64& rng, const RandomLpShape& shape = {});

}  // namespace medea::testing
