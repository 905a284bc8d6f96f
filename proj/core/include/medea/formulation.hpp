#pragma once

// Scenario -> LP translation of the dispatch and investment model.
//
// Costs are assembled in kilo-currency. Annualized terms (capital cost
// annuities, quasi-fixed O&M) are scaled by the horizon's share of a year.

#include "medea/domain.hpp"
#include "medea/lp_problem.hpp"

namespace medea {

/// Builds the LP. Requires validate_scenario(s) to be empty; an inconsistent
/// scenario throws std::invalid_argument naming the entity.
LpProblem build_lp(const Scenario& s);

/// Renewable-target right-hand side in GWh for a zone: the scaled annual
/// target minus the natural inflow energy of the zone's storages.
double renewable_target_rhs(const Scenario& s, int zone);

}  // namespace medea
