#pragma once

// CSV and JSON writers for outcomes, sweeps and grids. Column layouts are
// documented in docs/outputs.md. Numbers use the shortest round-trip
// representation, so identical results give identical bytes.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "medea/outcome.hpp"
#include "medea/sweep.hpp"

namespace medea {

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_number(double v);

/// cost_components.csv, capacities.csv, dispatch_monthly.csv, prices.csv, summary.json.
void write_outcome(const SystemOutcome& outcome, const std::filesystem::path& dir);

/// sweep.csv, opportunity_cost.csv, plot_long.csv, summary.json.
void write_sweep(const SweepResult& sweep, const std::filesystem::path& dir);

/// grid.csv and plot_long.csv at the top, one cell_<k>/ sweep directory per cell.
void write_grid(const std::vector<GridCell>& cells, const std::filesystem::path& dir);

}  // namespace medea
