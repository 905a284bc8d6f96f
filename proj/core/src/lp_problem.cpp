#include "medea/lp_problem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace medea {

const char* to_string(VarKind k) {
  switch (k) {
    case VarKind::FuelBurn: return "b";
    case VarKind::Generation: return "g";
    case VarKind::CornerWeight: return "w";
    case VarKind::Intermittent: return "r";
    case VarKind::StorageIn: return "s_in";
    case VarKind::StorageOut: return "s_out";
    case VarKind::StorageLevel: return "v";
    case VarKind::Exchange: return "x";
    case VarKind::Curtailment: return "q_curtail";
    case VarKind::NonServed: return "q_nse";
    case VarKind::AddedGeneration: return "add_g";
    case VarKind::DecommissionedGen: return "deco_g";
    case VarKind::AddedIntermittent: return "add_r";
    case VarKind::DecommissionedInt: return "deco_r";
    case VarKind::AddedStoragePower: return "add_s";
    case VarKind::AddedStorageEnergy: return "add_v";
    case VarKind::AddedTransfer: return "add_x";
  }
  return "?";
}

const char* to_string(RowFamily f) {
  switch (f) {
    case RowFamily::ElectricityBalance: return "balance_el";
    case RowFamily::HeatBalance: return "balance_ht";
    case RowFamily::GenerationCapacity: return "cap_g";
    case RowFamily::FuelConversion: return "fuel_g";
    case RowFamily::ChpCapacity: return "cap_chp";
    case RowFamily::ChpOutput: return "out_chp";
    case RowFamily::ChpFuel: return "fuel_chp";
    case RowFamily::IntermittentOutput: return "gen_r";
    case RowFamily::StorageOutCapacity: return "cap_s_out";
    case RowFamily::StorageInCapacity: return "cap_s_in";
    case RowFamily::StorageEnergyCapacity: return "cap_v";
    case RowFamily::StorageBalance: return "balance_v";
    case RowFamily::StorageEnergyCoversPower: return "v_covers_s";
    case RowFamily::StorageStartLevel: return "v_start";
    case RowFamily::StorageEndLevel: return "v_end";
    case RowFamily::TransferUpper: return "cap_x_up";
    case RowFamily::TransferLower: return "cap_x_lo";
    case RowFamily::TransferAntisymmetry: return "x_antisym";
    case RowFamily::TransferExpansionSymmetry: return "add_x_sym";
    case RowFamily::DecommissionGen: return "deco_g_max";
    case RowFamily::DecommissionInt: return "deco_r_max";
    case RowFamily::Reserve: return "reserve";
    case RowFamily::Curtailment: return "curtail_max";
    case RowFamily::RenewableTarget: return "res_target";
    case RowFamily::WindCap: return "wind_cap";
  }
  return "?";
}

int VariableIndex::add_column(const VarKey& key, std::string name) {
  const int id = static_cast<int>(col_keys_.size());
  if (!col_lookup_.emplace(key, id).second) {
    throw std::logic_error("duplicate column key: " + name);
  }
  col_keys_.push_back(key);
  col_names_.push_back(std::move(name));
  return id;
}

int VariableIndex::add_row(const RowKey& key, std::string name) {
  const int id = static_cast<int>(row_keys_.size());
  if (!row_lookup_.emplace(key, id).second) {
    throw std::logic_error("duplicate row key: " + name);
  }
  row_keys_.push_back(key);
  row_names_.push_back(std::move(name));
  return id;
}

std::optional<int> VariableIndex::column(const VarKey& key) const {
  auto it = col_lookup_.find(key);
  if (it == col_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> VariableIndex::row(const RowKey& key) const {
  auto it = row_lookup_.find(key);
  if (it == row_lookup_.end()) return std::nullopt;
  return it->second;
}

int LpProblem::add_column(double cost, double lo, double hi) {
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(hi);
  column_zone.push_back(-1);
  return num_cols() - 1;
}

int LpProblem::add_row(RowSense sense, double rhs_value) {
  senses.push_back(sense);
  rhs.push_back(rhs_value);
  return num_rows() - 1;
}

void LpProblem::canonicalize() {
  std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<Triplet> merged;
  merged.reserve(entries.size());
  for (const auto& e : entries) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col) {
      merged.back().value += e.value;
    } else {
      merged.push_back(e);
    }
  }
  std::erase_if(merged, [](const Triplet& e) { return e.value == 0.0; });
  entries = std::move(merged);
}

void LpProblem::check_well_formed() const {
  const auto n = objective.size();
  const auto m = senses.size();
  if (lower.size() != n || upper.size() != n) {
    throw std::invalid_argument("LP: bound vectors do not match the column count");
  }
  if (rhs.size() != m) throw std::invalid_argument("LP: rhs does not match the row count");
  if (!column_zone.empty() && column_zone.size() != n) {
    throw std::invalid_argument("LP: column_zone does not match the column count");
  }
  if (!std::isfinite(objective_offset)) throw std::invalid_argument("LP: non-finite objective offset");
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(objective[j])) throw std::invalid_argument("LP: non-finite objective coefficient");
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j] || lower[j] == kInf ||
        upper[j] == -kInf) {
      throw std::invalid_argument("LP: invalid bounds on column " + std::to_string(j));
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::isfinite(rhs[i])) throw std::invalid_argument("LP: non-finite rhs in row " + std::to_string(i));
  }
  for (const auto& e : entries) {
    if (e.row < 0 || static_cast<std::size_t>(e.row) >= m || e.col < 0 ||
        static_cast<std::size_t>(e.col) >= n) {
      throw std::invalid_argument("LP: matrix entry references a missing row or column");
    }
    if (!std::isfinite(e.value)) throw std::invalid_argument("LP: non-finite matrix coefficient");
  }
}

double LpProblem::evaluate_objective(const std::vector<double>& x) const {
  double sum = objective_offset;
  for (std::size_t j = 0; j < objective.size(); ++j) sum += objective[j] * x[j];
  return sum;
}

std::vector<double> LpProblem::row_activity(const std::vector<double>& x) const {
  std::vector<double> act(senses.size(), 0.0);
  for (const auto& e : entries) act[static_cast<std::size_t>(e.row)] += e.value * x[static_cast<std::size_t>(e.col)];
  return act;
}

double LpProblem::zone_objective(const std::vector<double>& x, int zone) const {
  double sum = zone >= 0 && static_cast<std::size_t>(zone) < zone_offset.size()
                   ? zone_offset[static_cast<std::size_t>(zone)]
                   : 0.0;
  for (std::size_t j = 0; j < column_zone.size(); ++j) {
    if (column_zone[j] == zone) sum += objective[j] * x[j];
  }
  return sum;
}

}  // namespace medea
