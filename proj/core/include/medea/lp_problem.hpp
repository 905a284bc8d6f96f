#pragma once

// Sparse canonical LP: min c'x + offset  s.t.  A x {<=,=,>=} b,  l <= x <= u.

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace medea {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense : char { LessEqual = 'L', GreaterEqual = 'G', Equal = 'E' };

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// Model variable families, one per symbol of the mathematical model.
enum class VarKind : std::uint8_t {
  FuelBurn,            // b
  Generation,          // g
  CornerWeight,        // w
  Intermittent,        // r
  StorageIn,           // s_in
  StorageOut,          // s_out
  StorageLevel,        // v
  Exchange,            // x (signed net export)
  Curtailment,         // q+
  NonServed,           // q-
  AddedGeneration,     // g~+
  DecommissionedGen,   // g~-
  AddedIntermittent,   // r~+
  DecommissionedInt,   // r~-
  AddedStoragePower,   // s~+
  AddedStorageEnergy,  // v~+
  AddedTransfer,       // x~+
};

enum class RowFamily : std::uint8_t {
  ElectricityBalance,
  HeatBalance,
  GenerationCapacity,
  FuelConversion,
  ChpCapacity,
  ChpOutput,
  ChpFuel,
  IntermittentOutput,
  StorageOutCapacity,
  StorageInCapacity,
  StorageEnergyCapacity,
  StorageBalance,
  StorageEnergyCoversPower,
  StorageStartLevel,
  StorageEndLevel,
  TransferUpper,
  TransferLower,
  TransferAntisymmetry,
  TransferExpansionSymmetry,
  DecommissionGen,
  DecommissionInt,
  Reserve,
  Curtailment,
  RenewableTarget,
  WindCap,
};

const char* to_string(VarKind k);
const char* to_string(RowFamily f);

/// Subscripts of a model variable or constraint. Unused subscripts stay -1.
/// `entity` indexes the scenario vector matching the family (dispatchables,
/// intermittents, storages) or, for exchange variables, the partner zone.
struct EntityKey {
  int zone = -1;
  int hour = -1;
  int entity = -1;
  int product = -1;
  int fuel = -1;
  int corner = -1;

  auto operator<=>(const EntityKey&) const = default;
};

struct VarKey {
  VarKind kind{};
  EntityKey at;
  auto operator<=>(const VarKey&) const = default;
};

struct RowKey {
  RowFamily family{};
  EntityKey at;
  auto operator<=>(const RowKey&) const = default;
};

/// Bidirectional map between model entities and LP column/row ids.
class VariableIndex {
 public:
  int add_column(const VarKey& key, std::string name);
  int add_row(const RowKey& key, std::string name);

  std::optional<int> column(const VarKey& key) const;
  std::optional<int> row(const RowKey& key) const;

  const VarKey& column_key(int col) const { return col_keys_.at(static_cast<std::size_t>(col)); }
  const RowKey& row_key(int row) const { return row_keys_.at(static_cast<std::size_t>(row)); }
  const std::string& column_name(int col) const { return col_names_.at(static_cast<std::size_t>(col)); }
  const std::string& row_name(int row) const { return row_names_.at(static_cast<std::size_t>(row)); }

  int num_columns() const { return static_cast<int>(col_keys_.size()); }
  int num_rows() const { return static_cast<int>(row_keys_.size()); }
  bool empty() const { return col_keys_.empty() && row_keys_.empty(); }

 private:
  std::map<VarKey, int> col_lookup_;
  std::map<RowKey, int> row_lookup_;
  std::vector<VarKey> col_keys_;
  std::vector<RowKey> row_keys_;
  std::vector<std::string> col_names_;
  std::vector<std::string> row_names_;
};

struct LpProblem {
  std::string name = "MEDEA";

  std::vector<double> objective;
  double objective_offset = 0.0;
  std::vector<double> lower;
  std::vector<double> upper;

  std::vector<RowSense> senses;
  std::vector<double> rhs;

  /// Sorted by (row, col), no duplicates, no explicit zeros.
  std::vector<Triplet> entries;

  /// Empty for problems not generated from a scenario.
  VariableIndex index;
  /// Zone that carries each column's objective contribution (-1: none).
  std::vector<int> column_zone;
  /// Constant objective share of each zone; sums to objective_offset.
  std::vector<double> zone_offset;

  std::string scenario_hash;
  int horizon = 0;

  int num_rows() const { return static_cast<int>(senses.size()); }
  int num_cols() const { return static_cast<int>(objective.size()); }

  /// Adds a column with default bounds [0, inf) and returns its id.
  int add_column(double cost, double lo = 0.0, double hi = kInf);
  int add_row(RowSense sense, double rhs_value);
  void add_entry(int row, int col, double value) { entries.push_back({row, col, value}); }

  /// Sorts entries, merges duplicates, drops zeros.
  void canonicalize();

  /// Throws std::invalid_argument on inconsistent dimensions or non-finite data.
  void check_well_formed() const;

  /// c'x + offset.
  double evaluate_objective(const std::vector<double>& x) const;
  /// A x.
  std::vector<double> row_activity(const std::vector<double>& x) const;
  /// Objective share of one zone: its columns plus its constant offset.
  double zone_objective(const std::vector<double>& x, int zone) const;
};

}  // namespace medea
