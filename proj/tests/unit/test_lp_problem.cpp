#include <gtest/gtest.h>

#include "medea/lp_problem.hpp"

namespace medea {
namespace {

LpProblem two_by_two() {
  LpProblem p;
  p.add_column(1.0);
  p.add_column(2.0, -1.0, 3.0);
  p.add_row(RowSense::LessEqual, 4.0);
  p.add_row(RowSense::Equal, 1.0);
  p.add_entry(1, 1, 2.0);
  p.add_entry(0, 0, 1.0);
  p.add_entry(0, 1, 1.0);
  p.add_entry(0, 0, 0.5);
  p.add_entry(1, 0, 3.0);
  p.add_entry(1, 0, -3.0);
  return p;
}

TEST(LpProblem, CanonicalizeSortsMergesAndDropsZeros) {
  auto p = two_by_two();
  p.canonicalize();
  const std::vector<Triplet> want{{0, 0, 1.5}, {0, 1, 1.0}, {1, 1, 2.0}};
  EXPECT_EQ(p.entries, want);
}

TEST(LpProblem, ActivityObjectiveAndZoneShare) {
  auto p = two_by_two();
  p.canonicalize();
  p.objective_offset = 10.0;
  p.column_zone = {0, 1};
  p.zone_offset = {4.0, 6.0};
  const std::vector<double> x{2.0, 0.5};
  EXPECT_DOUBLE_EQ(p.evaluate_objective(x), 13.0);
  const auto act = p.row_activity(x);
  EXPECT_DOUBLE_EQ(act[0], 3.5);
  EXPECT_DOUBLE_EQ(act[1], 1.0);
  EXPECT_DOUBLE_EQ(p.zone_objective(x, 0), 6.0);
  EXPECT_DOUBLE_EQ(p.zone_objective(x, 1), 7.0);
  EXPECT_DOUBLE_EQ(p.zone_objective(x, 0) + p.zone_objective(x, 1), p.evaluate_objective(x));
}

TEST(LpProblem, WellFormedChecks) {
  auto p = two_by_two();
  EXPECT_NO_THROW(p.check_well_formed());
  auto q = p;
  q.lower[0] = 5.0;
  q.upper[0] = 1.0;
  EXPECT_THROW(q.check_well_formed(), std::invalid_argument);
  q = p;
  q.rhs[0] = kInf;
  EXPECT_THROW(q.check_well_formed(), std::invalid_argument);
  q = p;
  q.add_entry(7, 0, 1.0);
  EXPECT_THROW(q.check_well_formed(), std::invalid_argument);
  q = p;
  q.lower[1] = kInf;
  q.upper[1] = kInf;
  EXPECT_THROW(q.check_well_formed(), std::invalid_argument);
}

TEST(VariableIndex, BidirectionalLookup) {
  VariableIndex idx;
  const VarKey k{VarKind::Generation, {0, 3, 1, 0, 2}};
  EXPECT_EQ(idx.add_column(k, "g.AT.t4"), 0);
  EXPECT_EQ(idx.add_row({RowFamily::ElectricityBalance, {0, 3}}, "ElectricityBalance.AT.t4"), 0);
  EXPECT_EQ(idx.column(k), 0);
  EXPECT_FALSE(idx.column({VarKind::Generation, {0, 4, 1, 0, 2}}).has_value());
  EXPECT_EQ(idx.column_key(0), k);
  EXPECT_EQ(idx.row_name(0), "ElectricityBalance.AT.t4");
  EXPECT_THROW(idx.add_column(k, "dup"), std::logic_error);
}

}  // namespace
}  // namespace medea
