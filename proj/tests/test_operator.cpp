#include <gtest/gtest.h>

#include "dadnet/bpr.hpp"
#include "dadnet/operator_lp.hpp"
#include "fixtures.hpp"

using namespace dadnet;

namespace {

double chain_free_flow_value(const NetworkInstance& inst) {
  // 10 v/h over two unit-cost arcs plus their congestion envelopes
  double v = 0.0;
  for (ArcIndex a = 0; a < inst.arcs.size(); ++a) v += 10.0 + bpr::build_pieces(bpr::shape_of(inst, a), 4).envelope(10.0);
  return v;
}

}  // namespace

TEST(Operator, ChainWithoutAttack) {
  const auto inst = fixtures::chain();
  const auto sc = fixtures::chain_scenario(inst, 0, 0);
  const auto sol = solve_operator(build_operator_lp(inst, sc, empty_defense(sc), empty_attack(sc)));
  EXPECT_NEAR(sol.objective, chain_free_flow_value(inst), 1e-7);
  EXPECT_NEAR(operator_objective(sol), sol.objective, 1e-7);
  EXPECT_NEAR(sol.penalty_cost(), 0.0, 1e-9);
}

TEST(Operator, ChainAttackedDepotPaysBothSlacks) {
  const auto inst = fixtures::chain();
  const auto sc = fixtures::chain_scenario(inst, 0, 1);
  AttackPlan a = empty_attack(sc);
  a.attack[0][0] = 1;
  const auto sol = solve_operator(build_operator_lp(inst, sc, empty_defense(sc), a));
  EXPECT_NEAR(sol.objective, 2000.0, 1e-6);
  const auto* rec = sol.find_supply(0, 1, inst.node_index("D"));
  ASSERT_NE(rec, nullptr);
  EXPECT_NEAR(rec->supply, 0.0, 1e-9);
}

TEST(Operator, DefenseCancelsAttack) {
  const auto inst = fixtures::chain();
  const auto sc = fixtures::chain_scenario(inst, 1, 1);
  DefensePlan d = empty_defense(sc);
  AttackPlan a = empty_attack(sc);
  d.defend[0][0] = 1;
  a.attack[0][0] = 1;
  EXPECT_NEAR(operator_value(inst, sc, d, a), chain_free_flow_value(inst), 1e-7);
}

TEST(Operator, ReserveOnlyWhenOpened) {
  const auto inst = fixtures::two_depot();
  const auto sc = fixtures::two_depot_scenario(inst, 0, 1, 1);
  AttackPlan a = empty_attack(sc);
  a.attack[0] = {1, 0};
  DefensePlan closed = empty_defense(sc);
  DefensePlan opened = closed;
  opened.open[0] = {1};
  const auto sol_closed = solve_operator(build_operator_lp(inst, sc, closed, a));
  const auto sol_open = solve_operator(build_operator_lp(inst, sc, opened, a));
  const NodeIndex R = inst.node_index("R");
  EXPECT_NEAR(sol_closed.find_supply(0, 1, R) ? sol_closed.find_supply(0, 1, R)->supply : 0.0, 0.0, 1e-9);
  EXPECT_LT(sol_open.objective, sol_closed.objective);
}

TEST(Operator, ThreePhaseLinksCustomersToFilledDemand) {
  const auto inst = fixtures::three_phase();
  ScenarioConfig sc;
  const auto sol = solve_operator(build_operator_lp(inst, sc, empty_defense(sc), empty_attack(sc)));
  EXPECT_EQ(sol.status, lp::Status::Optimal);
  // D offers 10 but S takes 8: only the unused depot supply is penalized
  EXPECT_NEAR(sol.penalty_cost(), 2.0 * 40.0, 1e-7);
  EXPECT_NEAR(sol.find_supply(0, 2, inst.node_index("S"))->supply, 8.0, 1e-7);
  EXPECT_NEAR(sol.find_supply(0, 3, inst.node_index("C"))->supply, 8.0, 1e-7);
  EXPECT_GT(sol.flow_cost(), 0.0);
}

TEST(Operator, ModelIsDeterministic) {
  const auto inst = fixtures::three_phase();
  ScenarioConfig sc;
  const auto a = build_operator_lp(inst, sc, empty_defense(sc), empty_attack(sc));
  const auto b = build_operator_lp(inst, sc, empty_defense(sc), empty_attack(sc));
  EXPECT_EQ(lp::to_lp_string(a.model), lp::to_lp_string(b.model));
}
