#include <gtest/gtest.h>

#include "dadnet/subproblem.hpp"
#include "fixtures.hpp"

using namespace dadnet;

TEST(Subproblem, DualEqualsPrimalUnderEveryAttack) {
  const auto inst = fixtures::two_depot();
  const auto sc = fixtures::two_depot_scenario(inst, 1, 1, 2);
  DefensePlan d = empty_defense(sc);
  d.defend[0] = {0, 1};
  d.open[0] = {1};
  for (Selection s : {Selection{0, 0}, Selection{1, 0}, Selection{0, 1}, Selection{1, 1}}) {
    AttackPlan a = empty_attack(sc);
    a.attack[0] = s;
    auto sp = build_dual_sp(inst, sc, d);
    linearize_bilinear(sp);
    fix_attack(sp, a);
    EXPECT_NEAR(solve_subproblem(sp, lp::Solver(), false).upper_bound, operator_value(inst, sc, d, a), 1e-6);
  }
}

TEST(Subproblem, BestAttackOnChain) {
  const auto inst = fixtures::chain();
  const auto sc = fixtures::chain_scenario(inst, 0, 1);
  auto sp = build_dual_sp(inst, sc, empty_defense(sc));
  linearize_bilinear(sp);
  const auto r = solve_subproblem(sp);
  EXPECT_EQ(r.attack.attack[0], Selection{1});
  EXPECT_NEAR(r.upper_bound, 2000.0, 1e-6);
  EXPECT_TRUE(r.audit.ok);
  EXPECT_LT(r.audit.worst_ratio, 0.99);
}

TEST(Subproblem, PenaltyPolicyCutsTheValueAndAuditFlagsIt) {
  const auto inst = fixtures::chain();
  auto sc = fixtures::chain_scenario(inst, 0, 1);
  sc.big_m.policy = BigMPolicy::Penalty;
  auto sp = build_dual_sp(inst, sc, empty_defense(sc));
  linearize_bilinear(sp);
  const auto r = solve_subproblem(sp);
  EXPECT_NEAR(r.upper_bound, 1070.67, 0.01);
  EXPECT_FALSE(r.audit.ok);
}

TEST(Subproblem, DerivedBoundCoversPhasePenalties) {
  const auto inst = fixtures::chain(100.0);
  EXPECT_DOUBLE_EQ(derived_price_bound(inst), 200.0);
  const auto sc = fixtures::chain_scenario(inst, 0, 1);
  const auto M = resolve_big_m(inst, sc);
  ASSERT_EQ(M.size(), 1u);
  EXPECT_NEAR(M[0][0], 1.05 * 200.0, 1e-9);
}

TEST(Subproblem, DualPointIsFeasible) {
  const auto inst = fixtures::three_phase();
  ScenarioConfig sc;
  InterdictionGroup g;
  g.attackable = {inst.node_index("D")};
  g.attack_budget = 1;
  sc.groups.push_back(g);
  auto sp = build_dual_sp(inst, sc, empty_defense(sc));
  linearize_bilinear(sp);
  const auto out = lp::Solver().solve(sp.model);
  ASSERT_TRUE(out.optimal());
  EXPECT_LE(dual_infeasibility(sp, out.primal), 1e-7);
}
