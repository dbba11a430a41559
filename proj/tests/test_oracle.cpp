#include <gtest/gtest.h>

#include "dadnet/oracle.hpp"
#include "fixtures.hpp"

using namespace dadnet;

TEST(Oracle, EnumeratesBudgetFeasiblePlans) {
  const auto inst = fixtures::sweep();
  const auto sc = fixtures::sweep_scenario(inst, 1, 1, 2);
  // C(4,0)+C(4,1)+C(4,2) attacks
  EXPECT_EQ(count_attacks(sc), 11u);
  EXPECT_EQ(enumerate_attacks(sc).size(), 11u);
  // (1 + 4) defend choices x (1 + 2) open choices
  EXPECT_EQ(enumerate_defenses(sc).size(), 15u);
}

TEST(Oracle, ChainValues) {
  const auto inst = fixtures::chain();
  EXPECT_NEAR(oracle_minimax(inst, fixtures::chain_scenario(inst, 0, 1)).value, 2000.0, 1e-6);
  const auto def = oracle_minimax(inst, fixtures::chain_scenario(inst, 1, 1));
  EXPECT_EQ(def.defense.defend[0], Selection{1});
  EXPECT_LT(def.value, 100.0);
}

TEST(Oracle, CapIsEnforced) {
  const auto inst = fixtures::sweep();
  OracleOptions opt;
  opt.max_cells = 3;
  EXPECT_THROW(oracle_minimax(inst, fixtures::sweep_scenario(inst, 2, 2, 2), lp::Solver(), opt), OracleCapExceeded);
}
