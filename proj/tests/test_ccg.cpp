#include <gtest/gtest.h>

#include "dadnet/ccg.hpp"
#include "dadnet/oracle.hpp"
#include "fixtures.hpp"

using namespace dadnet;

namespace {

void expect_monotone(const DADSolution& s) {
  for (std::size_t k = 1; k < s.trace.size(); ++k) {
    EXPECT_GE(s.trace[k].lower_bound, s.trace[k - 1].lower_bound - 1e-9);
    EXPECT_LE(s.trace[k].upper_bound, s.trace[k - 1].upper_bound + 1e-9);
  }
}

}  // namespace

TEST(Ccg, ChainUndefended) {
  const auto inst = fixtures::chain();
  const auto s = ccg_solve(inst, fixtures::chain_scenario(inst, 0, 1));
  EXPECT_TRUE(s.certified);
  EXPECT_NEAR(s.objective, 2000.0, 1e-6);
  EXPECT_EQ(s.worst_attack.attack[0], Selection{1});
  expect_monotone(s);
}

TEST(Ccg, ChainDefended) {
  const auto inst = fixtures::chain();
  const auto sc = fixtures::chain_scenario(inst, 1, 1);
  const auto s = ccg_solve(inst, sc);
  EXPECT_TRUE(s.certified);
  EXPECT_EQ(s.defense.defend[0], Selection{1});
  EXPECT_NEAR(s.objective, operator_value(inst, sc, s.defense, empty_attack(sc)), 1e-6);
}

TEST(Ccg, MatchesOracleOnTwoDepot) {
  const auto inst = fixtures::two_depot();
  for (int nd : {0, 1})
    for (int no : {0, 1})
      for (int na : {1, 2}) {
        const auto sc = fixtures::two_depot_scenario(inst, nd, no, na);
        const auto s = ccg_solve(inst, sc);
        const auto o = oracle_minimax(inst, sc);
        EXPECT_TRUE(s.certified);
        EXPECT_NEAR(s.objective, o.value, 1e-6 * std::max(1.0, o.value)) << sc.name << nd << no << na;
        EXPECT_LE(static_cast<std::size_t>(s.iterations), count_attacks(sc));
        EXPECT_TRUE(s.big_m_ok);
        expect_monotone(s);
      }
}

TEST(Ccg, GapClosedRule) {
  EXPECT_TRUE(gap_closed(99.99995, 100.0, 1e-6));
  EXPECT_FALSE(gap_closed(99.0, 100.0, 1e-6));
  EXPECT_TRUE(gap_closed(0.0, 5e-7, 1e-6));
}

TEST(Ccg, IterationLimitLeavesGapOpen) {
  const auto inst = fixtures::sweep();
  auto sc = fixtures::sweep_scenario(inst, 2, 1, 2);
  sc.max_iterations = 1;
  const auto s = ccg_solve(inst, sc);
  EXPECT_EQ(s.status, CcgStatus::IterationLimit);
  EXPECT_FALSE(s.certified);
  EXPECT_GE(s.upper_bound, s.lower_bound - 1e-9);
}

TEST(Ccg, ReportsIterations) {
  const auto inst = fixtures::two_depot();
  int calls = 0;
  CcgOptions opt;
  opt.on_iteration = [&](const IterationRecord&) { ++calls; };
  const auto s = ccg_solve(inst, fixtures::two_depot_scenario(inst, 1, 1, 1), lp::Solver(), opt);
  EXPECT_EQ(calls, s.iterations);
  EXPECT_EQ(s.trace.size(), static_cast<std::size_t>(s.iterations));
}
