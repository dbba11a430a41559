#include <gtest/gtest.h>

#include <cstdlib>

#include "dadnet/lp.hpp"
#include "dadnet/solver.hpp"

using namespace dadnet;

TEST(Solver, AvailabilityListsHighs) {
  const auto rep = lp::check_availability();
  EXPECT_TRUE(rep.ok);
  bool found = false;
  for (const auto& e : rep.entries) found = found || (e.name == "highs" && e.usable);
  EXPECT_TRUE(found);
}

TEST(Solver, SmallLpWithDuals) {
  lp::Model m;
  const auto x = m.add_nonneg("x", 1.0);
  const auto y = m.add_nonneg("y", 2.0);
  m.add_row("demand", {{x, 1.0}, {y, 1.0}}, lp::RowSense::GreaterEqual, 3.0);
  m.add_row("cap", {{x, 1.0}}, lp::RowSense::LessEqual, 2.0);
  const auto out = lp::Solver().solve(m);
  ASSERT_TRUE(out.optimal());
  EXPECT_NEAR(out.objective, 2.0 + 2.0, 1e-9);
  ASSERT_TRUE(out.has_duals);
  EXPECT_NEAR(out.row_duals[0], 2.0, 1e-9);
  EXPECT_NEAR(out.row_duals[1], -1.0, 1e-9);
}

TEST(Solver, SmallMip) {
  lp::Model m(lp::ObjSense::Maximize);
  const auto a = m.add_binary("a", 5.0);
  const auto b = m.add_binary("b", 4.0);
  const auto c = m.add_binary("c", 3.0);
  m.add_row("knap", {{a, 2.0}, {b, 3.0}, {c, 1.0}}, lp::RowSense::LessEqual, 3.0);
  const auto out = lp::Solver().solve(m);
  ASSERT_TRUE(out.optimal());
  EXPECT_NEAR(out.objective, 8.0, 1e-9);
}

TEST(Solver, InfeasibleReported) {
  lp::Model m;
  const auto x = m.add_var("x", 0.0, 1.0);
  m.add_row("r", {{x, 1.0}}, lp::RowSense::GreaterEqual, 2.0);
  EXPECT_FALSE(lp::Solver().solve(m).optimal());
}

TEST(Solver, UnknownBackendIsConfigurationError) {
  EXPECT_THROW(lp::Solver("no-such-backend"), lp::ConfigurationError);
}

TEST(Solver, LpTextIsDeterministic) {
  lp::Model m;
  const auto x = m.add_nonneg("x", 1.0);
  m.add_row("r", {{x, 1.0}}, lp::RowSense::GreaterEqual, 2.0);
  EXPECT_EQ(lp::to_lp_string(m), lp::to_lp_string(m));
  EXPECT_NE(lp::to_lp_string(m).find("r:"), std::string::npos);
}
