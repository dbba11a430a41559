#include <gtest/gtest.h>

#include <cmath>

#include "dadnet/bench.hpp"

using namespace dadnet;

TEST(Bench, Median) {
  EXPECT_DOUBLE_EQ(median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_DOUBLE_EQ(median({4.0, 1.0, 2.0, 3.0}), 2.5);
}

TEST(Bench, FitNeedsTwoSizes) {
  EXPECT_FALSE(fit_power_law({10.0}, {1.0}).has_value());
  const auto f = fit_power_law({10.0, 20.0, 40.0}, {1.0, 8.0, 64.0});
  ASSERT_TRUE(f.has_value());
  EXPECT_NEAR(f->exponent, 3.0, 1e-12);
  EXPECT_NEAR(std::exp(f->log_coeff), 1e-3, 1e-12);
}

TEST(Bench, SpecForGridSize) {
  BenchConfig c;
  EXPECT_EQ(bench_spec(c, 169).rows, 13);
  EXPECT_EQ(bench_spec(c, 100).cols, 10);
}

TEST(Bench, SmallRunAndOrdering) {
  BenchConfig c;
  c.sizes = {9};
  c.repeats = 1;
  c.phases = 1;
  c.roles.depot_count = 2;
  c.roles.station_count = 2;
  const auto rep = run_bench(c);
  ASSERT_EQ(rep.rows.size(), 1u);
  EXPECT_FALSE(rep.fit.has_value());
  EXPECT_TRUE(rep.rows[0].certified);
  EXPECT_FALSE(format_bench_table(rep).empty());
  c.sizes = {16, 9};
  EXPECT_THROW(run_bench(c), std::invalid_argument);
}
