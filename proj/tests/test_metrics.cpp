#include <gtest/gtest.h>

#include "dadnet/metrics.hpp"
#include "dadnet/netgen.hpp"
#include "fixtures.hpp"

using namespace dadnet;

TEST(Metrics, CompleteGraph) {
  SimpleGraph k4;
  k4.node_count = 4;
  k4.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  const auto s = compute_stats(k4);
  EXPECT_EQ(s.density, 1.0);
  EXPECT_EQ(s.heterogeneity, 0.0);
  EXPECT_EQ(s.undirected_edge_count, 6u);
  EXPECT_EQ(s.edge_count, 12u);
  EXPECT_EQ(s.avg_betweenness, 0.0);
}

TEST(Metrics, Star) {
  SimpleGraph star;
  star.node_count = 4;
  star.edges = {{0, 1}, {0, 2}, {0, 3}};
  const auto s = compute_stats(star);
  EXPECT_EQ(s.betweenness, (std::vector<double>{1.0, 0.0, 0.0, 0.0}));
  EXPECT_EQ(s.max_degree, 3u);
  EXPECT_NEAR(s.heterogeneity, std::sqrt(0.75), 1e-12);
}

TEST(Metrics, PathBetweenness) {
  // 0 - 1 - 2 - 3: node 1 lies on (0,2) and (0,3)
  const auto b = brandes_betweenness({{1}, {0, 2}, {1, 3}, {2}});
  EXPECT_EQ(b, (std::vector<double>{0.0, 2.0, 2.0, 0.0}));
}

TEST(Metrics, InstanceUsesRoadSkeleton) {
  const auto inst = fixtures::two_depot();
  const auto s = compute_stats(inst);
  EXPECT_EQ(s.node_count, 6u);
  EXPECT_EQ(s.edge_count, 5u);
  EXPECT_EQ(s.undirected_edge_count, 5u);
  EXPECT_EQ(s.max_degree, 5u);
}
