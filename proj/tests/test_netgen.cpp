#include <gtest/gtest.h>

#include "dadnet/io.hpp"
#include "dadnet/metrics.hpp"
#include "dadnet/netgen.hpp"
#include "dadnet/validate.hpp"

using namespace dadnet;

TEST(Netgen, RngIsPortable) {
  Rng a(42), b(42);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(a.below(1000), b.below(1000));
  Rng c(1);
  for (int k = 0; k < 1000; ++k) {
    const auto v = c.integer(-3, 3);
    EXPECT_GE(v, -3);
    EXPECT_LE(v, 3);
  }
  EXPECT_NE(derive_seed(1, "road"), derive_seed(1, "roles"));
}

TEST(Netgen, SameSeedSameBytes) {
  GeneratorSpec spec;
  spec.family = GraphFamily::PowerLaw;
  spec.nodes = 120;
  spec.seed = 9;
  EXPECT_EQ(write_instance(generate(spec)), write_instance(generate(spec)));
  GeneratorSpec other = spec;
  other.seed = 10;
  EXPECT_NE(write_instance(generate(spec)), write_instance(generate(other)));
}

TEST(Netgen, TinyGraphs) {
  const auto g2 = power_law_graph(2, 3.0, 1);
  EXPECT_EQ(g2.node_count, 2u);
  EXPECT_EQ(g2.edges.size(), 1u);
  const auto g3 = power_law_graph(3, 3.0, 1);
  EXPECT_EQ(component_count(g3), 1u);
  EXPECT_TRUE(g3.edges.size() == 2u || g3.edges.size() == 3u);
}

TEST(Netgen, FullGridClosedForm) {
  // keep every grid edge, no diagonals: 2 m n - m - n edges
  const auto g = grerec_graph(5, 7, 1.0, 0.0, 3);
  EXPECT_EQ(g.node_count, 35u);
  EXPECT_EQ(g.edges.size(), static_cast<std::size_t>(2 * 5 * 7 - 5 - 7));
  const auto king = grerec_graph(5, 5, 1.0, 1.0, 3);
  const auto st = compute_stats(king);
  EXPECT_EQ(st.max_degree, 8u);
}

TEST(Netgen, GeneratedGraphsAreConnected) {
  for (std::uint64_t s = 1; s <= 5; ++s) {
    EXPECT_EQ(component_count(power_law_graph(200, 3.0, s)), 1u);
    EXPECT_EQ(component_count(exponential_graph(150, builtin_defaults().exponential, s)), 1u);
    EXPECT_EQ(component_count(grerec_graph(10, 10, 0.6, 0.1, s)), 1u);
  }
}

TEST(Netgen, RoleCounts) {
  const auto rc = role_counts(224, {});
  EXPECT_EQ(rc.depots, 2);
  EXPECT_EQ(rc.stations, 12);
  EXPECT_EQ(rc.customers, 6);
  RoleOptions fixed;
  fixed.depot_count = 3;
  fixed.station_count = 2;
  fixed.customer_count = 1;
  const auto f = role_counts(16, fixed);
  EXPECT_EQ(f.depots, 3);
  EXPECT_EQ(f.stations, 2);
  EXPECT_EQ(f.customers, 1);
  RoleOptions too_many;
  too_many.depot_count = 10;
  EXPECT_THROW(role_counts(10, too_many), GeneratorError);
}

TEST(Netgen, GeneratedInstanceIsValidAndBalanced) {
  GeneratorSpec spec;
  spec.rows = spec.cols = 8;
  spec.seed = 4;
  const auto inst = generate(spec);
  EXPECT_TRUE(validate_instance(inst).ok()) << validate_instance(inst).summary();
  for (Phase p = 1; p <= inst.phase_count; ++p) {
    double sum = 0.0;
    for (const auto& n : inst.nodes) sum += n.phase_capacity(p);
    EXPECT_NEAR(sum, 0.0, 1e-9) << "phase " << p;
  }
}

TEST(Netgen, TwoModesShareNodes) {
  GeneratorSpec spec;
  spec.family = GraphFamily::Exponential;
  spec.nodes = 100;
  spec.modes = 2;
  spec.overlap = 0.1;
  spec.seed = 2;
  const auto inst = generate(spec);
  ASSERT_EQ(inst.modes.size(), 2u);
  int shared = 0;
  for (const auto& n : inst.nodes) shared += n.in_mode(0) && n.in_mode(1);
  EXPECT_EQ(shared, 10);
  EXPECT_TRUE(validate_instance(inst).ok());
}

TEST(Netgen, SpecChecks) {
  GeneratorSpec spec;
  spec.keep = 1.5;
  EXPECT_THROW(check_spec(spec), GeneratorError);
  spec = {};
  spec.family = GraphFamily::PowerLaw;
  spec.nodes = 1;
  EXPECT_THROW(check_spec(spec), GeneratorError);
  EXPECT_THROW(parse_family("lattice"), GeneratorError);
}

TEST(Netgen, DefaultsFileMatchesBuiltin) {
  const auto d = load_defaults(DADNET_SOURCE_DIR "/data/netgen_defaults.json");
  EXPECT_EQ(d.phases, builtin_defaults().phases);
  EXPECT_DOUBLE_EQ(d.exponential.width, builtin_defaults().exponential.width);
  EXPECT_THROW(parse_defaults("{\"version\": 99}"), GeneratorError);
}
