#include <gtest/gtest.h>

#include "dadnet/validate.hpp"
#include "fixtures.hpp"

using namespace dadnet;

TEST(Model, CanonicalizeSortsNodesAndRemapsArcs) {
  auto inst = fixtures::skeleton(1);
  inst.nodes.push_back(make_node("b", NodeRole::Station, 1, {-1.0}, {1.0}));
  inst.nodes.push_back(make_node("a", NodeRole::Depot, 1, {1.0}, {1.0}));
  fixtures::add_arcs(inst, {{"a", "b"}});
  inst.canonicalize();
  EXPECT_EQ(inst.nodes[0].id, "a");
  EXPECT_EQ(inst.nodes[inst.arcs[0].tail].id, "a");
  EXPECT_EQ(inst.nodes[inst.arcs[0].head].id, "b");
}

TEST(Model, DerivedConstants) {
  const auto inst = fixtures::chain();
  // conversion = vehicle length / (std length * load) = 1 / (1 * 1)
  EXPECT_DOUBLE_EQ(inst.profile(0, 1).conversion, 1.0);
  EXPECT_DOUBLE_EQ(inst.arc_capacity(0), 100.0);
  EXPECT_DOUBLE_EQ(inst.arcs[0].bpr_width, 2.0 * 100.0 / 4);
}

TEST(Model, SupplyAndDemandSets) {
  const auto inst = fixtures::two_depot();
  EXPECT_EQ(supply_nodes(inst, 0, 1).size(), 3u);
  EXPECT_EQ(demand_nodes(inst, 0, 1).size(), 2u);
}

TEST(Model, CarriersForOdPhases) {
  const auto inst = fixtures::three_phase();
  EXPECT_EQ(enumerate_carriers(inst, 0, 1).size(), 1u);
  const auto c2 = enumerate_carriers(inst, 0, 2);
  ASSERT_EQ(c2.size(), 1u);
  EXPECT_TRUE(c2[0].is_pair());
  EXPECT_EQ(carrier_label(inst, 0, c2[0]), "C:S");
}

TEST(Model, EffectiveAttackDropsDefendedNodes) {
  const auto inst = fixtures::two_depot();
  const auto sc = fixtures::two_depot_scenario(inst, 1, 1, 2);
  DefensePlan d = empty_defense(sc);
  AttackPlan a = empty_attack(sc);
  d.defend[0] = {1, 0};
  a.attack[0] = {1, 1};
  EXPECT_EQ(effective_attack(a, d).attack[0], (Selection{0, 1}));
  EXPECT_TRUE(within_budget(a, sc));
  EXPECT_FALSE(selection_overlap(sc, d, a).disjoint());
  a.attack[0] = {0, 1};
  EXPECT_TRUE(selection_overlap(sc, d, a).disjoint());
}

TEST(Validate, RejectsSignMismatchAndUnknownArcs) {
  auto inst = fixtures::chain();
  EXPECT_TRUE(validate_instance(inst).ok());
  inst.nodes[0].phases[0].capacity = -10.0;
  EXPECT_FALSE(validate_instance(inst).ok());
  EXPECT_THROW(require_valid(inst), InstanceError);
}

TEST(Validate, ScenarioBudgetsAndMembership) {
  const auto inst = fixtures::two_depot();
  auto sc = fixtures::two_depot_scenario(inst, 1, 1, 1);
  EXPECT_TRUE(validate_scenario(inst, sc).ok());
  sc.groups[0].attack_budget = -1;
  EXPECT_FALSE(validate_scenario(inst, sc).ok());
  sc = fixtures::two_depot_scenario(inst, 1, 1, 1);
  sc.groups[0].reserve = sc.groups[0].attackable;  // overlapping S and R
  EXPECT_FALSE(validate_scenario(inst, sc).ok());
}
