#pragma once

// Small hand-checkable instances shared by the unit and acceptance suites.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "dadnet/model.hpp"

namespace fixtures {

using namespace dadnet;

struct ArcSpec {
  std::string tail, head;
  double length = 1.0;
  double speed = 30.0;
  double capacity = 100.0;
  double cost = 1.0;
  double time_cost = 1.0;
};

inline NetworkInstance skeleton(int phases) {
  NetworkInstance inst;
  inst.phase_count = phases;
  inst.bpr_pieces = 4;
  inst.modes.push_back(Mode{"truck", 1.0, 0.5});
  inst.carrier_profiles.assign(1, std::vector<CarrierProfile>(phases, CarrierProfile{1.0, 1.0, 0.0}));
  return inst;
}

inline void add_arcs(NetworkInstance& inst, const std::vector<ArcSpec>& specs) {
  for (const auto& s : specs) {
    ArcRecord a;
    a.mode = 0;
    a.tail = inst.node_index(s.tail);
    a.head = inst.node_index(s.head);
    a.length = s.length;
    a.speed = s.speed;
    a.capacity = s.capacity;
    a.flow_cost.assign(inst.phase_count, s.cost);
    a.time_cost = s.time_cost;
    inst.arcs.push_back(a);
  }
}

inline NetworkInstance finish(NetworkInstance inst) {
  inst.canonicalize();
  derive_constants(inst);
  return inst;
}

// Depot D (+10) -> junction J -> station S (-10), one phase, penalty p on
// both ends, unit costs, u = 100 v/h.
inline NetworkInstance chain(double penalty = 100.0) {
  auto inst = skeleton(1);
  inst.nodes.push_back(make_node("D", NodeRole::Depot, 1, {10.0}, {penalty}));
  inst.nodes.push_back(make_node("J", NodeRole::Junction, 1, {0.0}, {0.0}));
  inst.nodes.push_back(make_node("S", NodeRole::Station, 1, {-10.0}, {penalty}));
  add_arcs(inst, {{"D", "J"}, {"J", "S"}});
  return finish(std::move(inst));
}

inline ScenarioConfig chain_scenario(const NetworkInstance& inst, int nd, int na) {
  ScenarioConfig sc;
  sc.name = "chain";
  InterdictionGroup g;
  g.mode = 0;
  g.phase = 1;
  g.attackable = {inst.node_index("D")};
  g.defense_budget = nd;
  g.attack_budget = na;
  sc.groups.push_back(g);
  return sc;
}

// Two depots of unequal size feeding two stations through a hub, plus a
// reserve depot R. D1 = +12 is the larger loss.
inline NetworkInstance two_depot(double penalty = 50.0) {
  auto inst = skeleton(1);
  inst.nodes.push_back(make_node("D1", NodeRole::Depot, 1, {12.0}, {penalty}));
  inst.nodes.push_back(make_node("D2", NodeRole::Depot, 1, {6.0}, {penalty}));
  inst.nodes.push_back(make_node("R", NodeRole::Depot, 1, {5.0}, {penalty}));
  inst.nodes.push_back(make_node("H", NodeRole::Junction, 1, {0.0}, {0.0}));
  inst.nodes.push_back(make_node("S1", NodeRole::Station, 1, {-9.0}, {penalty}));
  inst.nodes.push_back(make_node("S2", NodeRole::Station, 1, {-9.0}, {penalty}));
  add_arcs(inst, {{"D1", "H"}, {"D2", "H"}, {"R", "H", 2.0}, {"H", "S1"}, {"H", "S2", 1.5}});
  return finish(std::move(inst));
}

inline ScenarioConfig two_depot_scenario(const NetworkInstance& inst, int nd, int no, int na) {
  ScenarioConfig sc;
  sc.name = "two-depot";
  InterdictionGroup g;
  g.mode = 0;
  g.phase = 1;
  g.attackable = {inst.node_index("D1"), inst.node_index("D2")};
  std::sort(g.attackable.begin(), g.attackable.end());
  g.reserve = {inst.node_index("R")};
  g.defense_budget = nd;
  g.reserve_budget = no;
  g.attack_budget = na;
  sc.groups.push_back(g);
  return sc;
}

// Three phases on a line D - J - S - C with two-way roads: trucks bring fuel
// to station S, customer C drives to S and back.
inline NetworkInstance three_phase(double penalty = 40.0) {
  auto inst = skeleton(3);
  inst.nodes.push_back(make_node("D", NodeRole::Depot, 1, {10.0, 0.0, 0.0}, {penalty, penalty, penalty}));
  inst.nodes.push_back(make_node("J", NodeRole::Junction, 1, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}));
  inst.nodes.push_back(make_node("S", NodeRole::Station, 1, {-8.0, 8.0, -8.0}, {penalty, penalty, penalty}));
  inst.nodes.push_back(make_node("C", NodeRole::Customer, 1, {0.0, -8.0, 8.0}, {0.0, penalty, penalty}));
  add_arcs(inst, {{"D", "J"}, {"J", "D"}, {"J", "S"}, {"S", "J"}, {"S", "C", 0.5}, {"C", "S", 0.5}});
  return finish(std::move(inst));
}

// Budget-sweep fixture: four attackable depots of distinct size and two
// reserve depots around a hub feeding two stations.
inline NetworkInstance sweep(double penalty = 60.0) {
  auto inst = skeleton(1);
  const std::vector<std::pair<std::string, double>> depots = {{"D1", 9.0}, {"D2", 7.0}, {"D3", 5.0},
                                                              {"D4", 4.0}, {"R1", 6.0}, {"R2", 3.0}};
  for (const auto& [id, b] : depots) inst.nodes.push_back(make_node(id, NodeRole::Depot, 1, {b}, {penalty}));
  inst.nodes.push_back(make_node("H", NodeRole::Junction, 1, {0.0}, {0.0}));
  inst.nodes.push_back(make_node("S1", NodeRole::Station, 1, {-14.0}, {2.0 * penalty}));
  inst.nodes.push_back(make_node("S2", NodeRole::Station, 1, {-10.0}, {2.0 * penalty}));
  add_arcs(inst, {{"D1", "H", 1.0}, {"D2", "H", 1.2}, {"D3", "H", 0.8}, {"D4", "H", 1.5},
                  {"R1", "H", 2.5}, {"R2", "H", 3.0}, {"H", "S1"}, {"H", "S2", 1.5}});
  return finish(std::move(inst));
}

inline ScenarioConfig sweep_scenario(const NetworkInstance& inst, int nd, int no, int na) {
  ScenarioConfig sc;
  sc.name = "sweep_d" + std::to_string(nd) + "_o" + std::to_string(no) + "_a" + std::to_string(na);
  InterdictionGroup g;
  for (const char* id : {"D1", "D2", "D3", "D4"}) g.attackable.push_back(inst.node_index(id));
  for (const char* id : {"R1", "R2"}) g.reserve.push_back(inst.node_index(id));
  std::sort(g.attackable.begin(), g.attackable.end());
  std::sort(g.reserve.begin(), g.reserve.end());
  g.defense_budget = nd;
  g.reserve_budget = no;
  g.attack_budget = na;
  sc.groups.push_back(g);
  return sc;
}

}  // namespace fixtures
