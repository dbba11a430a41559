#pragma once

// Inner operator LP: the system-optimal routing of supply through every
// (mode, phase, carrier) of an instance, for a given defense and attack.
//
// The same block builder serves three callers: the standalone LP (fixed
// defense), the master problem (defense binaries are model variables) and the
// attacker subproblem, which transposes the standalone LP.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "dadnet/bpr.hpp"
#include "dadnet/lp.hpp"
#include "dadnet/model.hpp"
#include "dadnet/solver.hpp"

namespace dadnet {

inline constexpr lp::VarId kNoVar = std::numeric_limits<lp::VarId>::max();

enum class SupplyRole : std::uint8_t { Standard, Attackable, Reserve };

// One node-level supply entry x_i^{mp}, s_i^{mp}.
struct NodeEntry {
  NodeIndex node = 0;
  double capacity = 0.0;  // signed b_i^{mp}
  double penalty = 0.0;
  SupplyRole role = SupplyRole::Standard;
  int pos = -1;  // position in the group's attackable or reserve list
};

struct ModePhaseLayout {
  ModeIndex mode = 0;
  Phase phase = 1;
  int group = -1;  // scenario group index, -1 when none
  std::vector<Carrier> carriers;
  std::vector<std::string> carrier_labels;
  std::vector<double> conversion;  // gamma per carrier (shared by the phase profile)
  // Nonzero b_i^{cmp} per carrier.
  std::vector<std::vector<std::pair<NodeIndex, double>>> carrier_supply;
  std::vector<NodeIndex> members;  // nodes of the mode graph
  std::vector<NodeEntry> nodes;
};

struct PhaseNode {
  NodeIndex node = 0;
  double capacity = 0.0;  // signed b_i^p
  double pump_limit = std::numeric_limits<double>::infinity();
};

// Index sets and constants needed to emit operator rows. Holds a pointer to
// the instance, which must outlive the layout.
struct OperatorLayout {
  const NetworkInstance* instance = nullptr;
  int phase_count = 0;
  bool pump_limits = false;
  std::vector<bpr::Pieces> pieces;                // by ArcIndex
  std::vector<std::vector<ArcIndex>> mode_arcs;   // by mode
  std::vector<ModePhaseLayout> blocks;            // by mode * phase_count + phase - 1
  std::vector<std::vector<PhaseNode>> phase_nodes;  // by phase - 1

  const ModePhaseLayout& block(ModeIndex m, Phase p) const { return blocks.at(m * phase_count + (p - 1)); }
};

OperatorLayout make_layout(const NetworkInstance& instance, const ScenarioConfig& scenario);

// Operator rows, named after the dual variable each one prices.
enum class RowFamily : std::uint8_t {
  Conservation,        // phi
  Coupling,            // kappa^{cmp}
  CarrierSupply,       // beta^{cmp}
  CarrierCapacity,     // mu^{cmp}
  CarrierAggregation,  // sigma^{mp}
  Interdiction,        // delta
  Reserve,             // omega
  Balance,             // beta^{mp}
  ModeAggregation,     // sigma^p
  PhaseCap,            // beta^p
  ArcAggregation,      // kappa^m
  ArcCapacity,         // mu^m
  Congestion,          // tau
  Monotonicity,        // upsilon
  Linkage,             // theta
  Pump,                // pi
};

inline constexpr int kRowFamilyCount = 16;

std::string_view dual_symbol(RowFamily family);

struct RowInfo {
  lp::RowId row = 0;
  RowFamily family = RowFamily::Conservation;
  int block = -1;    // layout block
  int carrier = -1;  // carrier within the block
  std::size_t index = 0;  // node or arc index, family-dependent
  int piece = -1;
  int entry = -1;  // NodeEntry position within the block
};

enum class CostKind : std::uint8_t { None, Flow, Penalty, Congestion };

// Variable handles of one operator copy. Node-indexed tables use kNoVar for
// absent variables.
struct OperatorBlock {
  std::vector<std::vector<std::vector<lp::VarId>>> fhat;  // [block][carrier][k], k into mode_arcs
  std::vector<std::vector<std::vector<lp::VarId>>> f;
  std::vector<std::vector<std::vector<lp::VarId>>> xc;    // [block][carrier][node]
  std::vector<std::vector<lp::VarId>> xmp;                // [block][entry]
  std::vector<std::vector<lp::VarId>> slack;              // [block][entry]
  std::vector<std::vector<lp::VarId>> xp;                 // [phase - 1][node]
  std::vector<std::vector<lp::VarId>> fm;                 // [mode][k]
  std::vector<std::vector<lp::VarId>> g;                  // [mode][k]
  std::vector<RowInfo> rows;
  std::vector<lp::Term> cost;  // operator objective over this copy
};

// Defense seen by an operator copy: either fixed values or master binaries
// aligned with the scenario groups.
struct DefenseSource {
  const DefensePlan* fixed = nullptr;
  const std::vector<std::vector<lp::VarId>>* defend = nullptr;
  const std::vector<std::vector<lp::VarId>>* open = nullptr;
};

// Appends one operator copy to `model`. With `set_costs`, the copy's cost is
// added to the model objective; either way it is returned in `cost`.
OperatorBlock append_operator_block(lp::Model& model, const OperatorLayout& layout,
                                    const DefenseSource& defense, const AttackPlan& attack,
                                    const std::string& prefix, bool set_costs);

struct OperatorModel {
  OperatorLayout layout;
  lp::Model model;
  OperatorBlock block;
  DefensePlan defense;
  AttackPlan attack;
};

OperatorModel build_operator_lp(const NetworkInstance& instance, const ScenarioConfig& scenario,
                                const DefensePlan& defense, const AttackPlan& attack);

struct FlowRecord {
  ModeIndex mode = 0;
  Phase phase = 1;
  std::string carrier;
  ArcIndex arc = 0;
  double bbl_flow = 0.0;      // f-hat, bbl/h
  double vehicle_flow = 0.0;  // f, v/h
  double unit_cost = 0.0;     // $ per (v/h)
};

struct ArcLoad {
  ModeIndex mode = 0;
  ArcIndex arc = 0;
  double flow = 0.0;        // f^m, v/h
  double congestion = 0.0;  // g^m, (v/h)*h
  double time_cost = 0.0;   // w^m
};

struct CarrierSupplyRecord {
  ModeIndex mode = 0;
  Phase phase = 1;
  std::string carrier;
  NodeIndex node = 0;
  double supply = 0.0;
};

struct NodeSupplyRecord {
  ModeIndex mode = 0;
  Phase phase = 1;
  NodeIndex node = 0;
  double capacity = 0.0;
  double supply = 0.0;
  double slack = 0.0;
  double penalty = 0.0;
};

struct PhaseSupplyRecord {
  Phase phase = 1;
  NodeIndex node = 0;
  double supply = 0.0;
};

struct OperatorSolution {
  lp::Status status = lp::Status::Error;
  double objective = 0.0;  // reported by the backend
  std::vector<FlowRecord> flows;  // nonzero flows only
  std::vector<ArcLoad> arcs;
  std::vector<CarrierSupplyRecord> carrier_supplies;
  std::vector<NodeSupplyRecord> node_supplies;
  std::vector<PhaseSupplyRecord> phase_supplies;
  double wall_time = 0.0;

  double flow_cost() const;
  double penalty_cost() const;
  double congestion_cost() const;
  const NodeSupplyRecord* find_supply(ModeIndex m, Phase p, NodeIndex i) const;
};

// Reads an operator copy's values out of a primal vector.
OperatorSolution extract_solution(const OperatorLayout& layout, const OperatorBlock& block,
                                  const std::vector<double>& primal);

// Throws lp::SolverFailure unless the backend reports an optimum.
OperatorSolution solve_operator(const OperatorModel& model, const lp::Solver& solver = lp::Solver());

// Flow cost + penalty cost + congestion cost recomputed from the records.
double operator_objective(const OperatorSolution& solution);

// Convenience: build and solve in one call, returning the optimal value.
double operator_value(const NetworkInstance& instance, const ScenarioConfig& scenario, const DefensePlan& defense,
                      const AttackPlan& attack, const lp::Solver& solver = lp::Solver());

}  // namespace dadnet
