#pragma once

// Instance data, index sets, carriers and plan types for the fuel/road
// defender-attacker-operator model. Units follow the instance file: supply
// rates in bbl/h, vehicle flows in v/h, lengths in mi, speeds in mi/h, costs
// in $.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace dadnet {

class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using NodeIndex = std::size_t;
using ArcIndex = std::size_t;
using ModeIndex = std::size_t;
using Phase = int;  // 1-based, 1..phase_count

struct Mode {
  std::string id;
  double standard_vehicle_length = 0.0;  // mi per standard vehicle
  double max_trip_time = 0.0;            // h; only used to seed phase 2/3 flow costs
};

// Vehicle class shared by every carrier of one (mode, phase).
struct CarrierProfile {
  double vehicle_length = 0.0;  // mi per vehicle
  double load = 0.0;            // bbl per vehicle
  double conversion = 0.0;      // v per bbl, filled by derive_constants
};

struct ModePhaseSupply {
  double capacity = 0.0;  // signed bbl/h: > 0 supply, < 0 demand
  double penalty = 0.0;   // $ per (bbl/h) of slack
};

struct PhaseSupply {
  double capacity = 0.0;  // signed bbl/h aggregated over modes and carriers
  int pumps = 0;
  double pump_rate = 0.0;  // bbl/h per pump
};

struct NodeModeData {
  bool member = false;
  std::vector<ModePhaseSupply> phases;  // indexed by phase - 1
};

enum class NodeRole { Junction, Depot, Station, Customer };

std::string_view to_string(NodeRole role);
NodeRole parse_role(std::string_view text);

struct Coordinates {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Coordinates&) const = default;
};

struct NodeRecord {
  std::string id;
  NodeRole role = NodeRole::Junction;
  std::vector<PhaseSupply> phases;  // indexed by phase - 1
  std::vector<NodeModeData> modes;  // indexed by mode
  std::optional<Coordinates> coordinates;

  bool in_mode(ModeIndex m) const { return m < modes.size() && modes[m].member; }
  double capacity(ModeIndex m, Phase p) const;
  double penalty(ModeIndex m, Phase p) const;
  double phase_capacity(Phase p) const;
};

struct ArcRecord {
  ModeIndex mode = 0;
  NodeIndex tail = 0;
  NodeIndex head = 0;
  double length = 0.0;  // mi
  double speed = 0.0;   // mi/h
  int lanes = 1;
  std::optional<double> capacity;  // v/h; lanes*speed/std length when absent
  std::vector<double> flow_cost;   // $ per (v/h), indexed by phase - 1
  double time_cost = 0.0;          // $ per ((v/h)*h) of congestion aggregate
  double bpr_width = 0.0;          // v/h, filled by derive_constants
};

// Carrier of one (mode, phase). Phase 1 has a single vehicle class; later
// phases route origin-destination pairs (demand node, supply node).
struct Carrier {
  std::optional<NodeIndex> demand;
  std::optional<NodeIndex> supply;

  bool is_pair() const { return demand.has_value(); }
  bool operator==(const Carrier&) const = default;
};

// Explicit per-carrier supply, overriding the default rule.
struct CarrierSupplyKey {
  ModeIndex mode = 0;
  Phase phase = 1;
  std::string carrier;  // mode id, or "<demand>:<supply>"
  NodeIndex node = 0;
  auto operator<=>(const CarrierSupplyKey&) const = default;
};

struct NetworkInstance {
  int phase_count = 3;
  int bpr_pieces = 4;
  std::vector<Mode> modes;
  std::vector<std::vector<CarrierProfile>> carrier_profiles;  // [mode][phase - 1]
  std::vector<NodeRecord> nodes;
  std::vector<ArcRecord> arcs;
  std::map<CarrierSupplyKey, double> carrier_supply;

  std::optional<NodeIndex> find_node(std::string_view id) const;
  NodeIndex node_index(std::string_view id) const;
  std::optional<ModeIndex> find_mode(std::string_view id) const;
  ModeIndex mode_index(std::string_view id) const;

  // Sorts nodes by id and arcs by (mode, tail id, head id), remapping arc
  // endpoints and override keys. Model builds depend on this ordering.
  void canonicalize();

  double arc_capacity(ArcIndex a) const;
  const CarrierProfile& profile(ModeIndex m, Phase p) const { return carrier_profiles.at(m).at(p - 1); }
};

// Node belonging to the first `modes` modes with the same signed capacity and
// penalty per phase in each; phase aggregates equal the per-mode values.
NodeRecord make_node(std::string id, NodeRole role, std::size_t modes, const std::vector<double>& capacity,
                     const std::vector<double>& penalty);

// Fills conversion factors, missing arc capacities and BPR widths. Throws
// InstanceError when a divisor is zero.
void derive_constants(NetworkInstance& instance);

// V_mp^+ and V_mp^-: member nodes with positive / negative b^{mp}.
std::vector<NodeIndex> supply_nodes(const NetworkInstance& inst, ModeIndex m, Phase p);
std::vector<NodeIndex> demand_nodes(const NetworkInstance& inst, ModeIndex m, Phase p);
// V_p^+ and V_p^- over the phase aggregate b^p.
std::vector<NodeIndex> phase_supply_nodes(const NetworkInstance& inst, Phase p);
std::vector<NodeIndex> phase_demand_nodes(const NetworkInstance& inst, Phase p);

std::vector<ArcIndex> mode_arcs(const NetworkInstance& inst, ModeIndex m);

// C_mp. With prune, pairs whose demand node is unreachable from their supply
// node in the mode graph are dropped.
std::vector<Carrier> enumerate_carriers(const NetworkInstance& inst, ModeIndex m, Phase p,
                                        bool prune = false);

std::string carrier_label(const NetworkInstance& inst, ModeIndex m, const Carrier& c);

// b_i^{cmp}: explicit override if present, otherwise b^{m1} for the phase-1
// vehicle class and b^{mp} restricted to the pair's two endpoints.
double carrier_capacity(const NetworkInstance& inst, ModeIndex m, Phase p, const Carrier& c,
                        NodeIndex i);

inline int sign(double v) { return (v > 0.0) - (v < 0.0); }

// ---------------------------------------------------------------------------
// Scenario and plans

struct InterdictionGroup {
  ModeIndex mode = 0;
  Phase phase = 1;
  std::vector<NodeIndex> attackable;  // S_mp, sorted
  std::vector<NodeIndex> reserve;     // R_mp, sorted
  int defense_budget = 0;
  int reserve_budget = 0;
  int attack_budget = 0;
};

enum class BigMPolicy {
  Derived,  // bound on any supply shadow price from phase penalties
  Penalty,  // p_i^{mp} * (1 + margin)
  Fixed,    // user value
};

struct BigMConfig {
  BigMPolicy policy = BigMPolicy::Derived;
  double margin = 0.05;
  double value = 0.0;
};

struct ScenarioConfig {
  std::string name = "scenario";
  std::vector<InterdictionGroup> groups;
  BigMConfig big_m;
  double gap_tolerance = 1e-6;
  double time_limit = 3600.0;  // s, whole CCG run
  int max_iterations = 500;
  bool pump_limits = false;
  bool prune_carriers = true;

  const InterdictionGroup* find_group(ModeIndex m, Phase p) const;
};

using Selection = std::vector<std::uint8_t>;

struct DefensePlan {
  std::vector<Selection> defend;  // per group, aligned with attackable
  std::vector<Selection> open;    // per group, aligned with reserve
  bool operator==(const DefensePlan&) const = default;
};

struct AttackPlan {
  std::vector<Selection> attack;  // per group, aligned with attackable
  bool operator==(const AttackPlan&) const = default;
};

DefensePlan empty_defense(const ScenarioConfig& scenario);
AttackPlan empty_attack(const ScenarioConfig& scenario);
bool within_budget(const DefensePlan& plan, const ScenarioConfig& scenario);
bool within_budget(const AttackPlan& plan, const ScenarioConfig& scenario);
int count(const Selection& s);

// Attack with components on defended nodes removed.
AttackPlan effective_attack(const AttackPlan& attack, const DefensePlan& defense);

// Whether any node is selected by two of: defense, opened reserve, attack.
struct SelectionOverlap {
  bool defense_reserve = false;
  bool defense_attack = false;
  bool reserve_attack = false;
  bool disjoint() const { return !defense_reserve && !defense_attack && !reserve_attack; }
};

SelectionOverlap selection_overlap(const ScenarioConfig& scenario, const DefensePlan& defense,
                                   const AttackPlan& attack);

std::string describe(const NetworkInstance& inst, const ScenarioConfig& scenario,
                     const DefensePlan& plan);
std::string describe(const NetworkInstance& inst, const ScenarioConfig& scenario,
                     const AttackPlan& plan);

}  // namespace dadnet
