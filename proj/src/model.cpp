#include "dadnet/model.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace dadnet {

std::string_view to_string(NodeRole role) {
  switch (role) {
    case NodeRole::Depot: return "depot";
    case NodeRole::Station: return "station";
    case NodeRole::Customer: return "customer";
    case NodeRole::Junction: break;
  }
  return "junction";
}

NodeRole parse_role(std::string_view text) {
  if (text == "depot") return NodeRole::Depot;
  if (text == "station") return NodeRole::Station;
  if (text == "customer") return NodeRole::Customer;
  if (text == "junction") return NodeRole::Junction;
  throw InstanceError("unknown node role '" + std::string(text) + "'");
}

double NodeRecord::capacity(ModeIndex m, Phase p) const {
  if (!in_mode(m)) return 0.0;
  const auto& ph = modes[m].phases;
  return p >= 1 && static_cast<std::size_t>(p) <= ph.size() ? ph[p - 1].capacity : 0.0;
}

double NodeRecord::penalty(ModeIndex m, Phase p) const {
  if (!in_mode(m)) return 0.0;
  const auto& ph = modes[m].phases;
  return p >= 1 && static_cast<std::size_t>(p) <= ph.size() ? ph[p - 1].penalty : 0.0;
}

double NodeRecord::phase_capacity(Phase p) const {
  return p >= 1 && static_cast<std::size_t>(p) <= phases.size() ? phases[p - 1].capacity : 0.0;
}

std::optional<NodeIndex> NetworkInstance::find_node(std::string_view id) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), id,
                             [](const NodeRecord& n, std::string_view key) { return n.id < key; });
  if (it != nodes.end() && it->id == id) return static_cast<NodeIndex>(it - nodes.begin());
  // Not canonical yet: fall back to a scan.
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].id == id) return i;
  return std::nullopt;
}

NodeIndex NetworkInstance::node_index(std::string_view id) const {
  if (auto i = find_node(id)) return *i;
  throw InstanceError("unknown node '" + std::string(id) + "'");
}

std::optional<ModeIndex> NetworkInstance::find_mode(std::string_view id) const {
  for (std::size_t m = 0; m < modes.size(); ++m)
    if (modes[m].id == id) return m;
  return std::nullopt;
}

ModeIndex NetworkInstance::mode_index(std::string_view id) const {
  if (auto m = find_mode(id)) return *m;
  throw InstanceError("unknown mode '" + std::string(id) + "'");
}

void NetworkInstance::canonicalize() {
  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return nodes[a].id < nodes[b].id; });
  std::vector<NodeIndex> remap(nodes.size());
  std::vector<NodeRecord> sorted;
  sorted.reserve(nodes.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    remap[order[k]] = k;
    sorted.push_back(std::move(nodes[order[k]]));
  }
  nodes = std::move(sorted);
  for (auto& a : arcs) {
    if (a.tail < remap.size()) a.tail = remap[a.tail];
    if (a.head < remap.size()) a.head = remap[a.head];
  }
  std::stable_sort(arcs.begin(), arcs.end(), [&](const ArcRecord& x, const ArcRecord& y) {
    if (x.mode != y.mode) return x.mode < y.mode;
    if (x.tail != y.tail) return x.tail < y.tail;
    return x.head < y.head;
  });
  std::map<CarrierSupplyKey, double> overrides;
  for (auto& [key, value] : carrier_supply) {
    CarrierSupplyKey k = key;
    if (k.node < remap.size()) k.node = remap[k.node];
    overrides.emplace(std::move(k), value);
  }
  carrier_supply = std::move(overrides);
}

double NetworkInstance::arc_capacity(ArcIndex a) const {
  const auto& arc = arcs.at(a);
  if (arc.capacity) return *arc.capacity;
  const double std_len = modes.at(arc.mode).standard_vehicle_length;
  if (std_len <= 0.0) throw InstanceError("mode '" + modes.at(arc.mode).id + "' has zero standard vehicle length");
  return arc.lanes * arc.speed / std_len;
}

NodeRecord make_node(std::string id, NodeRole role, std::size_t modes, const std::vector<double>& capacity,
                     const std::vector<double>& penalty) {
  NodeRecord n;
  n.id = std::move(id);
  n.role = role;
  for (double b : capacity) n.phases.push_back(PhaseSupply{b, 0, 0.0});
  n.modes.resize(modes);
  for (auto& md : n.modes) {
    md.member = true;
    for (std::size_t p = 0; p < capacity.size(); ++p)
      md.phases.push_back(ModePhaseSupply{capacity[p], p < penalty.size() ? penalty[p] : 0.0});
  }
  return n;
}

void derive_constants(NetworkInstance& instance) {
  if (instance.bpr_pieces < 1) throw InstanceError("bpr_pieces must be >= 1");
  for (std::size_t m = 0; m < instance.modes.size(); ++m) {
    const double std_len = instance.modes[m].standard_vehicle_length;
    if (m >= instance.carrier_profiles.size()) continue;
    for (std::size_t p = 0; p < instance.carrier_profiles[m].size(); ++p) {
      auto& prof = instance.carrier_profiles[m][p];
      if (std_len == 0.0)
        throw InstanceError("mode '" + instance.modes[m].id + "': standard vehicle length is zero");
      if (prof.load == 0.0)
        throw InstanceError("mode '" + instance.modes[m].id + "' phase " + std::to_string(p + 1) +
                            ": load per vehicle is zero");
      prof.conversion = prof.vehicle_length / (std_len * prof.load);
    }
  }
  for (std::size_t a = 0; a < instance.arcs.size(); ++a) {
    auto& arc = instance.arcs[a];
    if (!arc.capacity) {
      const double std_len = instance.modes.at(arc.mode).standard_vehicle_length;
      if (std_len == 0.0)
        throw InstanceError("mode '" + instance.modes[arc.mode].id + "': standard vehicle length is zero");
      arc.capacity = arc.lanes * arc.speed / std_len;
    }
    arc.bpr_width = 2.0 * *arc.capacity / instance.bpr_pieces;
  }
}

namespace {

std::vector<NodeIndex> filter_nodes(const NetworkInstance& inst, auto&& pred) {
  std::vector<NodeIndex> out;
  for (NodeIndex i = 0; i < inst.nodes.size(); ++i)
    if (pred(inst.nodes[i])) out.push_back(i);
  return out;
}

}  // namespace

std::vector<NodeIndex> supply_nodes(const NetworkInstance& inst, ModeIndex m, Phase p) {
  return filter_nodes(inst, [&](const NodeRecord& n) { return n.in_mode(m) && n.capacity(m, p) > 0.0; });
}

std::vector<NodeIndex> demand_nodes(const NetworkInstance& inst, ModeIndex m, Phase p) {
  return filter_nodes(inst, [&](const NodeRecord& n) { return n.in_mode(m) && n.capacity(m, p) < 0.0; });
}

std::vector<NodeIndex> phase_supply_nodes(const NetworkInstance& inst, Phase p) {
  return filter_nodes(inst, [&](const NodeRecord& n) { return n.phase_capacity(p) > 0.0; });
}

std::vector<NodeIndex> phase_demand_nodes(const NetworkInstance& inst, Phase p) {
  return filter_nodes(inst, [&](const NodeRecord& n) { return n.phase_capacity(p) < 0.0; });
}

std::vector<ArcIndex> mode_arcs(const NetworkInstance& inst, ModeIndex m) {
  std::vector<ArcIndex> out;
  for (ArcIndex a = 0; a < inst.arcs.size(); ++a)
    if (inst.arcs[a].mode == m) out.push_back(a);
  return out;
}

std::vector<Carrier> enumerate_carriers(const NetworkInstance& inst, ModeIndex m, Phase p, bool prune) {
  if (p == 1) return {Carrier{}};
  const auto demand = demand_nodes(inst, m, p);
  const auto supply = supply_nodes(inst, m, p);
  std::vector<std::vector<char>> reach;
  if (prune) {
    std::vector<std::vector<NodeIndex>> out(inst.nodes.size());
    for (const auto& a : inst.arcs)
      if (a.mode == m) out[a.tail].push_back(a.head);
    reach.resize(supply.size());
    for (std::size_t k = 0; k < supply.size(); ++k) {
      auto& seen = reach[k];
      seen.assign(inst.nodes.size(), 0);
      std::deque<NodeIndex> queue{supply[k]};
      seen[supply[k]] = 1;
      while (!queue.empty()) {
        const NodeIndex u = queue.front();
        queue.pop_front();
        for (NodeIndex v : out[u])
          if (!seen[v]) {
            seen[v] = 1;
            queue.push_back(v);
          }
      }
    }
  }
  std::vector<Carrier> carriers;
  carriers.reserve(demand.size() * supply.size());
  for (NodeIndex s : demand)
    for (std::size_t k = 0; k < supply.size(); ++k) {
      if (prune && !reach[k][s]) continue;
      carriers.push_back(Carrier{s, supply[k]});
    }
  return carriers;
}

std::string carrier_label(const NetworkInstance& inst, ModeIndex m, const Carrier& c) {
  if (!c.is_pair()) return inst.modes.at(m).id;
  return inst.nodes.at(*c.demand).id + ":" + inst.nodes.at(*c.supply).id;
}

double carrier_capacity(const NetworkInstance& inst, ModeIndex m, Phase p, const Carrier& c, NodeIndex i) {
  if (!inst.carrier_supply.empty()) {
    auto it = inst.carrier_supply.find(CarrierSupplyKey{m, p, carrier_label(inst, m, c), i});
    if (it != inst.carrier_supply.end()) return it->second;
  }
  if (c.is_pair() && i != *c.demand && i != *c.supply) return 0.0;
  return inst.nodes.at(i).capacity(m, p);
}

const InterdictionGroup* ScenarioConfig::find_group(ModeIndex m, Phase p) const {
  for (const auto& g : groups)
    if (g.mode == m && g.phase == p) return &g;
  return nullptr;
}

DefensePlan empty_defense(const ScenarioConfig& scenario) {
  DefensePlan plan;
  for (const auto& g : scenario.groups) {
    plan.defend.emplace_back(g.attackable.size(), 0);
    plan.open.emplace_back(g.reserve.size(), 0);
  }
  return plan;
}

AttackPlan empty_attack(const ScenarioConfig& scenario) {
  AttackPlan plan;
  for (const auto& g : scenario.groups) plan.attack.emplace_back(g.attackable.size(), 0);
  return plan;
}

int count(const Selection& s) {
  return static_cast<int>(std::count_if(s.begin(), s.end(), [](std::uint8_t v) { return v != 0; }));
}

bool within_budget(const DefensePlan& plan, const ScenarioConfig& scenario) {
  if (plan.defend.size() != scenario.groups.size() || plan.open.size() != scenario.groups.size()) return false;
  for (std::size_t g = 0; g < scenario.groups.size(); ++g) {
    const auto& grp = scenario.groups[g];
    if (plan.defend[g].size() != grp.attackable.size() || plan.open[g].size() != grp.reserve.size())
      return false;
    if (count(plan.defend[g]) > grp.defense_budget || count(plan.open[g]) > grp.reserve_budget) return false;
  }
  return true;
}

bool within_budget(const AttackPlan& plan, const ScenarioConfig& scenario) {
  if (plan.attack.size() != scenario.groups.size()) return false;
  for (std::size_t g = 0; g < scenario.groups.size(); ++g) {
    if (plan.attack[g].size() != scenario.groups[g].attackable.size()) return false;
    if (count(plan.attack[g]) > scenario.groups[g].attack_budget) return false;
  }
  return true;
}

AttackPlan effective_attack(const AttackPlan& attack, const DefensePlan& defense) {
  AttackPlan out = attack;
  for (std::size_t g = 0; g < out.attack.size(); ++g)
    for (std::size_t k = 0; k < out.attack[g].size(); ++k)
      if (g < defense.defend.size() && k < defense.defend[g].size() && defense.defend[g][k])
        out.attack[g][k] = 0;
  return out;
}

SelectionOverlap selection_overlap(const ScenarioConfig& scenario, const DefensePlan& defense,
                                   const AttackPlan& attack) {
  std::set<NodeIndex> d, o, a;
  auto collect = [](std::set<NodeIndex>& out, const std::vector<NodeIndex>& nodes, const std::vector<Selection>& sel,
                    std::size_t g) {
    if (g >= sel.size()) return;
    for (std::size_t k = 0; k < sel[g].size() && k < nodes.size(); ++k)
      if (sel[g][k]) out.insert(nodes[k]);
  };
  for (std::size_t g = 0; g < scenario.groups.size(); ++g) {
    collect(d, scenario.groups[g].attackable, defense.defend, g);
    collect(o, scenario.groups[g].reserve, defense.open, g);
    collect(a, scenario.groups[g].attackable, attack.attack, g);
  }
  auto meets = [](const std::set<NodeIndex>& x, const std::set<NodeIndex>& y) {
    return std::any_of(x.begin(), x.end(), [&](NodeIndex i) { return y.count(i) > 0; });
  };
  return SelectionOverlap{meets(d, o), meets(d, a), meets(o, a)};
}

namespace {

void list_selected(std::ostringstream& os, const NetworkInstance& inst, const std::vector<NodeIndex>& nodes,
                   const Selection& sel, bool& first) {
  for (std::size_t k = 0; k < sel.size(); ++k)
    if (sel[k]) {
      os << (first ? "" : ",") << inst.nodes.at(nodes[k]).id;
      first = false;
    }
}

std::string group_tag(const NetworkInstance& inst, const InterdictionGroup& g) {
  return inst.modes.at(g.mode).id + "/" + std::to_string(g.phase);
}

}  // namespace

std::string describe(const NetworkInstance& inst, const ScenarioConfig& scenario, const DefensePlan& plan) {
  std::ostringstream os;
  for (std::size_t g = 0; g < scenario.groups.size(); ++g) {
    const auto& grp = scenario.groups[g];
    os << (g ? " " : "") << group_tag(inst, grp) << " defend{";
    bool first = true;
    if (g < plan.defend.size()) list_selected(os, inst, grp.attackable, plan.defend[g], first);
    os << "} open{";
    first = true;
    if (g < plan.open.size()) list_selected(os, inst, grp.reserve, plan.open[g], first);
    os << "}";
  }
  return os.str();
}

std::string describe(const NetworkInstance& inst, const ScenarioConfig& scenario, const AttackPlan& plan) {
  std::ostringstream os;
  for (std::size_t g = 0; g < scenario.groups.size(); ++g) {
    const auto& grp = scenario.groups[g];
    os << (g ? " " : "") << group_tag(inst, grp) << " attack{";
    bool first = true;
    if (g < plan.attack.size()) list_selected(os, inst, grp.attackable, plan.attack[g], first);
    os << "}";
  }
  return os.str();
}

}  // namespace dadnet
