#include "dadnet/validate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace dadnet {

bool ValidationReport::has(const std::string& rule) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.rule == rule; });
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& v : violations) {
    os << v.rule << ": " << v.element;
    if (!v.detail.empty()) os << " (" << v.detail << ")";
    os << "\n";
  }
  return os.str();
}

namespace {

std::string arc_name(const NetworkInstance& inst, const ArcRecord& a) {
  auto id = [&](NodeIndex i) { return i < inst.nodes.size() ? inst.nodes[i].id : "#" + std::to_string(i); };
  const std::string mode = a.mode < inst.modes.size() ? inst.modes[a.mode].id : "#" + std::to_string(a.mode);
  return mode + ":" + id(a.tail) + "->" + id(a.head);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

ValidationReport validate_instance(const NetworkInstance& inst) {
  ValidationReport report;
  auto flag = [&](std::string rule, std::string element, std::string detail = {}) {
    report.violations.push_back({std::move(rule), std::move(element), std::move(detail)});
  };

  if (inst.nodes.empty()) flag("nonempty node set", "instance");
  if (inst.modes.empty()) flag("nonempty mode set", "instance");
  if (inst.phase_count < 1) flag("phase count", "instance", "phase_count must be >= 1");
  if (inst.bpr_pieces < 1) flag("bpr pieces", "instance", "bpr_pieces must be >= 1");

  std::set<std::string> seen;
  for (const auto& m : inst.modes) {
    if (!seen.insert(m.id).second) flag("unique mode ids", m.id);
    if (!(m.standard_vehicle_length > 0.0)) flag("standard vehicle length", m.id, "must be > 0");
    if (m.max_trip_time < 0.0) flag("max trip time", m.id, "must be >= 0");
  }
  seen.clear();
  for (const auto& n : inst.nodes)
    if (!seen.insert(n.id).second) flag("unique node ids", n.id);

  const auto n_modes = inst.modes.size();
  const auto n_phases = static_cast<std::size_t>(std::max(inst.phase_count, 0));

  if (inst.carrier_profiles.size() != n_modes) {
    flag("carrier profiles", "instance", "one profile list per mode required");
  } else {
    for (std::size_t m = 0; m < n_modes; ++m) {
      if (inst.carrier_profiles[m].size() != n_phases) {
        flag("carrier profiles", inst.modes[m].id, "one profile per phase required");
        continue;
      }
      for (std::size_t p = 0; p < n_phases; ++p) {
        const auto& prof = inst.carrier_profiles[m][p];
        const std::string tag = inst.modes[m].id + "/" + std::to_string(p + 1);
        if (!(prof.vehicle_length > 0.0)) flag("carrier vehicle length", tag, "must be > 0");
        if (!(prof.load > 0.0)) flag("carrier load", tag, "must be > 0");
      }
    }
  }

  for (const auto& n : inst.nodes) {
    if (n.phases.size() != n_phases) flag("phase data", n.id, "one entry per phase required");
    if (n.modes.size() != n_modes) {
      flag("mode data", n.id, "one entry per mode required");
      continue;
    }
    for (std::size_t m = 0; m < n_modes; ++m) {
      const auto& md = n.modes[m];
      if (!md.member) continue;
      if (md.phases.size() != n_phases) {
        flag("mode data", n.id, "mode " + inst.modes[m].id + " needs one entry per phase");
        continue;
      }
      for (std::size_t p = 0; p < n_phases; ++p) {
        const auto& s = md.phases[p];
        if (!finite(s.capacity)) flag("finite capacity", n.id);
        if (!(s.penalty >= 0.0)) flag("nonnegative penalty", n.id, inst.modes[m].id + "/" + std::to_string(p + 1));
        if (p < n.phases.size() && sign(s.capacity) * sign(n.phases[p].capacity) < 0)
          flag("sign-consistency", n.id,
               "b^mp and b^p disagree in mode " + inst.modes[m].id + " phase " + std::to_string(p + 1));
      }
    }
    for (std::size_t p = 0; p < n.phases.size(); ++p) {
      if (n.phases[p].pumps < 0) flag("pump count", n.id, "must be >= 0");
      if (n.phases[p].pump_rate < 0.0) flag("pump rate", n.id, "must be >= 0");
    }
  }

  for (const auto& [key, value] : inst.carrier_supply) {
    if (key.node >= inst.nodes.size() || key.mode >= n_modes) {
      flag("carrier supply reference", key.carrier, "unknown node or mode");
      continue;
    }
    const auto& n = inst.nodes[key.node];
    if (sign(value) * sign(n.capacity(key.mode, key.phase)) < 0)
      flag("sign-consistency", n.id, "b^cmp and b^mp disagree for carrier " + key.carrier);
  }

  // Supply of phase p+1 is exactly the demand filled in phase p.
  for (int p = 1; p < inst.phase_count; ++p) {
    for (const auto& n : inst.nodes) {
      if (n.phases.size() != n_phases) break;
      const double now = n.phase_capacity(p);
      const double next = n.phase_capacity(p + 1);
      const bool demand_now = now < 0.0;
      const bool supply_next = next > 0.0;
      if (demand_now != supply_next)
        flag("phase-chain", n.id, "V_{p+1}^+ must equal V_p^- at phase " + std::to_string(p));
      else if (demand_now && std::abs(next + now) > 1e-9 * std::max(1.0, std::abs(now)))
        flag("phase-chain", n.id, "b^{p+1} must equal -b^p at phase " + std::to_string(p));
    }
  }

  for (const auto& a : inst.arcs) {
    const std::string name = arc_name(inst, a);
    if (a.mode >= n_modes || a.tail >= inst.nodes.size() || a.head >= inst.nodes.size()) {
      flag("arc endpoints exist", name);
      continue;
    }
    if (a.tail == a.head) flag("no self loops", name);
    if (!inst.nodes[a.tail].in_mode(a.mode) || !inst.nodes[a.head].in_mode(a.mode))
      flag("arc mode membership", name, "endpoints must belong to the arc's mode");
    if (!(a.length > 0.0)) flag("positive length", name);
    if (!(a.speed > 0.0)) flag("positive speed", name);
    if (a.lanes < 1) flag("lanes", name, "must be >= 1");
    if (a.capacity && !(*a.capacity > 0.0)) flag("positive capacity", name);
    if (!a.capacity && a.lanes >= 1 && a.speed > 0.0 && a.mode < n_modes &&
        !(inst.modes[a.mode].standard_vehicle_length > 0.0))
      flag("positive capacity", name, "cannot derive without standard vehicle length");
    if (a.flow_cost.size() != n_phases) flag("flow cost", name, "one entry per phase required");
    for (double c : a.flow_cost)
      if (!(c >= 0.0)) flag("nonnegative cost", name);
    if (!(a.time_cost >= 0.0)) flag("nonnegative cost", name, "time cost");
  }
  return report;
}

ValidationReport validate_scenario(const NetworkInstance& inst, const ScenarioConfig& scenario) {
  ValidationReport report;
  auto flag = [&](std::string rule, std::string element, std::string detail = {}) {
    report.violations.push_back({std::move(rule), std::move(element), std::move(detail)});
  };
  std::set<std::pair<ModeIndex, Phase>> seen;
  for (const auto& g : scenario.groups) {
    const std::string tag = (g.mode < inst.modes.size() ? inst.modes[g.mode].id : "?") + "/" + std::to_string(g.phase);
    if (g.mode >= inst.modes.size() || g.phase < 1 || g.phase > inst.phase_count) {
      flag("group reference", tag, "unknown mode or phase");
      continue;
    }
    if (!seen.insert({g.mode, g.phase}).second) flag("unique groups", tag);
    if (g.defense_budget < 0 || g.reserve_budget < 0 || g.attack_budget < 0) flag("budgets", tag, "must be >= 0");
    auto check_supply = [&](NodeIndex i, const char* what) {
      if (i >= inst.nodes.size()) {
        flag("group reference", tag, std::string(what) + " node out of range");
        return;
      }
      if (!(inst.nodes[i].capacity(g.mode, g.phase) > 0.0))
        flag(std::string(what) + " subset of supply nodes", inst.nodes[i].id, tag);
    };
    for (NodeIndex i : g.attackable) check_supply(i, "attackable");
    for (NodeIndex i : g.reserve) check_supply(i, "reserve");
    if (!std::is_sorted(g.attackable.begin(), g.attackable.end()) ||
        std::adjacent_find(g.attackable.begin(), g.attackable.end()) != g.attackable.end())
      flag("sorted unique sets", tag, "attackable");
    if (!std::is_sorted(g.reserve.begin(), g.reserve.end()) ||
        std::adjacent_find(g.reserve.begin(), g.reserve.end()) != g.reserve.end())
      flag("sorted unique sets", tag, "reserve");
    for (NodeIndex i : g.reserve)
      if (std::binary_search(g.attackable.begin(), g.attackable.end(), i))
        flag("disjoint attackable and reserve", i < inst.nodes.size() ? inst.nodes[i].id : "?", tag);
  }
  if (!(scenario.gap_tolerance >= 0.0)) flag("gap tolerance", "scenario", "must be >= 0");
  if (scenario.big_m.policy == BigMPolicy::Fixed && !(scenario.big_m.value > 0.0))
    flag("big-M", "scenario", "fixed policy requires a positive value");
  if (!(scenario.big_m.margin >= 0.0)) flag("big-M", "scenario", "margin must be >= 0");
  return report;
}

void require_valid(const NetworkInstance& instance) {
  auto report = validate_instance(instance);
  if (!report.ok()) throw InstanceError("invalid instance:\n" + report.summary());
}

void require_valid(const NetworkInstance& instance, const ScenarioConfig& scenario) {
  require_valid(instance);
  auto report = validate_scenario(instance, scenario);
  if (!report.ok()) throw InstanceError("invalid scenario:\n" + report.summary());
}

}  // namespace dadnet
