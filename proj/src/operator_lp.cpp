#include "dadnet/operator_lp.hpp"

#include <algorithm>
#include <cmath>

namespace dadnet {

std::string_view dual_symbol(RowFamily family) {
  switch (family) {
    case RowFamily::Conservation: return "phi";
    case RowFamily::Coupling: return "kappa_c";
    case RowFamily::CarrierSupply: return "beta_c";
    case RowFamily::CarrierCapacity: return "mu_c";
    case RowFamily::CarrierAggregation: return "sigma_mp";
    case RowFamily::Interdiction: return "delta";
    case RowFamily::Reserve: return "omega";
    case RowFamily::Balance: return "beta_mp";
    case RowFamily::ModeAggregation: return "sigma_p";
    case RowFamily::PhaseCap: return "beta_p";
    case RowFamily::ArcAggregation: return "kappa_m";
    case RowFamily::ArcCapacity: return "mu_m";
    case RowFamily::Congestion: return "tau";
    case RowFamily::Monotonicity: return "upsilon";
    case RowFamily::Linkage: return "theta";
    case RowFamily::Pump: return "pi";
  }
  return "?";
}

OperatorLayout make_layout(const NetworkInstance& inst, const ScenarioConfig& scenario) {
  OperatorLayout layout;
  layout.instance = &inst;
  layout.phase_count = inst.phase_count;
  layout.pump_limits = scenario.pump_limits;
  layout.pieces = bpr::build_all(inst);
  const int P = inst.phase_count;
  const std::size_t V = inst.nodes.size();
  layout.mode_arcs.resize(inst.modes.size());
  for (ModeIndex m = 0; m < inst.modes.size(); ++m) layout.mode_arcs[m] = mode_arcs(inst, m);

  std::vector<std::vector<char>> has_mode_entry(P, std::vector<char>(V, 0));
  for (ModeIndex m = 0; m < inst.modes.size(); ++m) {
    for (Phase p = 1; p <= P; ++p) {
      ModePhaseLayout block;
      block.mode = m;
      block.phase = p;
      for (NodeIndex i = 0; i < V; ++i)
        if (inst.nodes[i].in_mode(m)) block.members.push_back(i);
      block.carriers = enumerate_carriers(inst, m, p, scenario.prune_carriers);
      const double gamma = inst.profile(m, p).conversion;
      std::vector<char> carrier_touch(V, 0);
      for (const auto& c : block.carriers) {
        block.carrier_labels.push_back(carrier_label(inst, m, c));
        block.conversion.push_back(gamma);
        auto& supply = block.carrier_supply.emplace_back();
        for (NodeIndex i : block.members) {
          const double b = carrier_capacity(inst, m, p, c, i);
          if (b != 0.0) {
            supply.emplace_back(i, b);
            carrier_touch[i] = 1;
          }
        }
      }
      const InterdictionGroup* group = scenario.find_group(m, p);
      if (group) block.group = static_cast<int>(group - scenario.groups.data());
      for (NodeIndex i : block.members) {
        const double b = inst.nodes[i].capacity(m, p);
        if (b == 0.0 && !carrier_touch[i]) continue;
        NodeEntry e;
        e.node = i;
        e.capacity = b;
        e.penalty = inst.nodes[i].penalty(m, p);
        if (group) {
          auto find = [&](const std::vector<NodeIndex>& set) -> int {
            auto it = std::lower_bound(set.begin(), set.end(), i);
            return it != set.end() && *it == i ? static_cast<int>(it - set.begin()) : -1;
          };
          if (int k = find(group->attackable); k >= 0) {
            e.role = SupplyRole::Attackable;
            e.pos = k;
          } else if (int r = find(group->reserve); r >= 0) {
            e.role = SupplyRole::Reserve;
            e.pos = r;
          }
        }
        block.nodes.push_back(e);
        has_mode_entry[p - 1][i] = 1;
      }
      layout.blocks.push_back(std::move(block));
    }
  }

  layout.phase_nodes.resize(P);
  for (Phase p = 1; p <= P; ++p) {
    for (NodeIndex i = 0; i < V; ++i) {
      const auto& node = inst.nodes[i];
      const double b = node.phase_capacity(p);
      if (b == 0.0 && !has_mode_entry[p - 1][i]) continue;
      PhaseNode pn{i, b};
      if (p - 1 < static_cast<int>(node.phases.size())) {
        const auto& ph = node.phases[p - 1];
        if (ph.pumps > 0 && ph.pump_rate > 0.0) pn.pump_limit = ph.pumps * ph.pump_rate;
      }
      layout.phase_nodes[p - 1].push_back(pn);
    }
  }
  return layout;
}

namespace {

class RowEmitter {
 public:
  RowEmitter(lp::Model& model, OperatorBlock& block) : model_(model), block_(block) {}

  void emit(RowInfo info, std::string name, std::vector<lp::Term> terms, lp::RowSense sense, double rhs) {
    info.row = model_.add_row(std::move(name), std::move(terms), sense, rhs);
    block_.rows.push_back(info);
  }

 private:
  lp::Model& model_;
  OperatorBlock& block_;
};

}  // namespace

OperatorBlock append_operator_block(lp::Model& model, const OperatorLayout& layout, const DefenseSource& defense,
                                    const AttackPlan& attack, const std::string& prefix, bool set_costs) {
  using lp::RowSense;
  const NetworkInstance& inst = *layout.instance;
  const int P = layout.phase_count;
  const std::size_t V = inst.nodes.size();
  OperatorBlock ob;
  RowEmitter rows(model, ob);

  auto cost = [&](lp::VarId v, double c) {
    if (c == 0.0) return;
    ob.cost.push_back({v, c});
    if (set_costs) model.add_cost(v, c);
  };
  auto nid = [&](NodeIndex i) -> const std::string& { return inst.nodes[i].id; };
  auto arc_tag = [&](ArcIndex a) { return nid(inst.arcs[a].tail) + ">" + nid(inst.arcs[a].head); };

  const std::size_t B = layout.blocks.size();
  ob.fhat.resize(B);
  ob.f.resize(B);
  ob.xc.resize(B);
  ob.xmp.resize(B);
  ob.slack.resize(B);

  // Mode aggregates first so carrier blocks can reference them.
  ob.fm.resize(inst.modes.size());
  ob.g.resize(inst.modes.size());
  for (ModeIndex m = 0; m < inst.modes.size(); ++m) {
    for (ArcIndex a : layout.mode_arcs[m]) {
      const std::string tag = inst.modes[m].id + "," + arc_tag(a);
      ob.fm[m].push_back(model.add_nonneg(prefix + "fm[" + tag + "]"));
      const lp::VarId g = model.add_nonneg(prefix + "g[" + tag + "]");
      ob.g[m].push_back(g);
      cost(g, inst.arcs[a].time_cost);
    }
  }

  for (std::size_t bi = 0; bi < B; ++bi) {
    const auto& blk = layout.blocks[bi];
    const ModeIndex m = blk.mode;
    const Phase p = blk.phase;
    const auto& arcs = layout.mode_arcs[m];
    const std::string mp = inst.modes[m].id + ",p" + std::to_string(p);
    const std::size_t C = blk.carriers.size();
    ob.fhat[bi].resize(C);
    ob.f[bi].resize(C);
    ob.xc[bi].assign(C, std::vector<lp::VarId>(V, kNoVar));

    for (std::size_t c = 0; c < C; ++c) {
      const std::string cmp = blk.carrier_labels[c] + "," + mp;
      for (ArcIndex a : arcs) {
        const std::string tag = cmp + "," + arc_tag(a);
        ob.fhat[bi][c].push_back(model.add_nonneg(prefix + "fh[" + tag + "]"));
        const lp::VarId f = model.add_nonneg(prefix + "f[" + tag + "]");
        ob.f[bi][c].push_back(f);
        const auto& fc = inst.arcs[a].flow_cost;
        cost(f, p - 1 < static_cast<int>(fc.size()) ? fc[p - 1] : 0.0);
      }
      for (const auto& [i, b] : blk.carrier_supply[c])
        ob.xc[bi][c][i] = model.add_nonneg(prefix + "xc[" + cmp + "," + nid(i) + "]");
    }

    // Conservation: out - in - sgn(b) x = 0 at every member node.
    std::vector<std::vector<std::size_t>> out_k(V), in_k(V);
    for (std::size_t k = 0; k < arcs.size(); ++k) {
      out_k[inst.arcs[arcs[k]].tail].push_back(k);
      in_k[inst.arcs[arcs[k]].head].push_back(k);
    }
    for (std::size_t c = 0; c < C; ++c) {
      const std::string cmp = blk.carrier_labels[c] + "," + mp;
      std::vector<double> bvec(V, 0.0);
      for (const auto& [i, b] : blk.carrier_supply[c]) bvec[i] = b;
      for (NodeIndex i : blk.members) {
        std::vector<lp::Term> t;
        for (auto k : out_k[i]) t.push_back({ob.fhat[bi][c][k], 1.0});
        for (auto k : in_k[i]) t.push_back({ob.fhat[bi][c][k], -1.0});
        if (ob.xc[bi][c][i] != kNoVar) t.push_back({ob.xc[bi][c][i], -static_cast<double>(sign(bvec[i]))});
        if (t.empty()) continue;
        rows.emit({0, RowFamily::Conservation, int(bi), int(c), i}, prefix + "phi[" + cmp + "," + nid(i) + "]",
                  std::move(t), RowSense::Equal, 0.0);
      }
      for (std::size_t k = 0; k < arcs.size(); ++k) {
        const ArcIndex a = arcs[k];
        const std::string tag = cmp + "," + arc_tag(a);
        rows.emit({0, RowFamily::Coupling, int(bi), int(c), a}, prefix + "kap[" + tag + "]",
                  {{ob.f[bi][c][k], 1.0}, {ob.fhat[bi][c][k], -blk.conversion[c]}}, RowSense::Equal, 0.0);
        rows.emit({0, RowFamily::CarrierCapacity, int(bi), int(c), a}, prefix + "mu[" + tag + "]",
                  {{ob.f[bi][c][k], -1.0}}, RowSense::GreaterEqual, -2.0 * inst.arc_capacity(a));
      }
      for (const auto& [i, b] : blk.carrier_supply[c])
        rows.emit({0, RowFamily::CarrierSupply, int(bi), int(c), i}, prefix + "bc[" + cmp + "," + nid(i) + "]",
                  {{ob.xc[bi][c][i], -1.0}}, RowSense::GreaterEqual, -std::abs(b));
    }

    // Node level.
    for (std::size_t e = 0; e < blk.nodes.size(); ++e) {
      const auto& entry = blk.nodes[e];
      const NodeIndex i = entry.node;
      const std::string tag = mp + "," + nid(i);
      const double cap = std::abs(entry.capacity);
      const lp::VarId x = model.add_nonneg(prefix + "x[" + tag + "]");
      const lp::VarId s = model.add_nonneg(prefix + "s[" + tag + "]");
      ob.xmp[bi].push_back(x);
      ob.slack[bi].push_back(s);
      cost(s, entry.penalty);

      std::vector<lp::Term> agg{{x, 1.0}};
      for (std::size_t c = 0; c < C; ++c)
        if (ob.xc[bi][c][i] != kNoVar) agg.push_back({ob.xc[bi][c][i], -1.0});
      rows.emit({0, RowFamily::CarrierAggregation, int(bi), -1, i, -1, int(e)}, prefix + "sig[" + tag + "]",
                std::move(agg), RowSense::Equal, 0.0);

      const int g = blk.group;
      if (entry.role == SupplyRole::Attackable) {
        const bool hit = attack.attack.at(g).at(entry.pos) != 0;
        std::vector<lp::Term> t{{x, -1.0}};
        double rhs = -cap;
        if (hit) {
          if (defense.fixed) {
            rhs = defense.fixed->defend.at(g).at(entry.pos) ? -cap : 0.0;
          } else {
            t.push_back({defense.defend->at(g).at(entry.pos), cap});
            rhs = 0.0;
          }
        }
        rows.emit({0, RowFamily::Interdiction, int(bi), -1, i, -1, int(e)}, prefix + "del[" + tag + "]",
                  std::move(t), RowSense::GreaterEqual, rhs);
      }
      if (entry.role == SupplyRole::Reserve) {
        std::vector<lp::Term> t{{x, 1.0}, {s, 1.0}};
        double rhs = 0.0;
        if (defense.fixed)
          rhs = defense.fixed->open.at(g).at(entry.pos) ? cap : 0.0;
        else
          t.push_back({defense.open->at(g).at(entry.pos), -cap});
        rows.emit({0, RowFamily::Reserve, int(bi), -1, i, -1, int(e)}, prefix + "om[" + tag + "]", std::move(t),
                  RowSense::Equal, rhs);
      } else {
        rows.emit({0, RowFamily::Balance, int(bi), -1, i, -1, int(e)}, prefix + "bmp[" + tag + "]",
                  {{x, 1.0}, {s, 1.0}}, RowSense::Equal, cap);
      }
    }
  }

  // Phase level.
  ob.xp.assign(P, std::vector<lp::VarId>(V, kNoVar));
  for (Phase p = 1; p <= P; ++p) {
    for (const auto& pn : layout.phase_nodes[p - 1]) {
      const NodeIndex i = pn.node;
      const std::string tag = "p" + std::to_string(p) + "," + nid(i);
      const lp::VarId x = model.add_nonneg(prefix + "xp[" + tag + "]");
      ob.xp[p - 1][i] = x;
      std::vector<lp::Term> agg{{x, 1.0}};
      for (ModeIndex m = 0; m < inst.modes.size(); ++m) {
        const std::size_t bi = m * P + (p - 1);
        const auto& nodes = layout.blocks[bi].nodes;
        for (std::size_t e = 0; e < nodes.size(); ++e)
          if (nodes[e].node == i) agg.push_back({ob.xmp[bi][e], -1.0});
      }
      rows.emit({0, RowFamily::ModeAggregation, -1, -1, i, p}, prefix + "sigp[" + tag + "]", std::move(agg),
                RowSense::Equal, 0.0);
      rows.emit({0, RowFamily::PhaseCap, -1, -1, i, p}, prefix + "bp[" + tag + "]", {{x, -1.0}},
                RowSense::GreaterEqual, -std::abs(pn.capacity));
      if (layout.pump_limits && std::isfinite(pn.pump_limit))
        rows.emit({0, RowFamily::Pump, -1, -1, i, p}, prefix + "pump[" + tag + "]", {{x, -1.0}},
                  RowSense::GreaterEqual, -pn.pump_limit);
    }
  }

  // Arc aggregation, capacity and congestion epigraph.
  for (ModeIndex m = 0; m < inst.modes.size(); ++m) {
    const auto& arcs = layout.mode_arcs[m];
    for (std::size_t k = 0; k < arcs.size(); ++k) {
      const ArcIndex a = arcs[k];
      const std::string tag = inst.modes[m].id + "," + arc_tag(a);
      std::vector<lp::Term> agg{{ob.fm[m][k], 1.0}};
      for (Phase p = 1; p <= P; ++p) {
        const std::size_t bi = m * P + (p - 1);
        for (const auto& fc : ob.f[bi]) agg.push_back({fc[k], -1.0});
      }
      rows.emit({0, RowFamily::ArcAggregation, -1, -1, a}, prefix + "kapm[" + tag + "]", std::move(agg),
                RowSense::Equal, 0.0);
      rows.emit({0, RowFamily::ArcCapacity, -1, -1, a}, prefix + "mum[" + tag + "]", {{ob.fm[m][k], -1.0}},
                RowSense::GreaterEqual, -2.0 * inst.arc_capacity(a));
      const auto& pc = layout.pieces[a];
      for (int r = 0; r < pc.count(); ++r)
        rows.emit({0, RowFamily::Congestion, -1, -1, a, r}, prefix + "tau[" + tag + ",r" + std::to_string(r + 1) + "]",
                  {{ob.g[m][k], 1.0}, {ob.fm[m][k], -pc.slopes[r]}}, RowSense::GreaterEqual, pc.intercepts[r]);
    }
  }

  // Phase monotonicity on phase-p demand nodes.
  for (Phase p = 1; p < P; ++p) {
    for (const auto& pn : layout.phase_nodes[p - 1]) {
      if (pn.capacity >= 0.0) continue;
      const NodeIndex i = pn.node;
      const lp::VarId next = ob.xp[p][i];
      if (next == kNoVar) continue;
      rows.emit({0, RowFamily::Monotonicity, -1, -1, i, p},
                prefix + "ups[p" + std::to_string(p) + "," + nid(i) + "]",
                {{ob.xp[p - 1][i], 1.0}, {next, -1.0}}, RowSense::GreaterEqual, 0.0);
    }
  }

  // Round trip: what customer t received from station s in the second-to-last
  // phase returns to s in the last phase.
  if (P >= 3) {
    for (ModeIndex m = 0; m < inst.modes.size(); ++m) {
      const std::size_t last = m * P + (P - 1);
      const std::size_t prev = last - 1;
      const auto& lb = layout.blocks[last];
      const auto& pb = layout.blocks[prev];
      for (std::size_t c = 0; c < lb.carriers.size(); ++c) {
        const NodeIndex s = *lb.carriers[c].demand;
        const NodeIndex t = *lb.carriers[c].supply;
        std::vector<lp::Term> terms;
        if (ob.xc[last][c][s] != kNoVar) terms.push_back({ob.xc[last][c][s], 1.0});
        for (std::size_t c2 = 0; c2 < pb.carriers.size(); ++c2) {
          if (*pb.carriers[c2].demand != t || *pb.carriers[c2].supply != s) continue;
          if (ob.xc[prev][c2][t] != kNoVar) terms.push_back({ob.xc[prev][c2][t], -1.0});
        }
        if (terms.empty()) continue;
        rows.emit({0, RowFamily::Linkage, int(last), int(c), s},
                  prefix + "th[" + lb.carrier_labels[c] + "," + inst.modes[m].id + "]", std::move(terms),
                  RowSense::Equal, 0.0);
      }
    }
  }
  return ob;
}

OperatorModel build_operator_lp(const NetworkInstance& instance, const ScenarioConfig& scenario,
                                const DefensePlan& defense, const AttackPlan& attack) {
  if (!within_budget(defense, scenario)) throw InstanceError("defense plan violates the scenario budgets");
  if (!within_budget(attack, scenario)) throw InstanceError("attack plan violates the scenario budgets");
  OperatorModel om;
  om.layout = make_layout(instance, scenario);
  om.defense = defense;
  om.attack = attack;
  DefenseSource src;
  src.fixed = &om.defense;
  om.block = append_operator_block(om.model, om.layout, src, attack, "", true);
  return om;
}

double OperatorSolution::flow_cost() const {
  double total = 0.0;
  for (const auto& f : flows) total += f.unit_cost * f.vehicle_flow;
  return total;
}

double OperatorSolution::penalty_cost() const {
  double total = 0.0;
  for (const auto& n : node_supplies) total += n.penalty * n.slack;
  return total;
}

double OperatorSolution::congestion_cost() const {
  double total = 0.0;
  for (const auto& a : arcs) total += a.time_cost * a.congestion;
  return total;
}

const NodeSupplyRecord* OperatorSolution::find_supply(ModeIndex m, Phase p, NodeIndex i) const {
  for (const auto& n : node_supplies)
    if (n.mode == m && n.phase == p && n.node == i) return &n;
  return nullptr;
}

OperatorSolution extract_solution(const OperatorLayout& layout, const OperatorBlock& ob,
                                  const std::vector<double>& x) {
  const NetworkInstance& inst = *layout.instance;
  OperatorSolution sol;
  auto val = [&](lp::VarId v) { return std::max(0.0, x.at(v)); };
  for (std::size_t bi = 0; bi < layout.blocks.size(); ++bi) {
    const auto& blk = layout.blocks[bi];
    const auto& arcs = layout.mode_arcs[blk.mode];
    for (std::size_t c = 0; c < blk.carriers.size(); ++c) {
      for (std::size_t k = 0; k < arcs.size(); ++k) {
        const double fh = val(ob.fhat[bi][c][k]);
        const double f = val(ob.f[bi][c][k]);
        if (fh == 0.0 && f == 0.0) continue;
        const auto& fc = inst.arcs[arcs[k]].flow_cost;
        sol.flows.push_back({blk.mode, blk.phase, blk.carrier_labels[c], arcs[k], fh, f,
                             blk.phase - 1 < static_cast<int>(fc.size()) ? fc[blk.phase - 1] : 0.0});
      }
      for (const auto& [i, b] : blk.carrier_supply[c])
        sol.carrier_supplies.push_back({blk.mode, blk.phase, blk.carrier_labels[c], i, val(ob.xc[bi][c][i])});
    }
    for (std::size_t e = 0; e < blk.nodes.size(); ++e) {
      const auto& n = blk.nodes[e];
      sol.node_supplies.push_back(
          {blk.mode, blk.phase, n.node, n.capacity, val(ob.xmp[bi][e]), val(ob.slack[bi][e]), n.penalty});
    }
  }
  for (int p = 1; p <= layout.phase_count; ++p)
    for (const auto& pn : layout.phase_nodes[p - 1]) sol.phase_supplies.push_back({p, pn.node, val(ob.xp[p - 1][pn.node])});
  for (ModeIndex m = 0; m < layout.mode_arcs.size(); ++m) {
    const auto& arcs = layout.mode_arcs[m];
    for (std::size_t k = 0; k < arcs.size(); ++k)
      sol.arcs.push_back({m, arcs[k], val(ob.fm[m][k]), val(ob.g[m][k]), inst.arcs[arcs[k]].time_cost});
  }
  return sol;
}

OperatorSolution solve_operator(const OperatorModel& om, const lp::Solver& solver) {
  const auto out = solver.solve(om.model);
  if (!out.optimal())
    throw lp::SolverFailure("operator LP not solved to optimality: " + out.message, out.status);
  OperatorSolution sol = extract_solution(om.layout, om.block, out.primal);
  sol.status = out.status;
  sol.objective = out.objective;
  sol.wall_time = out.wall_time;
  return sol;
}

double operator_objective(const OperatorSolution& solution) {
  return solution.flow_cost() + solution.penalty_cost() + solution.congestion_cost();
}

double operator_value(const NetworkInstance& instance, const ScenarioConfig& scenario, const DefensePlan& defense,
                      const AttackPlan& attack, const lp::Solver& solver) {
  const auto om = build_operator_lp(instance, scenario, defense, attack);
  const auto out = solver.solve(om.model);
  if (!out.optimal())
    throw lp::SolverFailure("operator LP not solved to optimality: " + out.message, out.status);
  return out.objective;
}

}  // namespace dadnet
