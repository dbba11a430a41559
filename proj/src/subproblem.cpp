#include "dadnet/subproblem.hpp"

#include <algorithm>
#include <cmath>

namespace dadnet {

double derived_price_bound(const NetworkInstance& inst) {
  double total = 0.0;
  for (Phase p = 1; p <= inst.phase_count; ++p) {
    double supply = 0.0;
    double demand = 0.0;
    for (const auto& node : inst.nodes)
      for (ModeIndex m = 0; m < inst.modes.size(); ++m) {
        if (!node.in_mode(m)) continue;
        const double b = node.capacity(m, p);
        if (b > 0.0) supply = std::max(supply, node.penalty(m, p));
        if (b < 0.0) demand = std::max(demand, node.penalty(m, p));
      }
    total += supply + demand;
  }
  return total;
}

std::vector<std::vector<double>> resolve_big_m(const NetworkInstance& inst, const ScenarioConfig& scenario) {
  const auto& cfg = scenario.big_m;
  const double derived = derived_price_bound(inst) * (1.0 + cfg.margin);
  std::vector<std::vector<double>> out;
  for (const auto& g : scenario.groups) {
    auto& row = out.emplace_back();
    for (NodeIndex i : g.attackable) {
      double m = 0.0;
      switch (cfg.policy) {
        case BigMPolicy::Derived: m = derived; break;
        case BigMPolicy::Penalty: m = inst.nodes.at(i).penalty(g.mode, g.phase) * (1.0 + cfg.margin); break;
        case BigMPolicy::Fixed: m = cfg.value; break;
      }
      // A zero bound would pin delta to zero and silently drop the attack effect.
      row.push_back(std::max(m, 1.0));
    }
  }
  return out;
}

SubproblemModel build_dual_sp(const NetworkInstance& inst, const ScenarioConfig& scenario, const DefensePlan& defense) {
  SubproblemModel sp;
  sp.primal = build_operator_lp(inst, scenario, defense, empty_attack(scenario));
  const lp::Model& primal = sp.primal.model;
  lp::Model& dual = sp.model;

  std::vector<const RowInfo*> info(primal.num_rows(), nullptr);
  for (const auto& ri : sp.primal.block.rows) info[ri.row] = &ri;

  // One dual variable per operator row; sign from the row sense of a
  // minimization with nonnegative columns.
  sp.dual_of_row.resize(primal.num_rows());
  for (lp::RowId r = 0; r < primal.num_rows(); ++r) {
    const auto& row = primal.row(r);
    const std::string name = std::string(dual_symbol(info[r]->family)) + ":" + row.name;
    const bool interdiction = info[r]->family == RowFamily::Interdiction;
    const double obj = interdiction ? 0.0 : row.rhs;
    switch (row.sense) {
      case lp::RowSense::GreaterEqual: sp.dual_of_row[r] = dual.add_var(name, 0.0, lp::kInf, obj); break;
      case lp::RowSense::LessEqual: sp.dual_of_row[r] = dual.add_var(name, -lp::kInf, 0.0, obj); break;
      case lp::RowSense::Equal: sp.dual_of_row[r] = dual.add_free(name, obj); break;
    }
  }

  // One dual row per operator column: A^T y <= c.
  std::vector<std::vector<lp::Term>> columns(primal.num_vars());
  for (lp::RowId r = 0; r < primal.num_rows(); ++r)
    for (const auto& t : primal.row(r).terms) columns[t.var].push_back({sp.dual_of_row[r], t.coef});
  sp.row_of_column.resize(primal.num_vars());
  for (lp::VarId j = 0; j < primal.num_vars(); ++j) {
    const auto& v = primal.var(j);
    if (v.lower != 0.0 || v.upper != lp::kInf) throw lp::ModelError("operator column '" + v.name + "' is not x >= 0");
    sp.row_of_column[j] = dual.add_row("col:" + v.name, std::move(columns[j]), lp::RowSense::LessEqual, v.cost);
  }

  // Attack binaries and budgets.
  for (std::size_t g = 0; g < scenario.groups.size(); ++g) {
    const auto& grp = scenario.groups[g];
    auto& vars = sp.attack.emplace_back();
    std::vector<lp::Term> budget;
    for (NodeIndex i : grp.attackable) {
      vars.push_back(dual.add_binary("a[" + inst.modes[grp.mode].id + ",p" + std::to_string(grp.phase) + "," +
                                     inst.nodes[i].id + "]"));
      budget.push_back({vars.back(), 1.0});
    }
    if (!budget.empty())
      dual.add_row("attack_budget[" + inst.modes[grp.mode].id + ",p" + std::to_string(grp.phase) + "]",
                   std::move(budget), lp::RowSense::LessEqual, grp.attack_budget);
  }

  // delta-bar carries the interdiction row's objective term.
  const auto big_m = resolve_big_m(inst, scenario);
  for (const auto& ri : sp.primal.block.rows) {
    if (ri.family != RowFamily::Interdiction) continue;
    const auto& blk = sp.primal.layout.blocks[ri.block];
    const auto& entry = blk.nodes[ri.entry];
    DeltaLink link;
    link.primal_row = ri.row;
    link.x_column = sp.primal.block.xmp[ri.block][ri.entry];
    link.delta = sp.dual_of_row[ri.row];
    link.group = blk.group;
    link.pos = entry.pos;
    link.defended = defense.defend.at(blk.group).at(entry.pos) != 0;
    link.capacity = std::abs(entry.capacity);
    link.big_m = big_m.at(blk.group).at(entry.pos);
    link.delta_bar = dual.add_nonneg("dbar:" + primal.row(ri.row).name, -link.capacity);
    sp.deltas.push_back(link);
  }
  return sp;
}

void linearize_bilinear(SubproblemModel& sp) {
  if (sp.linearized) return;
  lp::Model& dual = sp.model;
  for (const auto& link : sp.deltas) {
    const std::string tag = dual.var(link.delta_bar).name.substr(5);
    if (link.defended) {
      // (1 - d) a is identically zero.
      dual.add_row("lin_eq[" + tag + "]", {{link.delta, 1.0}, {link.delta_bar, -1.0}}, lp::RowSense::Equal, 0.0);
      continue;
    }
    const lp::VarId a = sp.attack.at(link.group).at(link.pos);
    const double M = link.big_m;
    dual.add_row("lin_ub[" + tag + "]", {{link.delta_bar, 1.0}, {a, M}}, lp::RowSense::LessEqual, M);
    dual.add_row("lin_lo[" + tag + "]", {{link.delta, 1.0}, {link.delta_bar, -1.0}}, lp::RowSense::GreaterEqual, 0.0);
    dual.add_row("lin_gap[" + tag + "]", {{link.delta, 1.0}, {link.delta_bar, -1.0}, {a, -M}}, lp::RowSense::LessEqual,
                 0.0);
  }
  sp.linearized = true;
}

void linearize_bilinear(SubproblemModel& sp, const std::vector<std::vector<double>>& big_m) {
  if (sp.linearized) throw lp::ModelError("subproblem is already linearized");
  for (auto& link : sp.deltas) link.big_m = big_m.at(link.group).at(link.pos);
  linearize_bilinear(sp);
}

void fix_attack(SubproblemModel& sp, const AttackPlan& attack) {
  for (std::size_t g = 0; g < sp.attack.size(); ++g)
    for (std::size_t k = 0; k < sp.attack[g].size(); ++k) {
      const double v = attack.attack.at(g).at(k) ? 1.0 : 0.0;
      sp.model.set_bounds(sp.attack[g][k], v, v);
    }
}

std::vector<double> DualSolution::family(RowFamily f) const {
  std::vector<double> out;
  for (const auto& v : values)
    if (v.family == f) out.push_back(v.value);
  return out;
}

BigMAudit audit_attack(const SubproblemModel& sp, const AttackPlan& attack, double subproblem_value,
                       const lp::Solver& solver) {
  BigMAudit audit;
  lp::Model attacked = sp.primal.model;
  std::vector<const DeltaLink*> hit;
  for (const auto& link : sp.deltas)
    if (!link.defended && attack.attack.at(link.group).at(link.pos)) {
      attacked.set_rhs(link.primal_row, 0.0);
      hit.push_back(&link);
    }
  const auto out = solver.solve(attacked);
  if (!out.optimal()) throw lp::SolverFailure("operator LP under the returned attack: " + out.message, out.status);
  audit.performed = true;
  audit.primal_value = out.objective;
  audit.duality_residual = std::abs(subproblem_value - out.objective);
  if (audit.duality_residual > 1e-6 * std::max(1.0, std::abs(out.objective))) audit.ok = false;
  if (out.has_duals) {
    for (const DeltaLink* link : hit) {
      const double ratio = std::max(0.0, out.row_duals[link->primal_row]) / link->big_m;
      audit.worst_ratio = std::max(audit.worst_ratio, ratio);
      if (ratio > 0.99) {
        audit.ok = false;
        audit.binding.push_back(sp.primal.model.row(link->primal_row).name);
      }
    }
  }
  return audit;
}

SubproblemResult solve_subproblem(const SubproblemModel& sp, const lp::Solver& solver, bool audit) {
  if (!sp.linearized) throw lp::ModelError("subproblem must be linearized before solving");
  const auto out = solver.solve(sp.model);
  if (!out.optimal()) throw lp::SolverFailure("attacker subproblem not solved: " + out.message, out.status);
  const auto& y = out.primal;

  SubproblemResult res;
  res.upper_bound = out.objective;
  res.wall_time = out.wall_time;
  res.mip_gap = out.mip_gap;
  for (const auto& vars : sp.attack) {
    auto& sel = res.attack.attack.emplace_back();
    for (lp::VarId v : vars) sel.push_back(y[v] > 0.5 ? 1 : 0);
  }

  std::vector<const RowInfo*> info(sp.primal.model.num_rows(), nullptr);
  for (const auto& ri : sp.primal.block.rows) info[ri.row] = &ri;
  res.duals.values.reserve(sp.dual_of_row.size());
  for (lp::RowId r = 0; r < sp.dual_of_row.size(); ++r)
    res.duals.values.push_back({info[r]->family, sp.primal.model.row(r).name, y[sp.dual_of_row[r]]});
  for (const auto& link : sp.deltas) res.duals.delta_bar.push_back(y[link.delta_bar]);
  if (audit) res.audit = audit_attack(sp, res.attack, res.upper_bound, solver);
  return res;
}

double dual_infeasibility(const SubproblemModel& sp, const std::vector<double>& point) {
  double worst = 0.0;
  for (lp::RowId r = 0; r < sp.primal.model.num_rows(); ++r) {
    const auto& v = sp.model.var(sp.dual_of_row[r]);
    const double y = point.at(sp.dual_of_row[r]);
    worst = std::max({worst, v.lower - y, y - v.upper});
  }
  for (lp::RowId row : sp.row_of_column) {
    const auto& rr = sp.model.row(row);
    double lhs = 0.0;
    for (const auto& t : rr.terms) lhs += t.coef * point.at(t.var);
    worst = std::max(worst, lhs - rr.rhs);
  }
  return worst;
}

}  // namespace dadnet
