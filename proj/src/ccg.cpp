#include "dadnet/ccg.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace dadnet {

MasterModel build_master(const NetworkInstance& inst, const ScenarioConfig& scenario,
                         const std::vector<AttackPlan>& attacks) {
  MasterModel mm;
  mm.layout = make_layout(inst, scenario);
  mm.eta = mm.model.add_nonneg("eta", 1.0);
  for (const auto& g : scenario.groups) {
    const std::string tag = inst.modes[g.mode].id + ",p" + std::to_string(g.phase);
    auto& d = mm.defend.emplace_back();
    std::vector<lp::Term> db;
    for (NodeIndex i : g.attackable) {
      d.push_back(mm.model.add_binary("d[" + tag + "," + inst.nodes[i].id + "]"));
      db.push_back({d.back(), 1.0});
    }
    if (!db.empty())
      mm.model.add_row("defense_budget[" + tag + "]", std::move(db), lp::RowSense::LessEqual, g.defense_budget);
    auto& o = mm.open.emplace_back();
    std::vector<lp::Term> ob;
    for (NodeIndex i : g.reserve) {
      o.push_back(mm.model.add_binary("o[" + tag + "," + inst.nodes[i].id + "]"));
      ob.push_back({o.back(), 1.0});
    }
    if (!ob.empty())
      mm.model.add_row("reserve_budget[" + tag + "]", std::move(ob), lp::RowSense::LessEqual, g.reserve_budget);
  }
  for (const auto& a : attacks) add_attack(mm, a);
  return mm;
}

void add_attack(MasterModel& mm, const AttackPlan& attack) {
  if (std::find(mm.attacks.begin(), mm.attacks.end(), attack) != mm.attacks.end())
    throw std::invalid_argument("attack already present in the master problem");
  const std::string prefix = "y" + std::to_string(mm.attacks.size()) + ".";
  DefenseSource src;
  src.defend = &mm.defend;
  src.open = &mm.open;
  OperatorBlock block = append_operator_block(mm.model, mm.layout, src, attack, prefix, false);
  std::vector<lp::Term> link{{mm.eta, 1.0}};
  for (const auto& t : block.cost) link.push_back({t.var, -t.coef});
  mm.model.add_row(prefix + "epigraph", std::move(link), lp::RowSense::GreaterEqual, 0.0);
  mm.attacks.push_back(attack);
  mm.blocks.push_back(std::move(block));
}

MasterResult solve_master(const MasterModel& mm, const lp::Solver& solver) {
  const auto out = solver.solve(mm.model);
  if (!out.optimal()) throw lp::SolverFailure("master problem not solved: " + out.message, out.status);
  MasterResult res;
  res.lower_bound = out.objective;
  res.wall_time = out.wall_time;
  res.mip_gap = out.mip_gap;
  auto read = [&](const std::vector<std::vector<lp::VarId>>& vars) {
    std::vector<Selection> sel;
    for (const auto& g : vars) {
      auto& s = sel.emplace_back();
      for (lp::VarId v : g) s.push_back(out.primal[v] > 0.5 ? 1 : 0);
    }
    return sel;
  };
  res.defense.defend = read(mm.defend);
  res.defense.open = read(mm.open);
  return res;
}

std::string_view to_string(CcgStatus status) {
  switch (status) {
    case CcgStatus::Converged: return "converged";
    case CcgStatus::RepeatedAttack: return "repeated-attack";
    case CcgStatus::IterationLimit: return "iteration-limit";
    case CcgStatus::TimeLimit: return "time-limit";
  }
  return "?";
}

bool gap_closed(double lower, double upper, double tolerance) {
  return upper - lower <= tolerance * std::max(1.0, std::abs(upper));
}

DADSolution ccg_solve(const NetworkInstance& inst, const ScenarioConfig& scenario, const lp::Solver& solver,
                      const CcgOptions& options) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - start).count(); };
  auto limits_left = [&] {
    lp::SolveLimits lim = solver.limits();
    lim.time_limit = std::min(lim.time_limit, std::max(scenario.time_limit - elapsed(), 0.0));
    return lim;
  };

  DADSolution sol;
  sol.backend = solver.backend_name();
  sol.tolerances = solver.limits().tolerances;
  sol.lower_bound = -lp::kInf;
  sol.upper_bound = lp::kInf;

  MasterModel master = build_master(inst, scenario, {empty_attack(scenario)});
  bool have_incumbent = false;

  for (int it = 1;; ++it) {
    if (it > scenario.max_iterations) {
      sol.status = CcgStatus::IterationLimit;
      break;
    }
    if (elapsed() >= scenario.time_limit) {
      sol.status = CcgStatus::TimeLimit;
      break;
    }
    IterationRecord rec;
    rec.iteration = it;
    MasterResult mr;
    SubproblemResult sr;
    try {
      lp::Solver step(solver.backend_name(), limits_left());
      mr = solve_master(master, step);
      rec.master_time = mr.wall_time;
      auto sp = build_dual_sp(inst, scenario, mr.defense);
      linearize_bilinear(sp);
      step.set_time_limit(limits_left().time_limit);
      sr = solve_subproblem(sp, step, options.audit_strong_duality);
      rec.subproblem_time = sr.wall_time;
    } catch (const lp::SolverFailure& e) {
      if (e.status() != lp::Status::Limit || !have_incumbent) throw;
      sol.status = CcgStatus::TimeLimit;
      break;
    }

    rec.master_value = mr.lower_bound;
    sol.lower_bound = std::max(sol.lower_bound, mr.lower_bound);
    rec.lower_bound = sol.lower_bound;
    rec.subproblem_value = sr.upper_bound;
    rec.defense = mr.defense;
    rec.attack = sr.attack;
    rec.big_m_ratio = sr.audit.worst_ratio;
    if (!sr.audit.ok) sol.big_m_ok = false;
    if (!have_incumbent || sr.upper_bound < sol.upper_bound) {
      sol.upper_bound = sr.upper_bound;
      sol.defense = mr.defense;
      sol.worst_attack = sr.attack;
      sol.duality_residual = sr.audit.duality_residual;
      have_incumbent = true;
    }
    rec.upper_bound = sol.upper_bound;
    rec.repeated_attack =
        std::find(master.attacks.begin(), master.attacks.end(), sr.attack) != master.attacks.end();
    sol.trace.push_back(rec);
    sol.iterations = it;
    if (options.on_iteration) options.on_iteration(rec);

    if (gap_closed(sol.lower_bound, sol.upper_bound, scenario.gap_tolerance)) {
      sol.status = CcgStatus::Converged;
      break;
    }
    if (rec.repeated_attack) {
      sol.status = CcgStatus::RepeatedAttack;
      break;
    }
    add_attack(master, sr.attack);
  }

  sol.attacks = master.attacks;
  sol.objective = sol.upper_bound;
  sol.gap = sol.upper_bound - sol.lower_bound;
  sol.certified = have_incumbent && gap_closed(sol.lower_bound, sol.upper_bound, scenario.gap_tolerance);
  sol.wall_time = elapsed();
  return sol;
}

}  // namespace dadnet
