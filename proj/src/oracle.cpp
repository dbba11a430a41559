#include "dadnet/oracle.hpp"

#include <map>

namespace dadnet {
namespace {

// All 0/1 vectors of length n with at most k ones, in lexicographic order.
std::vector<Selection> subsets(std::size_t n, int k) {
  std::vector<Selection> out;
  Selection cur(n, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    cur[i] = 0;
    self(self, i + 1, left);
    if (left > 0) {
      cur[i] = 1;
      self(self, i + 1, left - 1);
      cur[i] = 0;
    }
  };
  rec(rec, 0, k);
  return out;
}

std::vector<std::vector<Selection>> product(const std::vector<std::vector<Selection>>& choices) {
  std::vector<std::vector<Selection>> out{{}};
  for (const auto& opts : choices) {
    std::vector<std::vector<Selection>> next;
    for (const auto& prefix : out)
      for (const auto& s : opts) {
        next.push_back(prefix);
        next.back().push_back(s);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<DefensePlan> enumerate_defenses(const ScenarioConfig& scenario) {
  std::vector<std::vector<Selection>> choices;
  for (const auto& g : scenario.groups) {
    choices.push_back(subsets(g.attackable.size(), g.defense_budget));
    choices.push_back(subsets(g.reserve.size(), g.reserve_budget));
  }
  std::vector<DefensePlan> out;
  for (const auto& combo : product(choices)) {
    DefensePlan plan;
    for (std::size_t k = 0; k < combo.size(); k += 2) {
      plan.defend.push_back(combo[k]);
      plan.open.push_back(combo[k + 1]);
    }
    out.push_back(std::move(plan));
  }
  return out;
}

std::vector<AttackPlan> enumerate_attacks(const ScenarioConfig& scenario) {
  std::vector<std::vector<Selection>> choices;
  for (const auto& g : scenario.groups) choices.push_back(subsets(g.attackable.size(), g.attack_budget));
  std::vector<AttackPlan> out;
  for (auto& combo : product(choices)) out.push_back(AttackPlan{std::move(combo)});
  return out;
}

std::size_t count_attacks(const ScenarioConfig& scenario) {
  std::size_t total = 1;
  for (const auto& g : scenario.groups) total *= subsets(g.attackable.size(), g.attack_budget).size();
  return total;
}

OracleResult oracle_minimax(const NetworkInstance& instance, const ScenarioConfig& scenario, const lp::Solver& solver,
                            const OracleOptions& options) {
  const auto defenses = enumerate_defenses(scenario);
  const auto attacks = enumerate_attacks(scenario);
  const std::size_t cells = defenses.size() * attacks.size();
  if (cells > options.max_cells)
    throw OracleCapExceeded("oracle would enumerate " + std::to_string(cells) + " cells (cap " +
                            std::to_string(options.max_cells) + ")");
  OracleResult best;
  best.cells = cells;
  bool first = true;
  for (const auto& d : defenses) {
    // Attacks on defended nodes have no effect, so cells are merged by the
    // effective attack.
    std::map<std::vector<Selection>, double> seen;
    double worst = -lp::kInf;
    AttackPlan worst_attack;
    for (const auto& a : attacks) {
      const auto eff = effective_attack(a, d);
      auto it = seen.find(eff.attack);
      double v;
      if (it != seen.end()) {
        v = it->second;
      } else {
        v = operator_value(instance, scenario, d, a, solver);
        ++best.lp_solves;
        seen.emplace(eff.attack, v);
      }
      if (v > worst) {
        worst = v;
        worst_attack = a;
      }
    }
    if (first || worst < best.value) {
      best.value = worst;
      best.defense = d;
      best.attack = worst_attack;
      first = false;
    }
  }
  return best;
}

}  // namespace dadnet
