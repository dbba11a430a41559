#pragma once

// Attacker subproblem: the LP dual of the operator problem for a fixed
// defense, maximized jointly over dual values and attack binaries.
//
// The dual is obtained by transposing the operator LP row by row, so every
// dual variable is tied to exactly one operator row (see RowFamily). The only
// attack-dependent dual term, -|b| (1 - (1 - d) a) delta, is carried by a
// separate delta-bar variable and linearized with big-M rows.

#include <string>
#include <vector>

#include "dadnet/operator_lp.hpp"

namespace dadnet {

// Supply shadow price bound: for every phase, the largest penalty among its
// supply-side entries plus the largest among its demand-side entries.
double derived_price_bound(const NetworkInstance& instance);

// M per scenario group and attackable position.
std::vector<std::vector<double>> resolve_big_m(const NetworkInstance& instance, const ScenarioConfig& scenario);

struct DeltaLink {
  lp::RowId primal_row = 0;   // interdiction row in the operator LP
  lp::VarId x_column = 0;     // x_i^{mp} in the operator LP
  lp::VarId delta = 0;
  lp::VarId delta_bar = 0;
  int group = -1;
  int pos = -1;
  bool defended = false;
  double capacity = 0.0;  // |b_i^{mp}|
  double big_m = 0.0;
};

struct SubproblemModel {
  OperatorModel primal;  // fixed defense, no attack; source of the transposition
  lp::Model model{lp::ObjSense::Maximize};
  std::vector<lp::VarId> dual_of_row;     // by primal row
  std::vector<lp::RowId> row_of_column;   // dual row by primal column
  std::vector<std::vector<lp::VarId>> attack;  // [group][pos]
  std::vector<DeltaLink> deltas;
  bool linearized = false;
};

SubproblemModel build_dual_sp(const NetworkInstance& instance, const ScenarioConfig& scenario,
                              const DefensePlan& defense);

// Adds delta-bar rows: plain equality for defended nodes, four big-M rows
// otherwise. M comes from the scenario policy unless given per group/pos.
void linearize_bilinear(SubproblemModel& sp);
void linearize_bilinear(SubproblemModel& sp, const std::vector<std::vector<double>>& big_m);

// Pins the attack binaries, turning the subproblem into the plain dual of the
// operator LP under that attack.
void fix_attack(SubproblemModel& sp, const AttackPlan& attack);

struct DualValue {
  RowFamily family = RowFamily::Conservation;
  std::string name;  // operator row name
  double value = 0.0;
};

struct DualSolution {
  std::vector<DualValue> values;   // one per operator row, in row order
  std::vector<double> delta_bar;   // aligned with SubproblemModel::deltas

  std::vector<double> family(RowFamily f) const;
};

// Post-solve check of the returned attack: the operator LP is re-solved under
// it, and the interdiction-row duals of that LP (the marginal value of the
// lost supply) are compared with M.
struct BigMAudit {
  bool performed = false;
  double worst_ratio = 0.0;  // max delta / M over attacked, undefended nodes
  bool ok = true;            // worst_ratio <= 0.99 and strong duality holds
  std::vector<std::string> binding;  // rows whose delta reaches 0.99 M
  double primal_value = 0.0;         // operator LP under the returned attack
  double duality_residual = 0.0;     // |subproblem value - primal_value|
};

struct SubproblemResult {
  AttackPlan attack;
  double upper_bound = 0.0;
  DualSolution duals;
  BigMAudit audit;
  double wall_time = 0.0;
  double mip_gap = 0.0;
};

// Throws lp::SolverFailure when the backend does not return an optimum.
SubproblemResult solve_subproblem(const SubproblemModel& sp, const lp::Solver& solver = lp::Solver(),
                                  bool audit = true);

// Operator LP value under `attack` for the subproblem's defense, with the
// audit fields filled.
BigMAudit audit_attack(const SubproblemModel& sp, const AttackPlan& attack, double subproblem_value,
                       const lp::Solver& solver = lp::Solver());

// Largest violation of the dual sign restrictions and dual rows at a point.
double dual_infeasibility(const SubproblemModel& sp, const std::vector<double>& point);

}  // namespace dadnet
