#pragma once

// Column-and-constraint generation for min_defense max_attack min_operator.

#include <functional>
#include <string>
#include <vector>

#include "dadnet/operator_lp.hpp"
#include "dadnet/subproblem.hpp"

namespace dadnet {

struct MasterModel {
  OperatorLayout layout;
  lp::Model model;
  lp::VarId eta = 0;
  std::vector<std::vector<lp::VarId>> defend;  // [group][pos]
  std::vector<std::vector<lp::VarId>> open;
  std::vector<AttackPlan> attacks;  // I, in insertion order
  std::vector<OperatorBlock> blocks;
};

// Master over the given distinct attacks. Throws std::invalid_argument on a
// repeated attack.
MasterModel build_master(const NetworkInstance& instance, const ScenarioConfig& scenario,
                         const std::vector<AttackPlan>& attacks);

// Appends the operator copy for one more attack.
void add_attack(MasterModel& master, const AttackPlan& attack);

struct MasterResult {
  DefensePlan defense;
  double lower_bound = 0.0;
  double wall_time = 0.0;
  double mip_gap = 0.0;
};

MasterResult solve_master(const MasterModel& master, const lp::Solver& solver = lp::Solver());

struct IterationRecord {
  int iteration = 0;  // 1-based
  double master_value = 0.0;     // raw master optimum
  double lower_bound = 0.0;      // running max of master values
  double subproblem_value = 0.0;
  double upper_bound = 0.0;      // best subproblem value so far
  DefensePlan defense;           // master defense of this iteration
  AttackPlan attack;             // subproblem attack against it
  bool repeated_attack = false;
  double big_m_ratio = 0.0;
  double master_time = 0.0;
  double subproblem_time = 0.0;
};

enum class CcgStatus { Converged, RepeatedAttack, IterationLimit, TimeLimit };

std::string_view to_string(CcgStatus status);

struct DADSolution {
  DefensePlan defense;       // incumbent (attains the best upper bound)
  AttackPlan worst_attack;   // subproblem attack against the incumbent
  std::vector<AttackPlan> attacks;  // generated set I
  std::vector<IterationRecord> trace;
  double objective = 0.0;    // best upper bound
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double gap = 0.0;          // upper - lower
  int iterations = 0;
  double wall_time = 0.0;
  CcgStatus status = CcgStatus::Converged;
  bool certified = false;    // gap closed within tolerance
  bool big_m_ok = true;      // no linearization bound came near binding
  double duality_residual = 0.0;  // |operator LP - subproblem| for the incumbent pair
  std::string backend;
  lp::Tolerances tolerances;
};

struct CcgOptions {
  std::function<void(const IterationRecord&)> on_iteration;
  bool audit_strong_duality = true;
};

// Convergence test shared with callers: ub - lb <= tol * max(1, |ub|).
bool gap_closed(double lower, double upper, double tolerance);

DADSolution ccg_solve(const NetworkInstance& instance, const ScenarioConfig& scenario,
                      const lp::Solver& solver = lp::Solver(), const CcgOptions& options = {});

}  // namespace dadnet
