#pragma once

// Brute-force game value: enumerate every budget-feasible defense and attack
// and solve the operator LP in each cell. Independent of the dual and CCG
// code paths; meant for small instances and tests.

#include <cstddef>
#include <vector>

#include "dadnet/operator_lp.hpp"

namespace dadnet {

std::vector<DefensePlan> enumerate_defenses(const ScenarioConfig& scenario);
std::vector<AttackPlan> enumerate_attacks(const ScenarioConfig& scenario);

// Number of budget-feasible attacks, |X|.
std::size_t count_attacks(const ScenarioConfig& scenario);

struct OracleOptions {
  std::size_t max_cells = 20000;
};

struct OracleResult {
  double value = 0.0;
  DefensePlan defense;
  AttackPlan attack;  // worst attack against `defense`
  std::size_t cells = 0;     // (defense, attack) pairs considered
  std::size_t lp_solves = 0; // after merging attacks with equal effect
};

class OracleCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

OracleResult oracle_minimax(const NetworkInstance& instance, const ScenarioConfig& scenario,
                            const lp::Solver& solver = lp::Solver(), const OracleOptions& options = {});

}  // namespace dadnet
