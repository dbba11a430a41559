#pragma once

#include <string>
#include <vector>

#include "dadnet/model.hpp"

namespace dadnet {

struct Violation {
  std::string rule;     // e.g. "sign-consistency"
  std::string element;  // offending node/arc/mode id
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(const std::string& rule) const;
  std::string summary() const;
};

ValidationReport validate_instance(const NetworkInstance& instance);
ValidationReport validate_scenario(const NetworkInstance& instance, const ScenarioConfig& scenario);

// Throws InstanceError with the report summary when validation fails.
void require_valid(const NetworkInstance& instance);
void require_valid(const NetworkInstance& instance, const ScenarioConfig& scenario);

}  // namespace dadnet
