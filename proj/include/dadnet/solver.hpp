#pragma once

// Thin interface to an external MILP engine. This module is the only place
// that knows any solver API; everything else talks to lp::Model.

#include <memory>
#include <string>
#include <vector>

#include "dadnet/lp.hpp"

namespace dadnet::lp {

enum class Status { Optimal, Infeasible, Unbounded, Limit, Error };

std::string to_string(Status s);

// Pinned numeric tolerances, echoed in every outcome.
struct Tolerances {
  double primal_feasibility = 1e-9;
  double dual_feasibility = 1e-9;
  double mip_feasibility = 1e-9;
  double mip_rel_gap = 1e-9;
  double mip_abs_gap = 1e-9;
};

struct SolveLimits {
  double time_limit = kInf;  // seconds
  Tolerances tolerances;
};

struct SolveOutcome {
  Status status = Status::Error;
  double objective = 0.0;
  std::vector<double> primal;     // present iff has_primal
  std::vector<double> row_duals;  // LP only; backend sign convention (see backend docs)
  bool has_primal = false;
  bool has_duals = false;
  double wall_time = 0.0;  // seconds
  double mip_gap = 0.0;
  std::string backend;
  Tolerances tolerances;
  std::string message;

  bool optimal() const { return status == Status::Optimal; }
};

class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(const std::string& what, Status status) : std::runtime_error(what), status_(status) {}
  Status status() const { return status_; }

 private:
  Status status_;
};

class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string name() const = 0;
  virtual std::string version() const = 0;
  virtual bool usable() const { return true; }
  virtual SolveOutcome solve(const Model& model, const SolveLimits& limits) const = 0;
};

// HiGHS, linked at build time. Row duals follow HiGHS: for a minimization,
// the multiplier of an active lower bound row is >= 0 and the objective equals
// sum(row bound * dual) + sum(column bound * reduced cost).
std::shared_ptr<Backend> make_highs_backend();

class BackendRegistry {
 public:
  static BackendRegistry& global();

  void add(std::shared_ptr<Backend> backend, bool make_default = false);
  void remove(const std::string& name);
  std::shared_ptr<Backend> find(const std::string& name) const;
  std::vector<std::string> names() const;
  std::string default_name() const { return default_; }

 private:
  std::vector<std::shared_ptr<Backend>> backends_;
  std::string default_;
};

struct AvailabilityReport {
  struct Entry {
    std::string name;
    std::string version;
    bool usable = false;
    bool is_default = false;
  };
  std::vector<Entry> entries;
  bool ok = false;
  std::string message;
};

AvailabilityReport check_availability(const BackendRegistry& registry = BackendRegistry::global());

// Environment variable consulted when no backend name is given.
inline constexpr const char* kBackendEnv = "DADNET_BACKEND";

// Caps the number of solves in flight across all Solver objects.
void set_session_cap(int cap);
int session_cap();

class Solver {
 public:
  // Empty name: $DADNET_BACKEND, else the registry default. Throws
  // ConfigurationError when the backend is missing or unusable.
  explicit Solver(const std::string& backend = {}, SolveLimits limits = {});

  SolveOutcome solve(const Model& model) const;
  SolveOutcome solve(const Model& model, const SolveLimits& limits) const;

  const std::string& backend_name() const { return name_; }
  const SolveLimits& limits() const { return limits_; }
  void set_time_limit(double seconds) { limits_.time_limit = seconds; }

 private:
  std::shared_ptr<Backend> backend_;
  std::string name_;
  SolveLimits limits_;
};

}  // namespace dadnet::lp
