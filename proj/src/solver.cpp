#include "dadnet/solver.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <mutex>

namespace dadnet::lp {

std::string to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::Limit: return "limit";
    case Status::Error: break;
  }
  return "error";
}

BackendRegistry& BackendRegistry::global() {
  static BackendRegistry registry = [] {
    BackendRegistry r;
    r.add(make_highs_backend(), true);
    return r;
  }();
  return registry;
}

void BackendRegistry::add(std::shared_ptr<Backend> backend, bool make_default) {
  remove(backend->name());
  if (make_default || default_.empty()) default_ = backend->name();
  backends_.push_back(std::move(backend));
}

void BackendRegistry::remove(const std::string& name) {
  std::erase_if(backends_, [&](const auto& b) { return b->name() == name; });
  if (default_ == name) default_ = backends_.empty() ? std::string{} : backends_.front()->name();
}

std::shared_ptr<Backend> BackendRegistry::find(const std::string& name) const {
  for (const auto& b : backends_)
    if (b->name() == name) return b;
  return nullptr;
}

std::vector<std::string> BackendRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& b : backends_) out.push_back(b->name());
  return out;
}

AvailabilityReport check_availability(const BackendRegistry& registry) {
  AvailabilityReport report;
  for (const auto& name : registry.names()) {
    auto b = registry.find(name);
    report.entries.push_back({name, b->version(), b->usable(), name == registry.default_name()});
  }
  const bool any = std::any_of(report.entries.begin(), report.entries.end(), [](const auto& e) { return e.usable; });
  report.ok = any;
  if (!any) {
    report.message =
        "no usable MILP backend is linked; rebuild with HiGHS available (find_package(highs) or "
        "third_party/highs) or register a backend";
  } else {
    report.message = "backends:";
    for (const auto& e : report.entries)
      report.message += " " + e.name + (e.version.empty() ? "" : " " + e.version) + (e.is_default ? " (default)" : "") +
                        (e.usable ? "" : " (unusable)");
  }
  return report;
}

namespace {

struct SessionGate {
  std::mutex mutex;
  std::condition_variable cv;
  int cap = 64;
  int active = 0;
};

SessionGate& gate() {
  static SessionGate g;
  return g;
}

class SessionTicket {
 public:
  SessionTicket() {
    auto& g = gate();
    std::unique_lock lock(g.mutex);
    g.cv.wait(lock, [&] { return g.active < g.cap; });
    ++g.active;
  }
  ~SessionTicket() {
    auto& g = gate();
    {
      std::lock_guard lock(g.mutex);
      --g.active;
    }
    g.cv.notify_one();
  }
  SessionTicket(const SessionTicket&) = delete;
  SessionTicket& operator=(const SessionTicket&) = delete;
};

}  // namespace

void set_session_cap(int cap) {
  auto& g = gate();
  {
    std::lock_guard lock(g.mutex);
    g.cap = std::max(1, cap);
  }
  g.cv.notify_all();
}

int session_cap() {
  auto& g = gate();
  std::lock_guard lock(g.mutex);
  return g.cap;
}

Solver::Solver(const std::string& backend, SolveLimits limits) : limits_(limits) {
  auto& registry = BackendRegistry::global();
  name_ = backend;
  if (name_.empty()) {
    if (const char* env = std::getenv(kBackendEnv); env && *env) name_ = env;
  }
  if (name_.empty()) name_ = registry.default_name();
  if (name_.empty()) throw ConfigurationError(check_availability(registry).message);
  backend_ = registry.find(name_);
  if (!backend_) throw ConfigurationError("unknown solver backend '" + name_ + "'; " + check_availability(registry).message);
  if (!backend_->usable()) throw ConfigurationError("solver backend '" + name_ + "' is not usable");
}

SolveOutcome Solver::solve(const Model& model) const { return solve(model, limits_); }

SolveOutcome Solver::solve(const Model& model, const SolveLimits& limits) const {
  model.check();
  SessionTicket ticket;
  const auto start = std::chrono::steady_clock::now();
  SolveOutcome out = backend_->solve(model, limits);
  out.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.backend = name_;
  out.tolerances = limits.tolerances;
  return out;
}

}  // namespace dadnet::lp
