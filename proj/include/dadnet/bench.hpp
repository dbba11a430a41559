#pragma once

// Runtime sweep over generated instances and a log-log fit of time vs size.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dadnet/netgen.hpp"
#include "dadnet/solver.hpp"

namespace dadnet {

struct BenchConfig {
  GraphFamily family = GraphFamily::Grerec;
  std::vector<int> sizes;  // target node counts, ascending; GREREC uses a round(sqrt(N)) square grid
  std::uint64_t seed = 1;
  int repeats = 3;
  int modes = 1;
  double overlap = 0.05;
  RoleOptions roles;
  std::optional<int> phases;  // override the defaults file
  int defense_budget = 1;
  int reserve_budget = 1;
  int attack_budget = 1;
  double time_limit = 600.0;  // s per solve
  std::string backend;
};

struct BenchRow {
  int size = 0;
  std::size_t nodes = 0;
  std::size_t arcs = 0;
  std::vector<double> times;  // s, one per repeat
  double median_time = 0.0;
  int iterations = 0;
  double objective = 0.0;
  bool certified = false;
};

struct PowerFit {
  double exponent = 0.0;   // slope of log t against log N
  double log_coeff = 0.0;  // intercept
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::optional<PowerFit> fit;  // needs two or more sizes
};

double median(std::vector<double> values);
// Least squares on (log x, log y); nullopt with fewer than two distinct x.
std::optional<PowerFit> fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

GeneratorSpec bench_spec(const BenchConfig& config, int size);

// Throws std::invalid_argument when sizes are not ascending.
BenchReport run_bench(const BenchConfig& config, const std::function<void(const BenchRow&)>& progress = {});

std::string format_bench_table(const BenchReport& report);

}  // namespace dadnet
