#include "dadnet/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "dadnet/ccg.hpp"
#include "dadnet/io.hpp"

namespace dadnet {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::optional<PowerFit> fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_power_law: size mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  const double n = static_cast<double>(lx.size());
  if (lx.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx <= 0.0) return std::nullopt;
  PowerFit f;
  f.exponent = sxy / sxx;
  f.log_coeff = my - f.exponent * mx;
  return f;
}

GeneratorSpec bench_spec(const BenchConfig& c, int size) {
  GeneratorSpec s;
  s.family = c.family;
  s.seed = c.seed;
  s.roles = c.roles;
  s.modes = c.modes;
  s.overlap = c.overlap;
  if (c.family == GraphFamily::Grerec) {
    const int side = std::max(2, static_cast<int>(std::lround(std::sqrt(static_cast<double>(size)))));
    s.rows = s.cols = side;
  } else {
    s.nodes = size;
  }
  return s;
}

BenchReport run_bench(const BenchConfig& c, const std::function<void(const BenchRow&)>& progress) {
  if (!std::is_sorted(c.sizes.begin(), c.sizes.end())) throw std::invalid_argument("bench sizes must be ascending");
  if (c.repeats < 1) throw std::invalid_argument("bench repeats must be >= 1");
  NetgenDefaults defaults = builtin_defaults();
  if (c.phases) {
    defaults.phases = *c.phases;
    defaults.carriers.resize(defaults.phases, defaults.carriers.back());
    defaults.cost_per_mile.resize(defaults.phases, defaults.cost_per_mile.back());
  }
  BenchReport report;
  for (int size : c.sizes) {
    const NetworkInstance inst = generate(bench_spec(c, size), defaults);
    // keep at least two attackable supply nodes
    const int reserve = supply_nodes(inst, 0, 1).size() >= 3 ? 1 : 0;
    ScenarioConfig sc = auto_scenario(inst, c.defense_budget, c.reserve_budget, c.attack_budget, reserve);
    sc.name = "bench-" + std::to_string(size);
    sc.time_limit = c.time_limit;
    BenchRow row;
    row.size = size;
    row.nodes = inst.nodes.size();
    row.arcs = inst.arcs.size();
    const lp::Solver solver(c.backend);
    for (int r = 0; r < c.repeats; ++r) {
      const DADSolution sol = ccg_solve(inst, sc, solver);
      row.times.push_back(sol.wall_time);
      row.iterations = sol.iterations;
      row.objective = sol.objective;
      row.certified = sol.certified;
    }
    row.median_time = median(row.times);
    if (progress) progress(row);
    report.rows.push_back(std::move(row));
  }
  std::vector<double> x, y;
  for (const auto& r : report.rows) {
    x.push_back(static_cast<double>(r.nodes));
    y.push_back(r.median_time);
  }
  report.fit = fit_power_law(x, y);
  return report;
}

std::string format_bench_table(const BenchReport& report) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%8s %8s %8s %12s %6s %14s %s\n", "size", "nodes", "arcs", "median_s", "iters",
                "objective_usd", "certified");
  os << line;
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof line, "%8d %8zu %8zu %12.4f %6d %14.4f %s\n", r.size, r.nodes, r.arcs, r.median_time,
                  r.iterations, r.objective, r.certified ? "yes" : "no");
    os << line;
  }
  if (report.fit)
    os << "fitted exponent: t ~ N^" << format_number(std::round(report.fit->exponent * 1000.0) / 1000.0) << "\n";
  else
    os << "fitted exponent: n/a (need two sizes)\n";
  return os.str();
}

}  // namespace dadnet
