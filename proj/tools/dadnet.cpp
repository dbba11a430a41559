// dadnet command line: solve, generate, stats, oracle, bench, backends.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "dadnet/bench.hpp"
#include "dadnet/ccg.hpp"
#include "dadnet/io.hpp"
#include "dadnet/metrics.hpp"
#include "dadnet/netgen.hpp"
#include "dadnet/oracle.hpp"
#include "dadnet/validate.hpp"

namespace fs = std::filesystem;
using namespace dadnet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;
constexpr int kExitGap = 4;

struct InstanceSource {
  std::string instance;
  std::string tntp;
  std::string tntp_nodes;
  double tntp_length_scale = 1.0;
};

void add_instance_options(CLI::App* cmd, InstanceSource& src) {
  cmd->add_option("--instance", src.instance, "dadnet instance file");
  cmd->add_option("--tntp", src.tntp, "TNTP-style link file (skeleton, roles assigned with --seed)");
  cmd->add_option("--tntp-nodes", src.tntp_nodes, "TNTP-style node coordinate file");
  cmd->add_option("--tntp-length-scale", src.tntp_length_scale, "file length unit in miles (1/5280 for feet)");
}

struct Loaded {
  NetworkInstance instance;
  std::optional<std::string> path;
  std::optional<GeneratorSpec> generator;
};

Loaded load_source(const InstanceSource& src, const ScenarioFile* scenario, std::optional<std::uint64_t> seed) {
  Loaded out;
  if (!src.instance.empty()) {
    out.instance = load_instance(src.instance);
    out.path = fs::absolute(src.instance).lexically_normal().string();
  } else if (!src.tntp.empty()) {
    TntpOptions opt;
    if (!src.tntp_nodes.empty()) opt.node_file = src.tntp_nodes;
    opt.length_to_miles = src.tntp_length_scale;
    out.instance = assign_roles(load_tntp_like(src.tntp, opt), {}, seed.value_or(0));
  } else if (scenario && scenario->instance) {
    out.instance = load_instance(*scenario->instance);
    out.path = *scenario->instance;
  } else if (scenario && scenario->generator) {
    GeneratorSpec spec = *scenario->generator;
    if (seed) spec.seed = *seed;
    out.instance = generate(spec);
    out.generator = spec;
  } else {
    throw InstanceError("no instance: pass --instance or --tntp, or give 'instance' or 'generator' in the scenario");
  }
  return out;
}

std::string safe_name(const std::string& s) {
  std::string out;
  for (char c : s) out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.' ? c : '_');
  return out.empty() ? "scenario" : out;
}

// Runs f, mapping errors to exit codes.
template <class F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const lp::ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const lp::SolverFailure& e) {
    std::cerr << "solver failure (" << lp::to_string(e.status()) << "): " << e.what() << "\n";
    return kExitSolver;
  } catch (const InstanceError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const GeneratorError& e) {
    std::cerr << "generator error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const OracleCapExceeded& e) {
    std::cerr << "oracle: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
}

// ---------------------------------------------------------------------------

struct SolveArgs {
  InstanceSource src;
  std::string scenario;
  std::string out = "results";
  std::optional<std::uint64_t> seed;
  std::string backend;
  std::optional<double> time_limit;
  std::optional<double> gap;
  int jobs = 1;
  bool anonymize = false;
  bool write_lp = false;
  bool quiet = false;
};

struct SolveOutcome {
  ScenarioConfig scenario;
  std::optional<DADSolution> solution;
  std::string error;
  int code = kExitOk;
};

int cmd_solve(const SolveArgs& a) {
  const ScenarioFile file = load_scenario(a.scenario);
  const Loaded src = load_source(a.src, &file, a.seed);
  std::vector<ScenarioConfig> configs = expand_sweep(file, src.instance);
  for (auto& c : configs) {
    if (a.time_limit) c.time_limit = *a.time_limit;
    if (a.gap) c.gap_tolerance = *a.gap;
  }
  // fail on a missing backend before any work starts
  { lp::Solver probe(a.backend); }

  ResultsContext ctx;
  ctx.instance_path = src.path;
  ctx.generator = src.generator;
  ctx.stats = compute_stats(src.instance);

  std::vector<SolveOutcome> outcomes(configs.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    const lp::Solver solver(a.backend);
    for (std::size_t k; (k = next++) < configs.size();) {
      auto& o = outcomes[k];
      o.scenario = configs[k];
      o.code = guarded([&] {
        CcgOptions opt;
        if (!a.quiet) {
          opt.on_iteration = [&](const IterationRecord& r) {
            std::lock_guard<std::mutex> lock(log_mutex);
            std::fprintf(stderr, "[%s] it %d  LB %.6f  UB %.6f\n", o.scenario.name.c_str(), r.iteration,
                         r.lower_bound, r.upper_bound);
          };
        }
        o.solution = ccg_solve(src.instance, o.scenario, solver, opt);
        return o.solution->certified ? kExitOk : kExitGap;
      });
    }
  };
  const int jobs = std::max(1, std::min<int>(a.jobs, static_cast<int>(configs.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = kExitOk;
  fs::create_directories(a.out);
  for (const auto& o : outcomes) {
    if (o.solution) {
      const auto& sol = *o.solution;
      const std::string base = (fs::path(a.out) / safe_name(o.scenario.name)).string();
      write_file_atomic(base + ".results.json", results_to_json(src.instance, o.scenario, sol, ctx).dump(2) + "\n");
      write_file_atomic(base + ".trace.jsonl", trace_jsonl(src.instance, o.scenario, sol));
      const PlotPlans plans{&o.scenario, &sol.defense, &sol.worst_attack};
      const ExportOptions eo{a.anonymize};
      write_file_atomic(base + ".dot", export_dot(src.instance, plans, eo));
      if (auto geo = export_geojson(src.instance, plans, eo)) write_file_atomic(base + ".geojson", *geo);
      if (a.write_lp) {
        const auto model = build_operator_lp(src.instance, o.scenario, sol.defense, sol.worst_attack);
        lp::write_lp_file(model.model, base + ".operator.lp");
      }
      std::printf("%-28s %-16s objective %.6f  LB %.6f  gap %.3g  iterations %d  %.2fs\n", o.scenario.name.c_str(),
                  std::string(to_string(sol.status)).c_str(), sol.objective, sol.lower_bound, sol.gap, sol.iterations,
                  sol.wall_time);
      std::printf("  %s\n  %s\n", describe(src.instance, o.scenario, sol.defense).c_str(),
                  describe(src.instance, o.scenario, sol.worst_attack).c_str());
    } else {
      std::printf("%-28s failed\n", o.scenario.name.c_str());
    }
    // solver failures outrank unclosed gaps
    if (o.code == kExitSolver || o.code == kExitValidation)
      code = std::max(code == kExitGap ? 0 : code, o.code);
    else if (o.code == kExitGap && code == kExitOk)
      code = kExitGap;
  }
  return code;
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string spec_file;
  std::string family = "grerec";
  int nodes = 100;
  double gamma = 3.0;
  int rows = 15, cols = 15;
  double keep = 0.7, diagonal = 0.2;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int modes = 1;
  double overlap = 0.05;
  std::optional<double> fuel_fraction;
  std::optional<int> depots, stations, customers;
  std::string defaults;
  std::string out;
  bool stats = false;
};

int cmd_generate(const GenerateArgs& a) {
  GeneratorSpec spec;
  if (!a.spec_file.empty()) {
    const auto j = nlohmann::json::parse(read_file(a.spec_file));
    spec = parse_generator(j.contains("generator") ? j["generator"] : j);
    if (a.seed_given) spec.seed = a.seed;
  } else {
    spec.family = parse_family(a.family);
    spec.nodes = a.nodes;
    spec.gamma = a.gamma;
    spec.rows = a.rows;
    spec.cols = a.cols;
    spec.keep = a.keep;
    spec.diagonal = a.diagonal;
    spec.seed = a.seed;
    spec.modes = a.modes;
    spec.overlap = a.overlap;
    spec.roles = RoleOptions{a.fuel_fraction, a.depots, a.stations, a.customers};
  }
  const NetgenDefaults defaults = a.defaults.empty() ? builtin_defaults() : load_defaults(a.defaults);
  const NetworkInstance inst = generate(spec, defaults);
  const std::string text = write_instance(inst);
  if (a.out.empty())
    std::cout << text;
  else
    write_file_atomic(a.out, text);
  if (a.stats) std::cerr << stats_to_json(compute_stats(inst)).dump() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_stats(const InstanceSource& src, bool as_json) {
  const Loaded l = load_source(src, nullptr, std::nullopt);
  const auto st = compute_stats(l.instance);
  if (as_json) {
    std::cout << stats_to_json(st).dump(2) << "\n";
  } else {
    std::printf("nodes            %zu\n", st.node_count);
    std::printf("edges            %zu (%zu undirected)\n", st.edge_count, st.undirected_edge_count);
    std::printf("density          %.6f\n", st.density);
    std::printf("avg degree       %.6f\n", st.avg_degree);
    std::printf("heterogeneity    %.6f\n", st.heterogeneity);
    std::printf("max degree       %zu\n", st.max_degree);
    std::printf("avg betweenness  %.6f\n", st.avg_betweenness);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_oracle(const InstanceSource& src_opts, const std::string& scenario_path, std::size_t cap,
               const std::string& backend, std::optional<std::uint64_t> seed) {
  const ScenarioFile file = load_scenario(scenario_path);
  const Loaded src = load_source(src_opts, &file, seed);
  const lp::Solver solver(backend);
  OracleOptions opt;
  opt.max_cells = cap;
  for (const auto& sc : expand_sweep(file, src.instance)) {
    const auto r = oracle_minimax(src.instance, sc, solver, opt);
    std::printf("%-28s value %.9f  cells %zu  lp solves %zu\n", sc.name.c_str(), r.value, r.cells, r.lp_solves);
    std::printf("  %s\n  %s\n", describe(src.instance, sc, r.defense).c_str(),
                describe(src.instance, sc, r.attack).c_str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_bench(BenchConfig cfg, const std::string& family, const std::string& sizes, const std::string& out) {
  cfg.family = parse_family(family);
  std::stringstream ss(sizes);
  for (std::string tok; std::getline(ss, tok, ',');)
    if (!tok.empty()) cfg.sizes.push_back(std::stoi(tok));
  if (cfg.sizes.empty()) throw std::invalid_argument("bench: --sizes is empty");
  const auto report = run_bench(cfg, [](const BenchRow& r) {
    std::fprintf(stderr, "size %d: %zu nodes, median %.3fs\n", r.size, r.nodes, r.median_time);
  });
  const std::string table = format_bench_table(report);
  std::cout << table;
  if (!out.empty()) {
    nlohmann::json j;
    j["family"] = family;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : report.rows)
      j["rows"].push_back({{"size", r.size}, {"nodes", r.nodes}, {"arcs", r.arcs}, {"times_s", r.times},
                           {"median_s", r.median_time}, {"iterations", r.iterations}, {"certified", r.certified}});
    if (report.fit) j["exponent"] = report.fit->exponent;
    write_file_atomic(out, j.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_backends() {
  const auto rep = lp::check_availability();
  for (const auto& e : rep.entries)
    std::printf("%-10s %-12s %s%s\n", e.name.c_str(), e.version.c_str(), e.usable ? "usable" : "unusable",
                e.is_default ? " (default)" : "");
  if (!rep.message.empty()) std::printf("%s\n", rep.message.c_str());
  return rep.ok ? kExitOk : kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dadnet: defender-attacker-defender resilience solver for fuel and road networks"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "solve a scenario (or budget sweep) by column-and-constraint generation");
  add_instance_options(s, solve.src);
  s->add_option("--scenario", solve.scenario, "scenario JSON")->required();
  s->add_option("--out", solve.out, "output directory");
  s->add_option("--seed", solve.seed, "seed for generated instances or TNTP role assignment");
  s->add_option("--backend", solve.backend, std::string("MILP backend (default: $") + lp::kBackendEnv + " or highs)");
  s->add_option("--time-limit", solve.time_limit, "seconds per scenario");
  s->add_option("--gap", solve.gap, "relative CCG gap tolerance");
  s->add_option("--jobs", solve.jobs, "scenarios solved in parallel")->check(CLI::PositiveNumber);
  s->add_flag("--anonymize", solve.anonymize, "replace node ids by v1, v2, ... in plot exports");
  s->add_flag("--write-lp", solve.write_lp, "also write the operator LP of the final plans");
  s->add_flag("--quiet", solve.quiet, "no per-iteration log");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "generate a synthetic instance");
  g->add_option("--spec", gen.spec_file, "generator JSON (or a scenario with a 'generator' object)");
  g->add_option("--family", gen.family, "power-law | exponential | grerec");
  g->add_option("--nodes", gen.nodes, "node count (power-law, exponential)");
  g->add_option("--gamma", gen.gamma, "power-law exponent");
  g->add_option("--rows", gen.rows, "GREREC rows");
  g->add_option("--cols", gen.cols, "GREREC columns");
  g->add_option("--keep", gen.keep, "GREREC edge keep probability");
  g->add_option("--diagonal", gen.diagonal, "GREREC diagonal probability");
  g->add_option("--seed", gen.seed, "random seed")->each([&](const std::string&) { gen.seed_given = true; });
  g->add_option("--modes", gen.modes, "number of modes");
  g->add_option("--overlap", gen.overlap, "shared-node fraction between modes");
  g->add_option("--fuel-fraction", gen.fuel_fraction, "depots + stations over nodes");
  g->add_option("--depots", gen.depots, "depot count");
  g->add_option("--stations", gen.stations, "station count");
  g->add_option("--customers", gen.customers, "customer count");
  g->add_option("--defaults", gen.defaults, "generator defaults JSON");
  g->add_option("--out", gen.out, "output instance file (default stdout)");
  g->add_flag("--stats", gen.stats, "print network statistics to stderr");

  InstanceSource stats_src;
  bool stats_json = false;
  auto* st = app.add_subcommand("stats", "network statistics");
  add_instance_options(st, stats_src);
  st->add_flag("--json", stats_json, "JSON output");

  InstanceSource oracle_src;
  std::string oracle_scenario, oracle_backend;
  std::size_t oracle_cap = OracleOptions{}.max_cells;
  std::optional<std::uint64_t> oracle_seed;
  auto* o = app.add_subcommand("oracle", "exhaustive minimax over all budget-feasible plans");
  add_instance_options(o, oracle_src);
  o->add_option("--scenario", oracle_scenario, "scenario JSON")->required();
  o->add_option("--cap", oracle_cap, "maximum (defense, attack) cells");
  o->add_option("--backend", oracle_backend, "LP backend");
  o->add_option("--seed", oracle_seed, "seed for generated instances");

  BenchConfig bench;
  std::string bench_family = "grerec", bench_sizes = "49,100,169,225", bench_out;
  std::optional<int> bench_phases;
  auto* b = app.add_subcommand("bench", "runtime sweep with a fitted scaling exponent");
  b->add_option("--family", bench_family, "power-law | exponential | grerec");
  b->add_option("--sizes", bench_sizes, "comma-separated ascending node counts");
  b->add_option("--seed", bench.seed, "random seed");
  b->add_option("--repeats", bench.repeats, "solves per size");
  b->add_option("--modes", bench.modes, "modes (2 gives the overlapping two-mode preset)");
  b->add_option("--overlap", bench.overlap, "shared-node fraction between modes");
  b->add_option("--phases", bench_phases, "override the phase count");
  b->add_option("--time-limit", bench.time_limit, "seconds per solve");
  b->add_option("--backend", bench.backend, "MILP backend");
  b->add_option("--out", bench_out, "JSON report file");

  app.add_subcommand("backends", "list linked MILP backends");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  if (s->parsed()) return guarded([&] { return cmd_solve(solve); });
  if (g->parsed()) return guarded([&] { return cmd_generate(gen); });
  if (st->parsed()) return guarded([&] { return cmd_stats(stats_src, stats_json); });
  if (o->parsed())
    return guarded([&] { return cmd_oracle(oracle_src, oracle_scenario, oracle_cap, oracle_backend, oracle_seed); });
  if (b->parsed())
    return guarded([&] {
      bench.phases = bench_phases;
      return cmd_bench(bench, bench_family, bench_sizes, bench_out);
    });
  return cmd_backends();
}
