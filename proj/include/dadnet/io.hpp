#pragma once

// Instance text format, scenario and results JSON, bounds traces.
//
// Instance files are line-oriented and sectioned:
//
//   dadnet-instance 1
//   phases 3
//   bpr_pieces 4
//   [modes]        id std_vehicle_length[mi] max_trip_time[h]
//   [carriers]     mode phase vehicle_length[mi] load[bbl/v]
//   [nodes]        id role x[mi] y[mi] b^p[bbl/h] for p = 1..P   ("-" for no coordinates)
//   [node_modes]   node mode b^mp[bbl/h] p=1..P, then penalty[$/(bbl/h)] p=1..P
//   [pumps]        node phase count rate[bbl/h]
//   [arcs]         mode tail head length[mi] speed[mi/h] lanes capacity[v/h] time_cost[$/((v/h)h)] flow_cost[$/(v/h)] p=1..P
//   [carrier_supply] mode phase carrier node b[bbl/h]
//
// '#' starts a comment. Capacity "-" means lanes * speed / std length.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dadnet/ccg.hpp"
#include "dadnet/metrics.hpp"
#include "dadnet/model.hpp"
#include "dadnet/netgen.hpp"

namespace dadnet {

class FormatError : public InstanceError {
 public:
  FormatError(const std::string& source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

std::string read_file(const std::string& path);
// Writes a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string& path, std::string_view content);

std::string format_number(double v);

std::string write_instance(const NetworkInstance& instance);
// Parses, canonicalizes, validates and derives constants. Throws FormatError
// on syntax, InstanceError on validation failure.
NetworkInstance parse_instance(std::string_view text, const std::string& source = "<text>");
NetworkInstance load_instance(const std::string& path);
void save_instance(const NetworkInstance& instance, const std::string& path);

// ---------------------------------------------------------------------------
// Scenarios

struct GroupSpec {
  std::string mode;  // empty: first mode
  Phase phase = 1;
  bool attack_all = true;     // every supply node not in the reserve set
  std::vector<std::string> attackable;
  std::vector<std::string> reserve;
  int reserve_count = 0;      // with an empty reserve list: the last k supply ids
  int defense_budget = 1;
  int reserve_budget = 1;
  int attack_budget = 1;
};

struct BudgetSweep {
  std::vector<int> defense;
  std::vector<int> reserve;
  std::vector<int> attack;
};

struct ScenarioFile {
  std::string name = "scenario";
  std::optional<std::string> instance;  // path, relative to the scenario file
  std::optional<GeneratorSpec> generator;
  std::vector<GroupSpec> groups;
  BigMConfig big_m;
  double gap_tolerance = 1e-6;
  double time_limit = 3600.0;
  int max_iterations = 500;
  bool pump_limits = false;
  bool prune_carriers = true;
  std::optional<BudgetSweep> sweep;
};

ScenarioFile parse_scenario(const nlohmann::json& j);
ScenarioFile load_scenario(const std::string& path);
nlohmann::json to_json(const ScenarioFile& scenario);

GeneratorSpec parse_generator(const nlohmann::json& j);
nlohmann::json to_json(const GeneratorSpec& spec);

// Resolves node ids against the instance. Throws InstanceError on unknown ids
// or an invalid scenario.
ScenarioConfig resolve_scenario(const ScenarioFile& file, const NetworkInstance& instance);
// One config per sweep cell (budgets applied to every group), or the file's
// own budgets when there is no sweep. Names get a _d<n>_o<n>_a<n> suffix.
std::vector<ScenarioConfig> expand_sweep(const ScenarioFile& file, const NetworkInstance& instance);

// Phase-p group on mode m: every supply node attackable except the
// lexicographically last `reserve_count`, which form the reserve set.
ScenarioConfig auto_scenario(const NetworkInstance& instance, int defense_budget, int reserve_budget,
                             int attack_budget, int reserve_count = 1, ModeIndex mode = 0, Phase phase = 1);

// Scenario with explicit node id lists, so it re-resolves to the same config.
ScenarioFile echo_scenario(const ScenarioConfig& scenario, const NetworkInstance& instance);

// ---------------------------------------------------------------------------
// Results

nlohmann::json plans_to_json(const NetworkInstance& instance, const ScenarioConfig& scenario,
                             const DefensePlan& defense, const AttackPlan& attack);
nlohmann::json iteration_to_json(const NetworkInstance& instance, const ScenarioConfig& scenario,
                                 const IterationRecord& record);

struct ResultsContext {
  std::optional<std::string> instance_path;
  std::optional<GeneratorSpec> generator;
  std::optional<NetworkStats> stats;
};

nlohmann::json results_to_json(const NetworkInstance& instance, const ScenarioConfig& scenario,
                               const DADSolution& solution, const ResultsContext& context = {});
// One JSON object per line, one line per CCG iteration.
std::string trace_jsonl(const NetworkInstance& instance, const ScenarioConfig& scenario,
                        const DADSolution& solution);

nlohmann::json stats_to_json(const NetworkStats& stats);

// ---------------------------------------------------------------------------
// TNTP-style networks: "<NUMBER OF NODES>" metadata, a link table
// (init term capacity length fft b power speed toll type ;) and an optional
// node table (node x y ;).

struct TntpOptions {
  std::optional<std::string> node_file;
  double length_to_miles = 1.0;  // 1/5280 for feet
  double time_to_hours = 1.0 / 60.0;
  double default_speed = 30.0;   // mi/h when neither speed nor time is given
};

NetworkInstance parse_tntp(std::string_view net_text, std::optional<std::string_view> node_text,
                           const TntpOptions& options = {}, const NetgenDefaults& defaults = builtin_defaults());
NetworkInstance load_tntp_like(const std::string& net_path, const TntpOptions& options = {},
                               const NetgenDefaults& defaults = builtin_defaults());

// ---------------------------------------------------------------------------
// Plot exports

struct PlotPlans {
  const ScenarioConfig* scenario = nullptr;
  const DefensePlan* defense = nullptr;
  const AttackPlan* attack = nullptr;
};

// Per-node tags among "defense", "reserve", "attack", from the plan vectors.
std::vector<std::vector<std::string>> node_tags(const NetworkInstance& instance, const PlotPlans& plans);
std::string tag_color(const std::vector<std::string>& tags);

struct ExportOptions {
  bool anonymize = false;  // ids become v1, v2, ... in node order
};

std::string export_dot(const NetworkInstance& instance, const PlotPlans& plans = {}, const ExportOptions& options = {});
// Empty when no node has coordinates.
std::optional<std::string> export_geojson(const NetworkInstance& instance, const PlotPlans& plans = {},
                                          const ExportOptions& options = {});

}  // namespace dadnet
