#pragma once

// Synthetic road networks (power-law, exponential, GREREC) and fuel role
// assignment. All randomness flows from one 64-bit seed through a portable
// generator, so a spec and seed always give the same instance bytes.

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dadnet/model.hpp"

namespace dadnet {

class GeneratorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// mt19937_64 plus distribution helpers with a fixed algorithm; the standard
// distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();                              // [0, 1)
  double uniform(double lo, double hi);          // [lo, hi)
  std::uint64_t below(std::uint64_t n);          // [0, n), unbiased
  std::int64_t integer(std::int64_t lo, std::int64_t hi);  // [lo, hi]
  bool bernoulli(double p) { return uniform() < p; }
  // Index drawn with probability proportional to weights.
  std::size_t discrete(const std::vector<double>& cumulative);

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

// Stream seed for a named sub-purpose, so adding draws in one stage does not
// shift another.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose);

struct ExponentialLaw {
  double a0 = 0.0;
  double amplitude = 1.0;  // A
  double width = 1.0;      // w
  double center = 1.0;     // k_c
  int k_max = 80;

  double weight(int k) const;
  // Mean of the law restricted to 1..min(k_max, cap).
  double mean(int cap) const;
};

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct NetgenDefaults {
  int version = 1;
  ExponentialLaw exponential;

  int phases = 3;
  int bpr_pieces = 4;
  double standard_vehicle_length = 0.006;  // mi
  double max_trip_time = 0.5;              // h
  std::vector<CarrierProfile> carriers;    // per phase

  Range speed{25.0, 45.0};  // mi/h, drawn in steps of speed_step
  double speed_step = 5.0;
  Range lanes{1.0, 2.0};    // integer draw
  Range length{0.1, 1.0};   // mi, non-spatial families
  double grid_spacing = 0.25;         // mi
  std::vector<double> cost_per_mile;  // $ per (v/h) per mi, per phase
  double time_cost = 15.0;            // $ per ((v/h) h)

  double fuel_fraction = 0.0625;        // depots + stations over all nodes
  double depot_share = 2.0 / 14.0;      // depots among fuel nodes
  double customers_per_station = 0.5;
  Range station_demand{20.0, 60.0};     // bbl/h
  double depot_penalty = 50.0;          // $ per (bbl/h)
  double station_penalty = 100.0;
  double customer_penalty = 100.0;
};

// Defaults compiled in from data/netgen_defaults.json.
const NetgenDefaults& builtin_defaults();
NetgenDefaults parse_defaults(std::string_view json_text);
NetgenDefaults load_defaults(const std::string& path);

// Undirected simple graph on nodes 0..n-1.
struct SimpleGraph {
  std::size_t node_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // u < v, sorted
  std::vector<Coordinates> coordinates;                    // empty unless spatial
  std::vector<std::string> labels;                         // node ids

  std::vector<std::size_t> degrees() const;
};

// Stub matching with self-loops and multi-edges erased.
SimpleGraph configuration_graph(const std::vector<int>& degrees, Rng& rng);
// Joins every component to the largest one with one bridging edge, chosen
// uniformly, or nearest-pair when coordinates exist.
void repair_connectivity(SimpleGraph& graph, Rng& rng);
std::size_t component_count(const SimpleGraph& graph);

SimpleGraph power_law_graph(int nodes, double gamma, std::uint64_t seed);
SimpleGraph exponential_graph(int nodes, const ExponentialLaw& law, std::uint64_t seed);
SimpleGraph grerec_graph(int rows, int cols, double keep, double diagonal, std::uint64_t seed);

// Two-way road arcs with drawn speeds, lanes and lengths; every node a
// junction with zero supply.
NetworkInstance skeleton_from_graph(const SimpleGraph& graph, std::uint64_t seed,
                                    const NetgenDefaults& defaults = builtin_defaults(),
                                    const std::string& mode_id = "road");

NetworkInstance gen_power_law(int nodes, double gamma, std::uint64_t seed,
                              const NetgenDefaults& defaults = builtin_defaults());
NetworkInstance gen_exponential(int nodes, const ExponentialLaw& law, std::uint64_t seed,
                                const NetgenDefaults& defaults = builtin_defaults());
NetworkInstance gen_grerec(int rows, int cols, double keep, double diagonal, std::uint64_t seed,
                           const NetgenDefaults& defaults = builtin_defaults());

struct RoleOptions {
  std::optional<double> fuel_fraction;
  std::optional<int> depot_count;
  std::optional<int> station_count;
  std::optional<int> customer_count;
};

struct RoleCounts {
  int depots = 0;
  int stations = 0;
  int customers = 0;
};

RoleCounts role_counts(std::size_t nodes, const RoleOptions& options,
                       const NetgenDefaults& defaults = builtin_defaults());

// Depots supply stations in phase 1; customers draw from stations in phase 2
// and return in phase 3 (later phases only when the skeleton has them).
NetworkInstance assign_roles(NetworkInstance skeleton, const RoleOptions& options, std::uint64_t seed,
                             const NetgenDefaults& defaults = builtin_defaults());

enum class GraphFamily { PowerLaw, Exponential, Grerec };

std::string_view to_string(GraphFamily family);
GraphFamily parse_family(std::string_view text);

struct GeneratorSpec {
  GraphFamily family = GraphFamily::Grerec;
  int nodes = 0;        // power-law and exponential
  double gamma = 3.0;
  std::optional<ExponentialLaw> law;  // exponential; defaults file otherwise
  int rows = 15;
  int cols = 15;
  double keep = 0.7;
  double diagonal = 0.2;
  std::uint64_t seed = 0;
  RoleOptions roles;
  int modes = 1;
  double overlap = 0.05;  // shared-node fraction between consecutive modes
};

// Checks parameter ranges; throws GeneratorError.
void check_spec(const GeneratorSpec& spec);
SimpleGraph generate_graph(const GeneratorSpec& spec, std::uint64_t seed);
// Topology, road constants and roles. With modes > 1 each mode gets its own
// graph; about `overlap` of each graph's nodes are shared with the previous
// mode.
NetworkInstance generate(const GeneratorSpec& spec, const NetgenDefaults& defaults = builtin_defaults());

}  // namespace dadnet
