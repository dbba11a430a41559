#include "dadnet/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dadnet {

namespace detail {
extern const char* const kEmbeddedNetgenDefaults;
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below(0)");
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % n;
  }
}

std::int64_t Rng::integer(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("Rng::integer: empty range");
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

std::size_t Rng::discrete(const std::vector<double>& cumulative) {
  const double u = uniform() * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return std::min<std::size_t>(it - cumulative.begin(), cumulative.size() - 1);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : purpose) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL + h;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double ExponentialLaw::weight(int k) const {
  const double z = (k - center) / (width * width);
  return a0 + amplitude / (width * std::sqrt(std::numbers::pi / 2.0)) * std::exp(-2.0 * z * z);
}

double ExponentialLaw::mean(int cap) const {
  const int top = std::min(k_max, cap);
  double num = 0.0, den = 0.0;
  for (int k = 1; k <= top; ++k) {
    num += k * weight(k);
    den += weight(k);
  }
  return den > 0.0 ? num / den : 0.0;
}

// ---------------------------------------------------------------------------
// Defaults

namespace {

Range read_range(const nlohmann::json& j, const char* key, Range fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 2) throw GeneratorError(std::string("defaults: '") + key + "' must be [lo, hi]");
  Range r{v[0].get<double>(), v[1].get<double>()};
  if (r.hi < r.lo) throw GeneratorError(std::string("defaults: '") + key + "' has hi < lo");
  return r;
}

}  // namespace

NetgenDefaults parse_defaults(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw GeneratorError(std::string("defaults: ") + e.what());
  }
  NetgenDefaults d;
  d.version = j.value("version", 1);
  if (d.version != 1) throw GeneratorError("defaults: unsupported version " + std::to_string(d.version));
  try {
    if (j.contains("exponential")) {
      const auto& e = j["exponential"];
      d.exponential.a0 = e.value("a0", d.exponential.a0);
      d.exponential.amplitude = e.value("A", d.exponential.amplitude);
      d.exponential.width = e.value("w", d.exponential.width);
      d.exponential.center = e.value("k_c", d.exponential.center);
      d.exponential.k_max = e.value("k_max", d.exponential.k_max);
    }
    if (j.contains("model")) {
      const auto& m = j["model"];
      d.phases = m.value("phases", d.phases);
      d.bpr_pieces = m.value("bpr_pieces", d.bpr_pieces);
      d.standard_vehicle_length = m.value("standard_vehicle_length_mi", d.standard_vehicle_length);
      d.max_trip_time = m.value("max_trip_time_h", d.max_trip_time);
      if (m.contains("carriers")) {
        d.carriers.assign(d.phases, CarrierProfile{});
        for (const auto& c : m["carriers"]) {
          const int p = c.at("phase").get<int>();
          if (p < 1 || p > d.phases) throw GeneratorError("defaults: carrier phase out of range");
          d.carriers[p - 1] = CarrierProfile{c.at("vehicle_length_mi").get<double>(),
                                             c.at("load_bbl_per_v").get<double>(), 0.0};
        }
      }
    }
    if (j.contains("road")) {
      const auto& r = j["road"];
      d.speed = read_range(r, "speed_mph", d.speed);
      d.speed_step = r.value("speed_step_mph", d.speed_step);
      d.lanes = read_range(r, "lanes", d.lanes);
      d.length = read_range(r, "length_mi", d.length);
      d.grid_spacing = r.value("grid_spacing_mi", d.grid_spacing);
      if (r.contains("cost_per_mi")) d.cost_per_mile = r["cost_per_mi"].get<std::vector<double>>();
      d.time_cost = r.value("time_cost_per_vh_h", d.time_cost);
    }
    if (j.contains("roles")) {
      const auto& r = j["roles"];
      d.fuel_fraction = r.value("fuel_fraction", d.fuel_fraction);
      d.depot_share = r.value("depot_share", d.depot_share);
      d.customers_per_station = r.value("customers_per_station", d.customers_per_station);
      d.station_demand = read_range(r, "station_demand_bbl_h", d.station_demand);
      if (r.contains("penalty")) {
        const auto& p = r["penalty"];
        d.depot_penalty = p.value("depot", d.depot_penalty);
        d.station_penalty = p.value("station", d.station_penalty);
        d.customer_penalty = p.value("customer", d.customer_penalty);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw GeneratorError(std::string("defaults: ") + e.what());
  }
  if (d.phases < 1) throw GeneratorError("defaults: phases must be >= 1");
  if (d.carriers.empty()) d.carriers.assign(d.phases, CarrierProfile{d.standard_vehicle_length, 1.0, 0.0});
  if (d.cost_per_mile.empty()) d.cost_per_mile.assign(d.phases, 1.0);
  d.cost_per_mile.resize(d.phases, d.cost_per_mile.back());
  for (const auto& c : d.carriers)
    if (!(c.vehicle_length > 0.0 && c.load > 0.0)) throw GeneratorError("defaults: every phase needs a carrier profile");
  if (!(d.speed.lo > 0.0) || !(d.length.lo > 0.0) || d.lanes.lo < 1.0 || !(d.grid_spacing > 0.0))
    throw GeneratorError("defaults: road ranges must be positive");
  return d;
}

const NetgenDefaults& builtin_defaults() {
  static const NetgenDefaults d = parse_defaults(detail::kEmbeddedNetgenDefaults);
  return d;
}

NetgenDefaults load_defaults(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GeneratorError("cannot open defaults file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_defaults(ss.str());
}

// ---------------------------------------------------------------------------
// Graph constructions

std::vector<std::size_t> SimpleGraph::degrees() const {
  std::vector<std::size_t> deg(node_count, 0);
  for (const auto& [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

namespace {

void normalize_edges(SimpleGraph& g) {
  for (auto& e : g.edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
}

std::vector<std::size_t> component_labels(const SimpleGraph& g, std::size_t& count) {
  std::vector<std::vector<std::size_t>> adj(g.node_count);
  for (const auto& [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<std::size_t> label(g.node_count, SIZE_MAX);
  count = 0;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < g.node_count; ++s) {
    if (label[s] != SIZE_MAX) continue;
    label[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (auto v : adj[u])
        if (label[v] == SIZE_MAX) {
          label[v] = count;
          stack.push_back(v);
        }
    }
    ++count;
  }
  return label;
}

std::string padded_label(std::size_t i, std::size_t total) {
  std::size_t width = 1;
  for (std::size_t t = total > 0 ? total - 1 : 0; t >= 10; t /= 10) ++width;
  std::string digits = std::to_string(i);
  return "n" + std::string(width > digits.size() ? width - digits.size() : 0, '0') + digits;
}

void default_labels(SimpleGraph& g) {
  g.labels.clear();
  for (std::size_t i = 0; i < g.node_count; ++i) g.labels.push_back(padded_label(i, g.node_count));
}

constexpr int kDegreeRetries = 8;

SimpleGraph degree_law_graph(int nodes, const std::vector<double>& weights, std::uint64_t seed,
                             const char* family) {
  // weights[k-1] is the unnormalized probability of degree k
  std::vector<double> cumulative(weights.size());
  std::partial_sum(weights.begin(), weights.end(), cumulative.begin());
  if (!(cumulative.back() > 0.0)) throw GeneratorError(std::string(family) + ": degree law has no mass");
  const int k_top = static_cast<int>(weights.size());

  Rng rng(seed);
  for (int attempt = 0; attempt < kDegreeRetries; ++attempt) {
    std::vector<int> deg(nodes);
    for (auto& k : deg) k = static_cast<int>(rng.discrete(cumulative)) + 1;
    if (std::accumulate(deg.begin(), deg.end(), 0L) % 2 != 0) {
      auto& k = deg[rng.below(nodes)];
      k += (k < k_top) ? 1 : -1;
    }
    const long stubs = std::accumulate(deg.begin(), deg.end(), 0L);
    SimpleGraph g = configuration_graph(deg, rng);
    // Mostly-erased matchings mean the sampled sequence is far from graphical.
    if (2 * static_cast<long>(g.edges.size()) * 2 < stubs) continue;
    default_labels(g);
    repair_connectivity(g, rng);
    return g;
  }
  throw GeneratorError(std::string(family) + ": no usable degree sequence after " + std::to_string(kDegreeRetries) +
                       " draws (seed " + std::to_string(seed) + ")");
}

}  // namespace

SimpleGraph configuration_graph(const std::vector<int>& degrees, Rng& rng) {
  SimpleGraph g;
  g.node_count = degrees.size();
  std::vector<std::size_t> stubs;
  for (std::size_t i = 0; i < degrees.size(); ++i)
    for (int k = 0; k < degrees[i]; ++k) stubs.push_back(i);
  rng.shuffle(stubs);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2)
    if (stubs[i] != stubs[i + 1]) g.edges.emplace_back(stubs[i], stubs[i + 1]);
  normalize_edges(g);
  return g;
}

std::size_t component_count(const SimpleGraph& graph) {
  std::size_t count = 0;
  component_labels(graph, count);
  return count;
}

void repair_connectivity(SimpleGraph& g, Rng& rng) {
  std::size_t count = 0;
  const auto label = component_labels(g, count);
  if (count <= 1) return;
  std::vector<std::vector<std::size_t>> members(count);
  for (std::size_t i = 0; i < g.node_count; ++i) members[label[i]].push_back(i);
  // labels follow smallest-member order, so ties on size go to the earlier one
  std::size_t main = 0;
  for (std::size_t c = 1; c < count; ++c)
    if (members[c].size() > members[main].size()) main = c;
  std::vector<std::size_t> joined = members[main];
  const bool spatial = g.coordinates.size() == g.node_count;
  for (std::size_t c = 0; c < count; ++c) {
    if (c == main) continue;
    std::size_t u = 0, v = 0;
    if (spatial) {
      double best = std::numeric_limits<double>::infinity();
      for (auto a : members[c])
        for (auto b : joined) {
          const double dx = g.coordinates[a].x - g.coordinates[b].x;
          const double dy = g.coordinates[a].y - g.coordinates[b].y;
          const double d = dx * dx + dy * dy;
          if (d < best) {
            best = d;
            u = a;
            v = b;
          }
        }
    } else {
      u = members[c][rng.below(members[c].size())];
      v = joined[rng.below(joined.size())];
    }
    g.edges.emplace_back(u, v);
    joined.insert(joined.end(), members[c].begin(), members[c].end());
  }
  normalize_edges(g);
}

SimpleGraph power_law_graph(int nodes, double gamma, std::uint64_t seed) {
  if (nodes < 2) throw GeneratorError("power-law: need at least 2 nodes");
  if (!(gamma > 2.0)) throw GeneratorError("power-law: exponent must exceed 2");
  std::vector<double> w(nodes - 1);
  for (int k = 1; k < nodes; ++k) w[k - 1] = std::pow(static_cast<double>(k), -gamma);
  return degree_law_graph(nodes, w, seed, "power-law");
}

SimpleGraph exponential_graph(int nodes, const ExponentialLaw& law, std::uint64_t seed) {
  if (nodes < 2) throw GeneratorError("exponential: need at least 2 nodes");
  if (!(law.width > 0.0) || law.k_max < 1) throw GeneratorError("exponential: width and k_max must be positive");
  const int top = std::min(law.k_max, nodes - 1);
  std::vector<double> w(top);
  for (int k = 1; k <= top; ++k) {
    w[k - 1] = law.weight(k);
    if (!(w[k - 1] >= 0.0) || !std::isfinite(w[k - 1]))
      throw GeneratorError("exponential: degree law negative or not finite at k=" + std::to_string(k));
  }
  return degree_law_graph(nodes, w, seed, "exponential");
}

SimpleGraph grerec_graph(int rows, int cols, double keep, double diagonal, std::uint64_t seed) {
  if (rows < 2 || cols < 2) throw GeneratorError("grerec: grid dimensions must be >= 2");
  if (!(keep >= 0.0 && keep <= 1.0) || !(diagonal >= 0.0 && diagonal <= 1.0))
    throw GeneratorError("grerec: probabilities must lie in [0, 1]");
  Rng rng(seed);
  const std::size_t total = static_cast<std::size_t>(rows) * cols;
  auto id = [&](int r, int c) { return static_cast<std::size_t>(r) * cols + c; };
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols && rng.bernoulli(keep)) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows && rng.bernoulli(keep)) edges.emplace_back(id(r, c), id(r + 1, c));
      if (r + 1 < rows && c + 1 < cols && rng.bernoulli(diagonal)) edges.emplace_back(id(r, c), id(r + 1, c + 1));
      if (r + 1 < rows && c > 0 && rng.bernoulli(diagonal)) edges.emplace_back(id(r, c), id(r + 1, c - 1));
    }

  std::vector<char> used(total, 0);
  for (const auto& [u, v] : edges) used[u] = used[v] = 1;
  std::vector<std::size_t> remap(total, SIZE_MAX);
  SimpleGraph g;
  for (std::size_t i = 0; i < total; ++i) {
    if (!used[i]) continue;
    remap[i] = g.node_count++;
    g.labels.push_back(padded_label(i, total));
    g.coordinates.push_back(Coordinates{static_cast<double>(i % cols), static_cast<double>(i / cols)});
  }
  if (g.node_count == 0) {
    // nothing survived; keep one cell so callers still get a graph
    g.node_count = 1;
    g.labels.push_back(padded_label(0, total));
    g.coordinates.push_back(Coordinates{0.0, 0.0});
    return g;
  }
  for (const auto& [u, v] : edges) g.edges.emplace_back(remap[u], remap[v]);
  normalize_edges(g);
  repair_connectivity(g, rng);
  return g;
}

// ---------------------------------------------------------------------------
// Instances

namespace {

double round_to(double v, double step) { return std::round(v / step) * step; }

NetworkInstance empty_instance(const NetgenDefaults& d) {
  NetworkInstance inst;
  inst.phase_count = d.phases;
  inst.bpr_pieces = d.bpr_pieces;
  return inst;
}

// Adds one mode's topology. Nodes already present by id join the mode.
void add_mode(NetworkInstance& inst, const SimpleGraph& g, const std::string& mode_id, Rng& rng,
              const NetgenDefaults& d, double coordinate_scale) {
  const ModeIndex m = inst.modes.size();
  inst.modes.push_back(Mode{mode_id, d.standard_vehicle_length, d.max_trip_time});
  inst.carrier_profiles.push_back(d.carriers);
  const std::vector<double> zeros(d.phases, 0.0);

  std::map<std::string, NodeIndex> index;
  for (NodeIndex i = 0; i < inst.nodes.size(); ++i) index[inst.nodes[i].id] = i;
  std::vector<NodeIndex> local(g.node_count);
  for (std::size_t u = 0; u < g.node_count; ++u) {
    auto it = index.find(g.labels[u]);
    if (it == index.end()) {
      NodeRecord n = make_node(g.labels[u], NodeRole::Junction, 0, zeros, zeros);
      if (g.coordinates.size() == g.node_count)
        n.coordinates = Coordinates{g.coordinates[u].x * coordinate_scale, g.coordinates[u].y * coordinate_scale};
      inst.nodes.push_back(std::move(n));
      it = index.emplace(g.labels[u], inst.nodes.size() - 1).first;
    }
    local[u] = it->second;
    auto& rec = inst.nodes[it->second];
    rec.modes.resize(m + 1);
    rec.modes[m].member = true;
    rec.modes[m].phases.assign(d.phases, ModePhaseSupply{});
  }

  const auto speed_steps = static_cast<std::int64_t>(std::floor((d.speed.hi - d.speed.lo) / d.speed_step + 1e-9));
  const bool spatial = g.coordinates.size() == g.node_count;
  for (const auto& [u, v] : g.edges) {
    ArcRecord a;
    a.mode = m;
    a.speed = d.speed.lo + d.speed_step * static_cast<double>(rng.integer(0, speed_steps));
    a.lanes = static_cast<int>(rng.integer(static_cast<std::int64_t>(d.lanes.lo), static_cast<std::int64_t>(d.lanes.hi)));
    if (spatial) {
      const double dx = g.coordinates[u].x - g.coordinates[v].x;
      const double dy = g.coordinates[u].y - g.coordinates[v].y;
      a.length = std::hypot(dx, dy) * coordinate_scale;
    } else {
      a.length = std::max(round_to(rng.uniform(d.length.lo, d.length.hi), 1e-3), 1e-3);
    }
    for (int p = 0; p < d.phases; ++p) a.flow_cost.push_back(d.cost_per_mile[p] * a.length);
    a.time_cost = d.time_cost;
    a.tail = local[u];
    a.head = local[v];
    inst.arcs.push_back(a);
    std::swap(a.tail, a.head);
    inst.arcs.push_back(a);
  }
}

NetworkInstance finish(NetworkInstance inst) {
  for (auto& n : inst.nodes) n.modes.resize(inst.modes.size());
  inst.canonicalize();
  derive_constants(inst);
  return inst;
}

}  // namespace

NetworkInstance skeleton_from_graph(const SimpleGraph& graph, std::uint64_t seed, const NetgenDefaults& defaults,
                                    const std::string& mode_id) {
  NetworkInstance inst = empty_instance(defaults);
  Rng rng(seed);
  add_mode(inst, graph, mode_id, rng, defaults, defaults.grid_spacing);
  return finish(std::move(inst));
}

NetworkInstance gen_power_law(int nodes, double gamma, std::uint64_t seed, const NetgenDefaults& defaults) {
  return skeleton_from_graph(power_law_graph(nodes, gamma, seed), derive_seed(seed, "road"), defaults);
}

NetworkInstance gen_exponential(int nodes, const ExponentialLaw& law, std::uint64_t seed,
                                const NetgenDefaults& defaults) {
  return skeleton_from_graph(exponential_graph(nodes, law, seed), derive_seed(seed, "road"), defaults);
}

NetworkInstance gen_grerec(int rows, int cols, double keep, double diagonal, std::uint64_t seed,
                           const NetgenDefaults& defaults) {
  return skeleton_from_graph(grerec_graph(rows, cols, keep, diagonal, seed), derive_seed(seed, "road"), defaults);
}

RoleCounts role_counts(std::size_t nodes, const RoleOptions& options, const NetgenDefaults& defaults) {
  const double fraction = options.fuel_fraction.value_or(defaults.fuel_fraction);
  if (!(fraction > 0.0 && fraction < 1.0)) throw GeneratorError("fuel fraction must lie in (0, 1)");
  const int fuel = std::max(2, static_cast<int>(std::lround(fraction * static_cast<double>(nodes))));
  RoleCounts rc;
  rc.depots = options.depot_count.value_or(
      std::max(1, static_cast<int>(std::lround(fuel * defaults.depot_share))));
  rc.stations = options.station_count.value_or(std::max(1, fuel - rc.depots));
  rc.customers = options.customer_count.value_or(
      std::max(1, static_cast<int>(std::lround(rc.stations * defaults.customers_per_station))));
  if (rc.depots < 0 || rc.stations < 0 || rc.customers < 0) throw GeneratorError("role counts must be >= 0");
  if (static_cast<std::size_t>(rc.depots) >= nodes)
    throw GeneratorError("fewer nodes (" + std::to_string(nodes) + ") than the depot count " +
                         std::to_string(rc.depots) + " needs");
  return rc;
}

NetworkInstance assign_roles(NetworkInstance inst, const RoleOptions& options, std::uint64_t seed,
                             const NetgenDefaults& d) {
  const int P = inst.phase_count;
  Rng rng(seed);
  for (auto& n : inst.nodes) {
    n.role = NodeRole::Junction;
    for (auto& ps : n.phases) ps = PhaseSupply{};
    for (auto& md : n.modes)
      for (auto& s : md.phases) s = ModePhaseSupply{};
  }

  for (ModeIndex m = 0; m < inst.modes.size(); ++m) {
    // roles go to nodes of this mode only, so every OD pair shares a graph
    std::vector<NodeIndex> pool;
    for (NodeIndex i = 0; i < inst.nodes.size(); ++i) {
      const auto& n = inst.nodes[i];
      const auto memberships = std::count_if(n.modes.begin(), n.modes.end(), [](const auto& md) { return md.member; });
      if (n.in_mode(m) && memberships == 1) pool.push_back(i);
    }
    RoleCounts rc = role_counts(pool.size(), options, d);
    if (P < 2) rc.customers = 0;
    if (static_cast<std::size_t>(rc.depots + rc.stations + rc.customers) > pool.size())
      throw GeneratorError("mode '" + inst.modes[m].id + "': " + std::to_string(pool.size()) +
                           " nodes cannot host the requested roles");
    rng.shuffle(pool);

    auto set = [&](NodeIndex i, int phase, double b, double penalty) {
      auto& n = inst.nodes[i];
      n.phases[phase - 1].capacity = b;
      n.modes[m].phases[phase - 1] = ModePhaseSupply{b, penalty};
    };

    double total = 0.0;
    std::vector<double> station(rc.stations);
    for (auto& s : station) {
      s = std::round(rng.uniform(d.station_demand.lo, d.station_demand.hi));
      total += s;
    }
    for (int k = 0; k < rc.depots; ++k) {
      const NodeIndex i = pool[k];
      inst.nodes[i].role = NodeRole::Depot;
      set(i, 1, total / rc.depots, d.depot_penalty);
    }
    for (int k = 0; k < rc.stations; ++k) {
      const NodeIndex i = pool[rc.depots + k];
      inst.nodes[i].role = NodeRole::Station;
      for (int p = 1; p <= P; ++p) set(i, p, (p % 2 == 0) ? station[k] : -station[k], d.station_penalty);
    }
    for (int k = 0; k < rc.customers; ++k) {
      const NodeIndex i = pool[rc.depots + rc.stations + k];
      inst.nodes[i].role = NodeRole::Customer;
      const double c = total / rc.customers;
      for (int p = 2; p <= P; ++p) set(i, p, (p % 2 == 0) ? -c : c, d.customer_penalty);
    }
  }
  derive_constants(inst);
  return inst;
}

std::string_view to_string(GraphFamily family) {
  switch (family) {
    case GraphFamily::PowerLaw: return "power-law";
    case GraphFamily::Exponential: return "exponential";
    case GraphFamily::Grerec: return "grerec";
  }
  return "?";
}

GraphFamily parse_family(std::string_view text) {
  if (text == "power-law" || text == "powerlaw") return GraphFamily::PowerLaw;
  if (text == "exponential") return GraphFamily::Exponential;
  if (text == "grerec") return GraphFamily::Grerec;
  throw GeneratorError("unknown generator family '" + std::string(text) + "'");
}

void check_spec(const GeneratorSpec& s) {
  switch (s.family) {
    case GraphFamily::PowerLaw:
      if (s.nodes < 2) throw GeneratorError("power-law: N must be >= 2");
      if (!(s.gamma > 2.0)) throw GeneratorError("power-law: exponent must exceed 2");
      break;
    case GraphFamily::Exponential:
      if (s.nodes < 2) throw GeneratorError("exponential: N must be >= 2");
      break;
    case GraphFamily::Grerec:
      if (s.rows < 2 || s.cols < 2) throw GeneratorError("grerec: grid dimensions must be >= 2");
      if (!(s.keep >= 0.0 && s.keep <= 1.0) || !(s.diagonal >= 0.0 && s.diagonal <= 1.0))
        throw GeneratorError("grerec: probabilities must lie in [0, 1]");
      break;
  }
  if (s.modes < 1) throw GeneratorError("modes must be >= 1");
  if (!(s.overlap >= 0.0 && s.overlap <= 1.0)) throw GeneratorError("overlap must lie in [0, 1]");
}

SimpleGraph generate_graph(const GeneratorSpec& spec, std::uint64_t seed) {
  switch (spec.family) {
    case GraphFamily::PowerLaw: return power_law_graph(spec.nodes, spec.gamma, seed);
    case GraphFamily::Exponential:
      return exponential_graph(spec.nodes, spec.law.value_or(builtin_defaults().exponential), seed);
    case GraphFamily::Grerec: return grerec_graph(spec.rows, spec.cols, spec.keep, spec.diagonal, seed);
  }
  throw GeneratorError("unknown generator family");
}

NetworkInstance generate(const GeneratorSpec& spec, const NetgenDefaults& defaults) {
  check_spec(spec);
  GeneratorSpec s = spec;
  if (s.family == GraphFamily::Exponential && !s.law) s.law = defaults.exponential;

  NetworkInstance inst = empty_instance(defaults);
  std::vector<std::string> previous;
  for (int k = 0; k < s.modes; ++k) {
    const std::uint64_t graph_seed = k == 0 ? s.seed : derive_seed(s.seed, "mode" + std::to_string(k));
    SimpleGraph g = generate_graph(s, graph_seed);
    Rng rng(k == 0 ? derive_seed(s.seed, "road") : derive_seed(graph_seed, "road"));
    if (k > 0) {
      const std::string prefix = "m" + std::to_string(k);
      std::vector<std::size_t> order(g.node_count);
      std::iota(order.begin(), order.end(), 0);
      rng.shuffle(order);
      std::vector<std::string> targets = previous;
      rng.shuffle(targets);
      const auto shared = std::min<std::size_t>(
          {static_cast<std::size_t>(std::lround(s.overlap * static_cast<double>(g.node_count))), targets.size(),
           g.node_count});
      for (auto& l : g.labels) l = prefix + l;
      for (std::size_t j = 0; j < shared; ++j) g.labels[order[j]] = targets[j];
      // shared endpoints may place a second mode's coordinates on top of the
      // first, so only the first mode keeps geometry
      g.coordinates.clear();
    }
    add_mode(inst, g, k == 0 ? "road" : "road" + std::to_string(k + 1), rng, defaults, defaults.grid_spacing);
    previous = g.labels;
  }
  inst = finish(std::move(inst));
  return assign_roles(std::move(inst), s.roles, derive_seed(s.seed, "roles"), defaults);
}

}  // namespace dadnet
