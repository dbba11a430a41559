#include "dadnet/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include "dadnet/validate.hpp"

namespace dadnet {

using nlohmann::json;

FormatError::FormatError(const std::string& source, int line, const std::string& message)
    : InstanceError(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot replace '" + path + "': " + ec.message());
  }
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Instance writer

namespace {

void check_token(const std::string& s, const char* what) {
  if (s.empty() || std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) || c == '#'; }))
    throw InstanceError(std::string(what) + " '" + s + "' cannot be written: ids must be nonempty without blanks or '#'");
}

}  // namespace

std::string write_instance(const NetworkInstance& src) {
  NetworkInstance inst = src;
  inst.canonicalize();
  const int P = inst.phase_count;
  std::ostringstream os;
  os << "dadnet-instance 1\n";
  os << "# units: supply bbl/h, flow v/h, length mi, speed mi/h, time h, cost $\n";
  os << "phases " << P << "\n";
  os << "bpr_pieces " << inst.bpr_pieces << "\n";

  os << "\n[modes]\n# id std_vehicle_length[mi] max_trip_time[h]\n";
  for (const auto& m : inst.modes) {
    check_token(m.id, "mode id");
    os << m.id << ' ' << format_number(m.standard_vehicle_length) << ' ' << format_number(m.max_trip_time) << "\n";
  }

  os << "\n[carriers]\n# mode phase vehicle_length[mi] load[bbl/v]\n";
  for (std::size_t m = 0; m < inst.carrier_profiles.size() && m < inst.modes.size(); ++m)
    for (std::size_t p = 0; p < inst.carrier_profiles[m].size(); ++p) {
      const auto& c = inst.carrier_profiles[m][p];
      os << inst.modes[m].id << ' ' << p + 1 << ' ' << format_number(c.vehicle_length) << ' ' << format_number(c.load)
         << "\n";
    }

  os << "\n[nodes]\n# id role x[mi] y[mi] b^p[bbl/h] p=1.." << P << "\n";
  for (const auto& n : inst.nodes) {
    check_token(n.id, "node id");
    os << n.id << ' ' << to_string(n.role);
    if (n.coordinates)
      os << ' ' << format_number(n.coordinates->x) << ' ' << format_number(n.coordinates->y);
    else
      os << " - -";
    for (int p = 0; p < P; ++p) os << ' ' << format_number(p < static_cast<int>(n.phases.size()) ? n.phases[p].capacity : 0.0);
    os << "\n";
  }

  os << "\n[node_modes]\n# node mode b^mp[bbl/h] p=1.." << P << " penalty[$/(bbl/h)] p=1.." << P << "\n";
  for (const auto& n : inst.nodes)
    for (std::size_t m = 0; m < n.modes.size() && m < inst.modes.size(); ++m) {
      if (!n.modes[m].member) continue;
      os << n.id << ' ' << inst.modes[m].id;
      for (int p = 1; p <= P; ++p) os << ' ' << format_number(n.capacity(m, p));
      for (int p = 1; p <= P; ++p) os << ' ' << format_number(n.penalty(m, p));
      os << "\n";
    }

  bool pumps = false;
  for (const auto& n : inst.nodes)
    for (const auto& ps : n.phases) pumps = pumps || ps.pumps != 0 || ps.pump_rate != 0.0;
  if (pumps) {
    os << "\n[pumps]\n# node phase count rate[bbl/h]\n";
    for (const auto& n : inst.nodes)
      for (std::size_t p = 0; p < n.phases.size(); ++p)
        if (n.phases[p].pumps != 0 || n.phases[p].pump_rate != 0.0)
          os << n.id << ' ' << p + 1 << ' ' << n.phases[p].pumps << ' ' << format_number(n.phases[p].pump_rate) << "\n";
  }

  os << "\n[arcs]\n# mode tail head length[mi] speed[mi/h] lanes capacity[v/h] time_cost[$/((v/h)h)] flow_cost[$/(v/h)] p=1.."
     << P << "\n";
  for (const auto& a : inst.arcs) {
    os << inst.modes.at(a.mode).id << ' ' << inst.nodes.at(a.tail).id << ' ' << inst.nodes.at(a.head).id << ' '
       << format_number(a.length) << ' ' << format_number(a.speed) << ' ' << a.lanes << ' '
       << (a.capacity ? format_number(*a.capacity) : std::string("-")) << ' ' << format_number(a.time_cost);
    for (int p = 0; p < P; ++p)
      os << ' ' << format_number(p < static_cast<int>(a.flow_cost.size()) ? a.flow_cost[p] : 0.0);
    os << "\n";
  }

  if (!inst.carrier_supply.empty()) {
    os << "\n[carrier_supply]\n# mode phase carrier node b[bbl/h]\n";
    for (const auto& [k, v] : inst.carrier_supply) {
      check_token(k.carrier, "carrier label");
      os << inst.modes.at(k.mode).id << ' ' << k.phase << ' ' << k.carrier << ' ' << inst.nodes.at(k.node).id << ' '
         << format_number(v) << "\n";
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Instance parser

namespace {

class LineReader {
 public:
  LineReader(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

  // Next noncomment line split into tokens; false at end.
  bool next(std::vector<std::string>& tokens) {
    while (pos_ < text_.size()) {
      const auto end = text_.find('\n', pos_);
      std::string_view line = text_.substr(pos_, end == std::string_view::npos ? std::string_view::npos : end - pos_);
      pos_ = end == std::string_view::npos ? text_.size() : end + 1;
      ++line_;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      tokens.clear();
      std::istringstream is{std::string(line)};
      for (std::string t; is >> t;) tokens.push_back(std::move(t));
      if (!tokens.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& message) const { throw FormatError(source_, line_, message); }

  double number(const std::string& tok, const char* field) const {
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || !std::isfinite(v))
      fail(std::string("field '") + field + "': expected a number, got '" + tok + "'");
    return v;
  }

  long integer(const std::string& tok, const char* field) const {
    long v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
      fail(std::string("field '") + field + "': expected an integer, got '" + tok + "'");
    return v;
  }

  void arity(const std::vector<std::string>& t, std::size_t n, const char* section) const {
    if (t.size() != n)
      fail(std::string("[") + section + "] expects " + std::to_string(n) + " fields, found " + std::to_string(t.size()));
  }

 private:
  std::string_view text_;
  std::string source_;
  std::size_t pos_ = 0;
  int line_ = 0;
};

}  // namespace

NetworkInstance parse_instance(std::string_view text, const std::string& source) {
  LineReader in(text, source);
  std::vector<std::string> t;
  if (!in.next(t) || t.size() != 2 || t[0] != "dadnet-instance") in.fail("missing 'dadnet-instance <version>' header");
  if (t[1] != "1") in.fail("unsupported format version '" + t[1] + "'");

  NetworkInstance inst;
  std::string section;
  std::map<std::string, ModeIndex> modes;
  std::map<std::string, NodeIndex> nodes;
  auto mode_of = [&](const std::string& id) {
    auto it = modes.find(id);
    if (it == modes.end()) in.fail("unknown mode '" + id + "'");
    return it->second;
  };
  auto node_of = [&](const std::string& id) {
    auto it = nodes.find(id);
    if (it == nodes.end()) in.fail("unknown node '" + id + "'");
    return it->second;
  };
  auto phase_of = [&](const std::string& tok) {
    const long p = in.integer(tok, "phase");
    if (p < 1 || p > inst.phase_count) in.fail("phase " + tok + " out of range 1.." + std::to_string(inst.phase_count));
    return static_cast<Phase>(p);
  };

  while (in.next(t)) {
    if (t[0].front() == '[') {
      if (t.size() != 1 || t[0].back() != ']') in.fail("malformed section header");
      section = t[0].substr(1, t[0].size() - 2);
      static const std::vector<std::string> known{"modes", "carriers", "nodes", "node_modes", "pumps", "arcs",
                                                  "carrier_supply"};
      if (std::find(known.begin(), known.end(), section) == known.end()) in.fail("unknown section [" + section + "]");
      continue;
    }
    const auto P = static_cast<std::size_t>(inst.phase_count);
    if (section.empty()) {
      in.arity(t, 2, "header");
      const long v = in.integer(t[1], t[0].c_str());
      if (t[0] == "phases") {
        if (v < 1) in.fail("phases must be >= 1");
        inst.phase_count = static_cast<int>(v);
      } else if (t[0] == "bpr_pieces") {
        inst.bpr_pieces = static_cast<int>(v);
      } else {
        in.fail("unknown header key '" + t[0] + "'");
      }
    } else if (section == "modes") {
      in.arity(t, 3, "modes");
      if (!modes.emplace(t[0], inst.modes.size()).second) in.fail("duplicate mode '" + t[0] + "'");
      inst.modes.push_back(Mode{t[0], in.number(t[1], "std_vehicle_length"), in.number(t[2], "max_trip_time")});
      inst.carrier_profiles.emplace_back(P, CarrierProfile{});
    } else if (section == "carriers") {
      in.arity(t, 4, "carriers");
      const auto m = mode_of(t[0]);
      const auto p = phase_of(t[1]);
      inst.carrier_profiles[m][p - 1] = CarrierProfile{in.number(t[2], "vehicle_length"), in.number(t[3], "load"), 0.0};
    } else if (section == "nodes") {
      in.arity(t, 4 + P, "nodes");
      NodeRecord n;
      n.id = t[0];
      try {
        n.role = parse_role(t[1]);
      } catch (const std::exception&) {
        in.fail("unknown role '" + t[1] + "'");
      }
      if (t[2] != "-" || t[3] != "-") n.coordinates = Coordinates{in.number(t[2], "x"), in.number(t[3], "y")};
      for (std::size_t p = 0; p < P; ++p) n.phases.push_back(PhaseSupply{in.number(t[4 + p], "b^p"), 0, 0.0});
      n.modes.resize(inst.modes.size());
      if (!nodes.emplace(n.id, inst.nodes.size()).second) in.fail("duplicate node '" + n.id + "'");
      inst.nodes.push_back(std::move(n));
    } else if (section == "node_modes") {
      in.arity(t, 2 + 2 * P, "node_modes");
      auto& n = inst.nodes[node_of(t[0])];
      const auto m = mode_of(t[1]);
      n.modes.resize(inst.modes.size());
      if (n.modes[m].member) in.fail("duplicate membership of '" + t[0] + "' in mode '" + t[1] + "'");
      n.modes[m].member = true;
      for (std::size_t p = 0; p < P; ++p)
        n.modes[m].phases.push_back(ModePhaseSupply{in.number(t[2 + p], "b^mp"), in.number(t[2 + P + p], "penalty")});
    } else if (section == "pumps") {
      in.arity(t, 4, "pumps");
      auto& n = inst.nodes[node_of(t[0])];
      const auto p = phase_of(t[1]);
      n.phases[p - 1].pumps = static_cast<int>(in.integer(t[2], "pump count"));
      n.phases[p - 1].pump_rate = in.number(t[3], "pump rate");
    } else if (section == "arcs") {
      in.arity(t, 8 + P, "arcs");
      ArcRecord a;
      a.mode = mode_of(t[0]);
      a.tail = node_of(t[1]);
      a.head = node_of(t[2]);
      a.length = in.number(t[3], "length");
      a.speed = in.number(t[4], "speed");
      a.lanes = static_cast<int>(in.integer(t[5], "lanes"));
      if (t[6] != "-") a.capacity = in.number(t[6], "capacity");
      a.time_cost = in.number(t[7], "time_cost");
      for (std::size_t p = 0; p < P; ++p) a.flow_cost.push_back(in.number(t[8 + p], "flow_cost"));
      inst.arcs.push_back(std::move(a));
    } else if (section == "carrier_supply") {
      in.arity(t, 5, "carrier_supply");
      CarrierSupplyKey k{mode_of(t[0]), phase_of(t[1]), t[2], node_of(t[3])};
      if (!inst.carrier_supply.emplace(k, in.number(t[4], "b^cmp")).second) in.fail("duplicate carrier supply entry");
    }
  }
  for (auto& n : inst.nodes) n.modes.resize(inst.modes.size());
  inst.canonicalize();
  require_valid(inst);
  derive_constants(inst);
  return inst;
}

NetworkInstance load_instance(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::runtime_error& e) {
    throw InstanceError(e.what());
  }
  return parse_instance(text, path);
}

void save_instance(const NetworkInstance& instance, const std::string& path) {
  write_file_atomic(path, write_instance(instance));
}

// ---------------------------------------------------------------------------
// Scenarios

namespace {

BigMPolicy parse_policy(const std::string& s) {
  if (s == "derived") return BigMPolicy::Derived;
  if (s == "penalty") return BigMPolicy::Penalty;
  if (s == "fixed") return BigMPolicy::Fixed;
  throw InstanceError("unknown big-M policy '" + s + "'");
}

std::string policy_name(BigMPolicy p) {
  switch (p) {
    case BigMPolicy::Derived: return "derived";
    case BigMPolicy::Penalty: return "penalty";
    case BigMPolicy::Fixed: return "fixed";
  }
  return "?";
}

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InstanceError(std::string(what) + ": " + e.what());
  }
}

std::vector<int> int_list(const json& j) {
  if (j.is_number_integer()) return {j.get<int>()};
  return j.get<std::vector<int>>();
}

}  // namespace

GeneratorSpec parse_generator(const json& j) {
  return guarded("generator", [&] {
    GeneratorSpec s;
    try {
      s.family = parse_family(j.at("family").get<std::string>());
    } catch (const GeneratorError& e) {
      throw InstanceError(e.what());
    }
    s.nodes = j.value("nodes", s.nodes);
    s.gamma = j.value("gamma", s.gamma);
    if (j.contains("law")) {
      const auto& l = j["law"];
      ExponentialLaw law = builtin_defaults().exponential;
      law.a0 = l.value("a0", law.a0);
      law.amplitude = l.value("A", law.amplitude);
      law.width = l.value("w", law.width);
      law.center = l.value("k_c", law.center);
      law.k_max = l.value("k_max", law.k_max);
      s.law = law;
    }
    s.rows = j.value("rows", s.rows);
    s.cols = j.value("cols", s.cols);
    s.keep = j.value("keep", s.keep);
    s.diagonal = j.value("diagonal", s.diagonal);
    s.seed = j.value("seed", s.seed);
    s.modes = j.value("modes", s.modes);
    s.overlap = j.value("overlap", s.overlap);
    if (j.contains("roles")) {
      const auto& r = j["roles"];
      if (r.contains("fuel_fraction")) s.roles.fuel_fraction = r["fuel_fraction"].get<double>();
      if (r.contains("depots")) s.roles.depot_count = r["depots"].get<int>();
      if (r.contains("stations")) s.roles.station_count = r["stations"].get<int>();
      if (r.contains("customers")) s.roles.customer_count = r["customers"].get<int>();
    }
    return s;
  });
}

json to_json(const GeneratorSpec& s) {
  json j;
  j["family"] = std::string(to_string(s.family));
  if (s.family == GraphFamily::Grerec) {
    j["rows"] = s.rows;
    j["cols"] = s.cols;
    j["keep"] = s.keep;
    j["diagonal"] = s.diagonal;
  } else {
    j["nodes"] = s.nodes;
  }
  if (s.family == GraphFamily::PowerLaw) j["gamma"] = s.gamma;
  if (s.family == GraphFamily::Exponential && s.law)
    j["law"] = {{"a0", s.law->a0}, {"A", s.law->amplitude}, {"w", s.law->width}, {"k_c", s.law->center},
                {"k_max", s.law->k_max}};
  j["seed"] = s.seed;
  if (s.modes != 1) {
    j["modes"] = s.modes;
    j["overlap"] = s.overlap;
  }
  json r = json::object();
  if (s.roles.fuel_fraction) r["fuel_fraction"] = *s.roles.fuel_fraction;
  if (s.roles.depot_count) r["depots"] = *s.roles.depot_count;
  if (s.roles.station_count) r["stations"] = *s.roles.station_count;
  if (s.roles.customer_count) r["customers"] = *s.roles.customer_count;
  if (!r.empty()) j["roles"] = r;
  return j;
}

ScenarioFile parse_scenario(const json& j) {
  return guarded("scenario", [&] {
    ScenarioFile s;
    s.name = j.value("name", s.name);
    if (j.contains("instance")) s.instance = j["instance"].get<std::string>();
    if (j.contains("generator")) s.generator = parse_generator(j["generator"]);
    if (j.contains("groups")) {
      for (const auto& g : j["groups"]) {
        for (const auto& [key, _] : g.items())
          if (key != "mode" && key != "phase" && key != "attackable" && key != "reserve" && key != "reserve_count" &&
              key != "defense_budget" && key != "reserve_budget" && key != "attack_budget")
            throw InstanceError("scenario: unknown group key '" + key + "'");
        GroupSpec gs;
        gs.mode = g.value("mode", std::string());
        gs.phase = g.value("phase", 1);
        if (g.contains("attackable")) {
          if (g["attackable"].is_string()) {
            if (g["attackable"].get<std::string>() != "all")
              throw InstanceError("scenario: 'attackable' must be a list of node ids or \"all\"");
          } else {
            gs.attack_all = false;
            gs.attackable = g["attackable"].get<std::vector<std::string>>();
          }
        }
        if (g.contains("reserve")) {
          if (g["reserve"].is_number_integer())
            gs.reserve_count = g["reserve"].get<int>();
          else
            gs.reserve = g["reserve"].get<std::vector<std::string>>();
        }
        gs.reserve_count = g.value("reserve_count", gs.reserve_count);
        gs.defense_budget = g.value("defense_budget", gs.defense_budget);
        gs.reserve_budget = g.value("reserve_budget", gs.reserve_budget);
        gs.attack_budget = g.value("attack_budget", gs.attack_budget);
        s.groups.push_back(std::move(gs));
      }
    }
    if (j.contains("big_m")) {
      const auto& b = j["big_m"];
      s.big_m.policy = parse_policy(b.value("policy", std::string("derived")));
      s.big_m.margin = b.value("margin", s.big_m.margin);
      s.big_m.value = b.value("value", s.big_m.value);
    }
    s.gap_tolerance = j.value("gap_tolerance", s.gap_tolerance);
    s.time_limit = j.value("time_limit_s", s.time_limit);
    s.max_iterations = j.value("max_iterations", s.max_iterations);
    s.pump_limits = j.value("pump_limits", s.pump_limits);
    s.prune_carriers = j.value("prune_carriers", s.prune_carriers);
    if (j.contains("sweep")) {
      const auto& w = j["sweep"];
      BudgetSweep sw;
      sw.defense = int_list(w.at("defense"));
      sw.reserve = int_list(w.at("reserve"));
      sw.attack = int_list(w.at("attack"));
      s.sweep = sw;
    }
    return s;
  });
}

ScenarioFile load_scenario(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::runtime_error& e) {
    throw InstanceError(e.what());
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InstanceError(path + ": " + e.what());
  }
  ScenarioFile s = parse_scenario(j);
  if (s.instance) {
    const std::filesystem::path p(*s.instance);
    if (p.is_relative()) s.instance = (std::filesystem::path(path).parent_path() / p).lexically_normal().string();
  }
  return s;
}

json to_json(const ScenarioFile& s) {
  json j;
  j["name"] = s.name;
  if (s.instance) j["instance"] = *s.instance;
  if (s.generator) j["generator"] = to_json(*s.generator);
  j["groups"] = json::array();
  for (const auto& g : s.groups) {
    json jg;
    if (!g.mode.empty()) jg["mode"] = g.mode;
    jg["phase"] = g.phase;
    if (g.attack_all)
      jg["attackable"] = "all";
    else
      jg["attackable"] = g.attackable;
    if (!g.reserve.empty())
      jg["reserve"] = g.reserve;
    else
      jg["reserve"] = g.reserve_count;
    jg["defense_budget"] = g.defense_budget;
    jg["reserve_budget"] = g.reserve_budget;
    jg["attack_budget"] = g.attack_budget;
    j["groups"].push_back(jg);
  }
  j["big_m"] = {{"policy", policy_name(s.big_m.policy)}, {"margin", s.big_m.margin}, {"value", s.big_m.value}};
  j["gap_tolerance"] = s.gap_tolerance;
  j["time_limit_s"] = s.time_limit;
  j["max_iterations"] = s.max_iterations;
  j["pump_limits"] = s.pump_limits;
  j["prune_carriers"] = s.prune_carriers;
  if (s.sweep) j["sweep"] = {{"defense", s.sweep->defense}, {"reserve", s.sweep->reserve}, {"attack", s.sweep->attack}};
  return j;
}

ScenarioConfig resolve_scenario(const ScenarioFile& file, const NetworkInstance& inst) {
  ScenarioConfig sc;
  sc.name = file.name;
  sc.big_m = file.big_m;
  sc.gap_tolerance = file.gap_tolerance;
  sc.time_limit = file.time_limit;
  sc.max_iterations = file.max_iterations;
  sc.pump_limits = file.pump_limits;
  sc.prune_carriers = file.prune_carriers;

  std::vector<GroupSpec> groups = file.groups;
  if (groups.empty()) {
    GroupSpec g;
    g.reserve_count = 1;
    groups.push_back(g);
  }
  for (const auto& gs : groups) {
    InterdictionGroup g;
    if (gs.mode.empty()) {
      if (inst.modes.empty()) throw InstanceError("scenario: instance has no modes");
      g.mode = 0;
    } else {
      const auto m = inst.find_mode(gs.mode);
      if (!m) throw InstanceError("scenario: unknown mode '" + gs.mode + "'");
      g.mode = *m;
    }
    g.phase = gs.phase;
    if (g.phase < 1 || g.phase > inst.phase_count)
      throw InstanceError("scenario: phase " + std::to_string(g.phase) + " out of range");
    auto lookup = [&](const std::string& id) {
      const auto i = inst.find_node(id);
      if (!i) throw InstanceError("scenario: unknown node '" + id + "'");
      return *i;
    };
    const auto supply = supply_nodes(inst, g.mode, g.phase);
    if (!gs.reserve.empty()) {
      for (const auto& id : gs.reserve) g.reserve.push_back(lookup(id));
    } else if (gs.reserve_count > 0) {
      if (static_cast<std::size_t>(gs.reserve_count) > supply.size())
        throw InstanceError("scenario: reserve count exceeds the " + std::to_string(supply.size()) + " supply nodes");
      std::vector<NodeIndex> by_id = supply;
      std::sort(by_id.begin(), by_id.end(), [&](NodeIndex a, NodeIndex b) { return inst.nodes[a].id < inst.nodes[b].id; });
      g.reserve.assign(by_id.end() - gs.reserve_count, by_id.end());
    }
    std::sort(g.reserve.begin(), g.reserve.end());
    if (gs.attack_all) {
      for (NodeIndex i : supply)
        if (!std::binary_search(g.reserve.begin(), g.reserve.end(), i)) g.attackable.push_back(i);
    } else {
      for (const auto& id : gs.attackable) g.attackable.push_back(lookup(id));
    }
    std::sort(g.attackable.begin(), g.attackable.end());
    g.defense_budget = gs.defense_budget;
    g.reserve_budget = gs.reserve_budget;
    g.attack_budget = gs.attack_budget;
    sc.groups.push_back(std::move(g));
  }
  require_valid(inst, sc);
  return sc;
}

std::vector<ScenarioConfig> expand_sweep(const ScenarioFile& file, const NetworkInstance& inst) {
  if (!file.sweep) return {resolve_scenario(file, inst)};
  std::vector<ScenarioConfig> out;
  for (int d : file.sweep->defense)
    for (int o : file.sweep->reserve)
      for (int a : file.sweep->attack) {
        ScenarioFile cell = file;
        cell.sweep.reset();
        if (cell.groups.empty()) {
          GroupSpec g;
          g.reserve_count = 1;
          cell.groups.push_back(g);
        }
        for (auto& g : cell.groups) {
          g.defense_budget = d;
          g.reserve_budget = o;
          g.attack_budget = a;
        }
        cell.name = file.name + "_d" + std::to_string(d) + "_o" + std::to_string(o) + "_a" + std::to_string(a);
        out.push_back(resolve_scenario(cell, inst));
      }
  return out;
}

ScenarioConfig auto_scenario(const NetworkInstance& inst, int nd, int no, int na, int reserve_count, ModeIndex mode,
                             Phase phase) {
  ScenarioFile f;
  f.name = "auto";
  GroupSpec g;
  g.mode = inst.modes.at(mode).id;
  g.phase = phase;
  g.reserve_count = reserve_count;
  g.defense_budget = nd;
  g.reserve_budget = no;
  g.attack_budget = na;
  f.groups.push_back(g);
  return resolve_scenario(f, inst);
}

ScenarioFile echo_scenario(const ScenarioConfig& sc, const NetworkInstance& inst) {
  ScenarioFile f;
  f.name = sc.name;
  for (const auto& g : sc.groups) {
    GroupSpec gs;
    gs.mode = inst.modes.at(g.mode).id;
    gs.phase = g.phase;
    gs.attack_all = false;
    for (NodeIndex i : g.attackable) gs.attackable.push_back(inst.nodes.at(i).id);
    for (NodeIndex i : g.reserve) gs.reserve.push_back(inst.nodes.at(i).id);
    gs.defense_budget = g.defense_budget;
    gs.reserve_budget = g.reserve_budget;
    gs.attack_budget = g.attack_budget;
    f.groups.push_back(std::move(gs));
  }
  f.big_m = sc.big_m;
  f.gap_tolerance = sc.gap_tolerance;
  f.time_limit = sc.time_limit;
  f.max_iterations = sc.max_iterations;
  f.pump_limits = sc.pump_limits;
  f.prune_carriers = sc.prune_carriers;
  return f;
}

// ---------------------------------------------------------------------------
// Results

namespace {

std::vector<std::string> selected_ids(const NetworkInstance& inst, const std::vector<NodeIndex>& nodes,
                                      const std::vector<Selection>& sel, std::size_t g) {
  std::vector<std::string> out;
  if (g >= sel.size()) return out;
  for (std::size_t k = 0; k < sel[g].size() && k < nodes.size(); ++k)
    if (sel[g][k]) out.push_back(inst.nodes.at(nodes[k]).id);
  return out;
}

json null_if_infinite(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json plans_to_json(const NetworkInstance& inst, const ScenarioConfig& sc, const DefensePlan& defense,
                   const AttackPlan& attack) {
  json out = json::array();
  for (std::size_t g = 0; g < sc.groups.size(); ++g) {
    const auto& grp = sc.groups[g];
    out.push_back({{"mode", inst.modes.at(grp.mode).id},
                   {"phase", grp.phase},
                   {"defend", selected_ids(inst, grp.attackable, defense.defend, g)},
                   {"open", selected_ids(inst, grp.reserve, defense.open, g)},
                   {"attack", selected_ids(inst, grp.attackable, attack.attack, g)}});
  }
  return out;
}

json iteration_to_json(const NetworkInstance& inst, const ScenarioConfig& sc, const IterationRecord& r) {
  return {{"iteration", r.iteration},
          {"master_value_usd", r.master_value},
          {"lower_bound_usd", r.lower_bound},
          {"subproblem_value_usd", r.subproblem_value},
          {"upper_bound_usd", r.upper_bound},
          {"repeated_attack", r.repeated_attack},
          {"big_m_ratio", r.big_m_ratio},
          {"master_time_s", r.master_time},
          {"subproblem_time_s", r.subproblem_time},
          {"plans", plans_to_json(inst, sc, r.defense, r.attack)}};
}

json stats_to_json(const NetworkStats& st) {
  return {{"nodes", st.node_count},
          {"edges", st.edge_count},
          {"undirected_edges", st.undirected_edge_count},
          {"density", st.density},
          {"avg_degree", st.avg_degree},
          {"heterogeneity", st.heterogeneity},
          {"max_degree", st.max_degree},
          {"avg_betweenness", st.avg_betweenness}};
}

json results_to_json(const NetworkInstance& inst, const ScenarioConfig& sc, const DADSolution& sol,
                     const ResultsContext& ctx) {
  ScenarioFile echo = echo_scenario(sc, inst);
  echo.instance = ctx.instance_path;
  echo.generator = ctx.generator;
  const auto overlap = selection_overlap(sc, sol.defense, sol.worst_attack);
  json j;
  j["format"] = "dadnet-results 1";
  j["scenario"] = to_json(echo);
  j["status"] = std::string(to_string(sol.status));
  j["certified"] = sol.certified;
  j["objective_usd"] = null_if_infinite(sol.objective);
  j["lower_bound_usd"] = null_if_infinite(sol.lower_bound);
  j["upper_bound_usd"] = null_if_infinite(sol.upper_bound);
  j["gap_usd"] = null_if_infinite(sol.gap);
  j["iterations"] = sol.iterations;
  j["wall_time_s"] = sol.wall_time;
  j["plans"] = plans_to_json(inst, sc, sol.defense, sol.worst_attack);
  j["generated_attacks"] = json::array();
  for (const auto& a : sol.attacks) j["generated_attacks"].push_back(plans_to_json(inst, sc, empty_defense(sc), a));
  j["selection_overlap"] = {{"defense_reserve", overlap.defense_reserve},
                            {"defense_attack", overlap.defense_attack},
                            {"reserve_attack", overlap.reserve_attack},
                            {"disjoint", overlap.disjoint()}};
  j["trace"] = json::array();
  for (const auto& r : sol.trace) j["trace"].push_back(iteration_to_json(inst, sc, r));
  j["solver"] = {{"backend", sol.backend},
                 {"tolerances",
                  {{"primal_feasibility", sol.tolerances.primal_feasibility},
                   {"dual_feasibility", sol.tolerances.dual_feasibility},
                   {"mip_feasibility", sol.tolerances.mip_feasibility},
                   {"mip_rel_gap", sol.tolerances.mip_rel_gap},
                   {"mip_abs_gap", sol.tolerances.mip_abs_gap}}},
                 {"big_m_ok", sol.big_m_ok},
                 {"duality_residual_usd", sol.duality_residual}};
  j["instance"] = {{"nodes", inst.nodes.size()}, {"arcs", inst.arcs.size()}, {"modes", inst.modes.size()},
                   {"phases", inst.phase_count}};
  if (ctx.stats) j["stats"] = stats_to_json(*ctx.stats);
  return j;
}

std::string trace_jsonl(const NetworkInstance& inst, const ScenarioConfig& sc, const DADSolution& sol) {
  std::string out;
  for (const auto& r : sol.trace) {
    json j = iteration_to_json(inst, sc, r);
    j["scenario"] = sc.name;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace dadnet
