#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "dadnet/io.hpp"

namespace dadnet {

namespace {

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ';') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

double to_number(const std::string& tok, const std::string& source, int line, const char* field) {
  double v = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || !std::isfinite(v))
    throw FormatError(source, line, std::string("field '") + field + "': expected a number, got '" + tok + "'");
  return v;
}

template <class F>
void for_each_line(std::string_view text, F&& f) {
  int line = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view l = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() : end + 1;
    ++line;
    f(l, line);
  }
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

NetworkInstance parse_tntp(std::string_view net, std::optional<std::string_view> node_text, const TntpOptions& opt,
                           const NetgenDefaults& d) {
  const std::string source = "tntp";
  std::size_t declared_nodes = 0;
  std::optional<std::size_t> declared_links;
  bool in_data = false;

  struct Link {
    std::string tail, head;
    double capacity, length, fft, speed, toll;
    int line;
  };
  std::vector<Link> links;
  std::size_t max_id = 0;

  for_each_line(net, [&](std::string_view raw, int line) {
    const std::string l = trim(raw);
    if (l.empty() || l[0] == '~') return;
    if (!in_data) {
      if (l[0] == '<') {
        const auto close = l.find('>');
        if (close == std::string::npos) throw FormatError(source, line, "malformed metadata tag");
        const std::string key = l.substr(1, close - 1);
        const std::string value = trim(std::string_view(l).substr(close + 1));
        if (key == "END OF METADATA") {
          in_data = true;
        } else if (key == "NUMBER OF NODES") {
          declared_nodes = static_cast<std::size_t>(to_number(value, source, line, "NUMBER OF NODES"));
        } else if (key == "NUMBER OF LINKS") {
          declared_links = static_cast<std::size_t>(to_number(value, source, line, "NUMBER OF LINKS"));
        }
        return;
      }
      in_data = true;  // files without a metadata block
    }
    const auto f = split_fields(l);
    if (f.empty()) return;
    if (f.size() < 5) throw FormatError(source, line, "link row needs at least init, term, capacity, length, fft");
    Link k;
    k.tail = f[0];
    k.head = f[1];
    k.capacity = to_number(f[2], source, line, "capacity");
    k.length = to_number(f[3], source, line, "length");
    k.fft = to_number(f[4], source, line, "free flow time");
    k.speed = f.size() > 7 ? to_number(f[7], source, line, "speed") : 0.0;
    k.toll = f.size() > 8 ? to_number(f[8], source, line, "toll") : 0.0;
    k.line = line;
    if (!(k.capacity > 0.0)) throw FormatError(source, line, "link " + k.tail + "->" + k.head + " has zero capacity");
    if (!(k.length > 0.0)) throw FormatError(source, line, "link " + k.tail + "->" + k.head + " has zero length");
    if (k.tail == k.head) throw FormatError(source, line, "self-loop link " + k.tail);
    for (const auto* id : {&k.tail, &k.head}) {
      double v = 0.0;
      auto res = std::from_chars(id->data(), id->data() + id->size(), v);
      if (res.ec == std::errc() && v > 0 && v == std::floor(v)) max_id = std::max(max_id, static_cast<std::size_t>(v));
    }
    links.push_back(std::move(k));
  });
  if (declared_links && *declared_links != links.size())
    throw FormatError(source, 0,
                      "metadata declares " + std::to_string(*declared_links) + " links, found " +
                          std::to_string(links.size()));

  std::map<std::string, Coordinates> coords;
  if (node_text) {
    bool header = true;
    for_each_line(*node_text, [&](std::string_view raw, int line) {
      const auto f = split_fields(trim(raw));
      if (f.empty()) return;
      if (header) {
        header = false;
        double probe = 0.0;
        if (std::from_chars(f[0].data(), f[0].data() + f[0].size(), probe).ec != std::errc()) return;
      }
      if (f.size() < 3) throw FormatError("tntp nodes", line, "node row needs id, x, y");
      coords[f[0]] = Coordinates{to_number(f[1], "tntp nodes", line, "x"), to_number(f[2], "tntp nodes", line, "y")};
    });
  }

  NetworkInstance inst;
  inst.phase_count = d.phases;
  inst.bpr_pieces = d.bpr_pieces;
  inst.modes.push_back(Mode{"road", d.standard_vehicle_length, d.max_trip_time});
  inst.carrier_profiles.push_back(d.carriers);
  const std::vector<double> zeros(d.phases, 0.0);

  std::map<std::string, NodeIndex> index;
  auto add_node = [&](const std::string& id) {
    auto it = index.find(id);
    if (it != index.end()) return it->second;
    NodeRecord n = make_node(id, NodeRole::Junction, 1, zeros, zeros);
    if (auto c = coords.find(id); c != coords.end()) n.coordinates = c->second;
    inst.nodes.push_back(std::move(n));
    return index[id] = inst.nodes.size() - 1;
  };
  for (std::size_t i = 1; i <= std::max(declared_nodes, max_id); ++i) add_node(std::to_string(i));
  for (const auto& k : links) {
    ArcRecord a;
    a.tail = add_node(k.tail);
    a.head = add_node(k.head);
    a.length = k.length * opt.length_to_miles;
    if (k.speed > 0.0)
      a.speed = k.speed;
    else if (k.fft > 0.0)
      a.speed = a.length / (k.fft * opt.time_to_hours);
    else
      a.speed = opt.default_speed;
    a.lanes = 1;
    a.capacity = k.capacity;
    for (int p = 0; p < d.phases; ++p) a.flow_cost.push_back(d.cost_per_mile[p] * a.length + k.toll);
    a.time_cost = d.time_cost;
    inst.arcs.push_back(a);
  }
  inst.canonicalize();
  derive_constants(inst);
  return inst;
}

NetworkInstance load_tntp_like(const std::string& net_path, const TntpOptions& options, const NetgenDefaults& d) {
  std::string net, nodes;
  try {
    net = read_file(net_path);
    if (options.node_file) nodes = read_file(*options.node_file);
  } catch (const std::runtime_error& e) {
    throw InstanceError(e.what());
  }
  try {
    return parse_tntp(net, options.node_file ? std::optional<std::string_view>(nodes) : std::nullopt, options, d);
  } catch (const FormatError& e) {
    throw InstanceError(net_path + ": " + e.what());
  }
}

}  // namespace dadnet
