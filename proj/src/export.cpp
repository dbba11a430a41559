#include <algorithm>
#include <sstream>

#include "dadnet/io.hpp"

namespace dadnet {

using nlohmann::json;

std::vector<std::vector<std::string>> node_tags(const NetworkInstance& inst, const PlotPlans& plans) {
  std::vector<std::vector<std::string>> tags(inst.nodes.size());
  if (!plans.scenario) return tags;
  std::vector<char> d(inst.nodes.size(), 0), o(inst.nodes.size(), 0), a(inst.nodes.size(), 0);
  const auto& groups = plans.scenario->groups;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto mark = [&](std::vector<char>& out, const std::vector<NodeIndex>& nodes, const std::vector<Selection>* sel) {
      if (!sel || g >= sel->size()) return;
      for (std::size_t k = 0; k < (*sel)[g].size() && k < nodes.size(); ++k)
        if ((*sel)[g][k]) out.at(nodes[k]) = 1;
    };
    mark(d, groups[g].attackable, plans.defense ? &plans.defense->defend : nullptr);
    mark(o, groups[g].reserve, plans.defense ? &plans.defense->open : nullptr);
    mark(a, groups[g].attackable, plans.attack ? &plans.attack->attack : nullptr);
  }
  for (std::size_t i = 0; i < inst.nodes.size(); ++i) {
    if (d[i]) tags[i].push_back("defense");
    if (o[i]) tags[i].push_back("reserve");
    if (a[i]) tags[i].push_back("attack");
  }
  return tags;
}

std::string tag_color(const std::vector<std::string>& tags) {
  if (tags.empty()) return "gray";
  if (tags.front() == "defense") return "blue";
  if (tags.front() == "reserve") return "green";
  return "red";
}

namespace {

std::vector<std::string> display_ids(const NetworkInstance& inst, const ExportOptions& opt) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < inst.nodes.size(); ++i)
    ids.push_back(opt.anonymize ? "v" + std::to_string(i + 1) : inst.nodes[i].id);
  return ids;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
  return out;
}

}  // namespace

std::string export_dot(const NetworkInstance& inst, const PlotPlans& plans, const ExportOptions& opt) {
  const auto ids = display_ids(inst, opt);
  const auto tags = node_tags(inst, plans);
  std::ostringstream os;
  os << "digraph dadnet {\n  node [shape=circle, style=filled, fillcolor=white];\n";
  for (std::size_t i = 0; i < inst.nodes.size(); ++i) {
    const auto& n = inst.nodes[i];
    os << "  " << quoted(ids[i]) << " [role=" << quoted(std::string(to_string(n.role)));
    if (!tags[i].empty()) os << ", tags=" << quoted(join(tags[i])) << ", fillcolor=" << tag_color(tags[i]);
    if (n.coordinates)
      os << ", pos=" << quoted(format_number(n.coordinates->x) + "," + format_number(n.coordinates->y) + "!");
    os << "];\n";
  }
  for (const auto& a : inst.arcs)
    os << "  " << quoted(ids[a.tail]) << " -> " << quoted(ids[a.head]) << " [mode=" << quoted(inst.modes[a.mode].id)
       << "];\n";
  os << "}\n";
  return os.str();
}

std::optional<std::string> export_geojson(const NetworkInstance& inst, const PlotPlans& plans,
                                          const ExportOptions& opt) {
  const bool any = std::any_of(inst.nodes.begin(), inst.nodes.end(), [](const auto& n) { return n.coordinates; });
  if (!any) return std::nullopt;
  const auto ids = display_ids(inst, opt);
  const auto tags = node_tags(inst, plans);
  json features = json::array();
  for (std::size_t i = 0; i < inst.nodes.size(); ++i) {
    const auto& n = inst.nodes[i];
    if (!n.coordinates) continue;
    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "Point"}, {"coordinates", {n.coordinates->x, n.coordinates->y}}}},
                        {"properties",
                         {{"id", ids[i]},
                          {"role", std::string(to_string(n.role))},
                          {"tags", tags[i]},
                          {"color", tag_color(tags[i])}}}});
  }
  for (const auto& a : inst.arcs) {
    const auto& t = inst.nodes[a.tail].coordinates;
    const auto& h = inst.nodes[a.head].coordinates;
    if (!t || !h) continue;
    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "LineString"}, {"coordinates", {{t->x, t->y}, {h->x, h->y}}}}},
                        {"properties",
                         {{"mode", inst.modes[a.mode].id},
                          {"tail", ids[a.tail]},
                          {"head", ids[a.head]},
                          {"length_mi", a.length},
                          {"speed_mph", a.speed},
                          {"lanes", a.lanes}}}});
  }
  return json{{"type", "FeatureCollection"}, {"features", features}}.dump(1) + "\n";
}

}  // namespace dadnet
