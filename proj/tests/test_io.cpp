#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "dadnet/ccg.hpp"
#include "dadnet/io.hpp"
#include "dadnet/netgen.hpp"
#include "fixtures.hpp"

using namespace dadnet;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("dadnet_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string replace_first(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  if (pos != std::string::npos) s.replace(pos, from.size(), to);
  return s;
}

// Anaheim-sized TNTP: a two-way ring plus one-way chords i -> i + 7.
std::string synthetic_tntp(int nodes, int links) {
  std::ostringstream os;
  os << "<NUMBER OF ZONES> 38\n<NUMBER OF NODES> " << nodes << "\n<FIRST THRU NODE> 1\n<NUMBER OF LINKS> " << links
     << "\n<END OF METADATA>\n\n~ init term capacity length fft b power speed toll type ;\n";
  int written = 0;
  for (int i = 1; i <= nodes && written < links; ++i, ++written)
    os << "\t" << i << "\t" << (i % nodes) + 1 << "\t1800\t2640\t0.5\t0.15\t4\t0\t0\t1\t;\n";
  for (int i = 1; i <= nodes && written < links; ++i, ++written)
    os << "\t" << (i % nodes) + 1 << "\t" << i << "\t1800\t2640\t0.5\t0.15\t4\t0\t0\t1\t;\n";
  for (int i = 1; written < links; ++i, ++written)
    os << "\t" << i << "\t" << ((i + 6) % nodes) + 1 << "\t900\t5280\t1.2\t0.15\t4\t0\t0.5\t1\t;\n";
  return os.str();
}

}  // namespace

TEST(Io, InstanceRoundTrip) {
  GeneratorSpec spec;
  spec.rows = spec.cols = 5;
  spec.seed = 11;
  spec.modes = 2;
  for (const auto& inst : {fixtures::three_phase(), fixtures::sweep(), generate(spec)}) {
    const std::string text = write_instance(inst);
    const auto back = parse_instance(text);
    EXPECT_EQ(write_instance(back), text);
    EXPECT_EQ(back.nodes.size(), inst.nodes.size());
    EXPECT_EQ(back.arcs.size(), inst.arcs.size());
  }
}

TEST(Io, SaveAndLoad) {
  const auto dir = temp_dir("save");
  const auto path = (dir / "chain.dadnet").string();
  save_instance(fixtures::chain(), path);
  EXPECT_EQ(write_instance(load_instance(path)), write_instance(fixtures::chain()));
  EXPECT_THROW(load_instance((dir / "missing").string()), InstanceError);
}

TEST(Io, RejectsBadRows) {
  const std::string text = write_instance(fixtures::chain());
  // lanes column of the first arc
  const std::string arc_row = "truck D J 1 30 1 100";
  ASSERT_NE(text.find(arc_row), std::string::npos);
  EXPECT_THROW(parse_instance(replace_first(text, arc_row, "truck D J 1 30 -1 100")), InstanceError);
  EXPECT_THROW(parse_instance(replace_first(text, arc_row, "truck D J 1 thirty 1 100")), FormatError);
  EXPECT_THROW(parse_instance(replace_first(text, "dadnet-instance 1", "dadnet-instance 7")), FormatError);
  try {
    parse_instance(replace_first(text, arc_row, "truck D J 1 30"));
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_GT(e.line(), 0);
  }
}

TEST(Io, TntpTwoNode) {
  const std::string net =
      "<NUMBER OF NODES> 2\n<NUMBER OF LINKS> 2\n<END OF METADATA>\n"
      "1 2 1000 0.5 1.0 0.15 4 0 0 1 ;\n2 1 1000 0.5 1.0 0.15 4 0 0 1 ;\n";
  const auto inst = parse_tntp(net, std::string_view("node x y ;\n1 0 0 ;\n2 0.5 0 ;\n"));
  ASSERT_EQ(inst.nodes.size(), 2u);
  ASSERT_EQ(inst.arcs.size(), 2u);
  EXPECT_DOUBLE_EQ(inst.arc_capacity(0), 1000.0);
  // 0.5 mi in 1 minute
  EXPECT_DOUBLE_EQ(inst.arcs[0].speed, 30.0);
  ASSERT_TRUE(inst.nodes[1].coordinates);
  EXPECT_DOUBLE_EQ(inst.nodes[1].coordinates->x, 0.5);
}

TEST(Io, TntpAnaheimShape) {
  TntpOptions opt;
  opt.length_to_miles = 1.0 / 5280.0;
  const auto inst = parse_tntp(synthetic_tntp(416, 914), std::nullopt, opt);
  EXPECT_EQ(inst.nodes.size(), 416u);
  EXPECT_EQ(inst.arcs.size(), 914u);
  const auto roled = assign_roles(inst, {}, 1);
  EXPECT_GT(supply_nodes(roled, 0, 1).size(), 0u);
}

TEST(Io, TntpRejectsBadLinks) {
  const std::string head = "<NUMBER OF NODES> 2\n<END OF METADATA>\n";
  EXPECT_THROW(parse_tntp(head + "1 2 0 0.5 1.0 ;\n", std::nullopt), FormatError);
  EXPECT_THROW(parse_tntp(head + "1 2 10 0 1.0 ;\n", std::nullopt), FormatError);
  EXPECT_THROW(parse_tntp(head + "1 1 10 1 1.0 ;\n", std::nullopt), FormatError);
  EXPECT_THROW(parse_tntp(head + "1 2 10 ;\n", std::nullopt), FormatError);
  EXPECT_THROW(parse_tntp("<NUMBER OF LINKS> 3\n<END OF METADATA>\n1 2 10 1 1 ;\n", std::nullopt), FormatError);
}

TEST(Io, ScenarioResolution) {
  const auto inst = fixtures::sweep();
  const auto file = parse_scenario(nlohmann::json::parse(R"({
    "name": "s", "groups": [{"reserve": ["R1", "R2"], "defense_budget": 2}],
    "sweep": {"defense": [1, 2], "reserve": [1], "attack": [1, 2]}})"));
  const auto sc = resolve_scenario(file, inst);
  ASSERT_EQ(sc.groups.size(), 1u);
  EXPECT_EQ(sc.groups[0].attackable.size(), 4u);
  EXPECT_EQ(sc.groups[0].reserve.size(), 2u);
  EXPECT_EQ(sc.groups[0].defense_budget, 2);
  const auto cells = expand_sweep(file, inst);
  ASSERT_EQ(cells.size(), 4u);
  EXPECT_EQ(cells[3].name, "s_d2_o1_a2");

  const auto last = resolve_scenario(parse_scenario(nlohmann::json::parse(R"({"groups": [{"reserve": 2}]})")), inst);
  EXPECT_EQ(inst.nodes[last.groups[0].reserve[0]].id, "R1");
  EXPECT_EQ(inst.nodes[last.groups[0].reserve[1]].id, "R2");

  EXPECT_THROW(resolve_scenario(parse_scenario(nlohmann::json::parse(R"({"groups": [{"reserve": ["X"]}]})")), inst),
               InstanceError);
  EXPECT_THROW(parse_scenario(nlohmann::json::parse(R"({"groups": [{"budget": 1}]})")), InstanceError);
}

TEST(Io, ResultsReproduceFromEcho) {
  const auto inst = fixtures::two_depot();
  const auto sc = fixtures::two_depot_scenario(inst, 1, 1, 1);
  const auto sol = ccg_solve(inst, sc);
  const auto j = results_to_json(inst, sc, sol);
  EXPECT_EQ(j["format"], "dadnet-results 1");
  EXPECT_EQ(j["certified"], true);
  const auto again = resolve_scenario(parse_scenario(j["scenario"]), parse_instance(write_instance(inst)));
  EXPECT_NEAR(ccg_solve(inst, again).objective, j["objective_usd"].get<double>(), 1e-6);
  const std::string trace = trace_jsonl(inst, sc, sol);
  EXPECT_EQ(static_cast<int>(std::count(trace.begin(), trace.end(), '\n')), sol.iterations);
}

TEST(Io, Exports) {
  const auto inst = fixtures::two_depot();
  const auto sc = fixtures::two_depot_scenario(inst, 1, 1, 1);
  DefensePlan d = empty_defense(sc);
  AttackPlan a = empty_attack(sc);
  d.defend[0] = {1, 0};
  d.open[0] = {1};
  a.attack[0] = {0, 1};
  const PlotPlans plans{&sc, &d, &a};
  const auto tags = node_tags(inst, plans);
  EXPECT_EQ(tags[inst.node_index("D1")], std::vector<std::string>{"defense"});
  EXPECT_EQ(tag_color(tags[inst.node_index("R")]), "green");
  EXPECT_EQ(tag_color(tags[inst.node_index("D2")]), "red");
  const auto dot = export_dot(inst, plans);
  EXPECT_NE(dot.find("\"D1\" -> \"H\""), std::string::npos);
  const auto anon = export_dot(inst, plans, {true});
  EXPECT_EQ(anon.find("D1"), std::string::npos);
  EXPECT_FALSE(export_geojson(inst, plans).has_value());

  GeneratorSpec spec;
  spec.rows = spec.cols = 3;
  spec.seed = 1;
  const auto geo = export_geojson(generate(spec));
  ASSERT_TRUE(geo.has_value());
  const auto gj = nlohmann::json::parse(*geo);
  EXPECT_EQ(gj["type"], "FeatureCollection");
}

TEST(Io, AtomicWrite) {
  const auto dir = temp_dir("atomic");
  const auto path = (dir / "f.txt").string();
  write_file_atomic(path, "one");
  write_file_atomic(path, "two");
  EXPECT_EQ(read_file(path), "two");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++files;
  EXPECT_EQ(files, 1u);
}
