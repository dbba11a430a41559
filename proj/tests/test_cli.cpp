#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "dadnet/io.hpp"
#include "fixtures.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(DADNET_CLI) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

fs::path temp_dir(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("dadnet_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

}  // namespace

TEST(Cli, Backends) { EXPECT_EQ(run("backends"), 0); }

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("solve"), 2);
}

TEST(Cli, GenerateThenStats) {
  const auto dir = temp_dir("gen");
  const auto inst = (dir / "g.dadnet").string();
  ASSERT_EQ(run("generate --family grerec --rows 4 --cols 4 --seed 2 --out " + inst), 0);
  EXPECT_EQ(run("stats --json --instance " + inst), 0);
  EXPECT_EQ(run("generate --family grerec --keep 2"), 2);
}

TEST(Cli, SweepWritesFourFilesPerCell) {
  const auto dir = temp_dir("sweep");
  write(dir / "s.json", R"({"name": "g", "generator": {"family": "grerec", "rows": 3, "cols": 3, "seed": 5,
    "roles": {"depots": 3, "stations": 2, "customers": 1}},
    "groups": [{"reserve": 1}], "sweep": {"defense": [0, 1], "reserve": [1], "attack": [1]}})");
  ASSERT_EQ(run("solve --quiet --jobs 2 --scenario " + (dir / "s.json").string() + " --out " + (dir / "out").string()),
            0);
  for (const char* cell : {"g_d0_o1_a1", "g_d1_o1_a1"})
    for (const char* ext : {".results.json", ".trace.jsonl", ".dot", ".geojson"})
      EXPECT_TRUE(fs::exists(dir / "out" / (std::string(cell) + ext))) << cell << ext;
  const auto j = nlohmann::json::parse(dadnet::read_file((dir / "out" / "g_d1_o1_a1.results.json").string()));
  EXPECT_EQ(j["certified"], true);
  EXPECT_EQ(run("oracle --scenario " + (dir / "s.json").string()), 0);
  EXPECT_EQ(run("oracle --cap 2 --scenario " + (dir / "s.json").string()), 2);
}

TEST(Cli, ExitCodes) {
  const auto dir = temp_dir("codes");
  const auto inst = (dir / "sweep.dadnet").string();
  dadnet::save_instance(fixtures::sweep(), inst);
  write(dir / "ok.json", R"({"instance": "sweep.dadnet", "groups": [{"reserve": ["R1", "R2"]}]})");
  write(dir / "gap.json",
        R"({"instance": "sweep.dadnet", "max_iterations": 1,
            "groups": [{"reserve": ["R1", "R2"], "defense_budget": 2, "attack_budget": 2}]})");
  write(dir / "bad.json", R"({"instance": "sweep.dadnet", "groups": [{"reserve": ["nope"]}]})");
  write(dir / "broken.dadnet", "dadnet-instance 1\nphases x\n");
  const std::string out = " --quiet --out " + (dir / "out").string();
  EXPECT_EQ(run("solve --scenario " + (dir / "ok.json").string() + out), 0);
  EXPECT_EQ(run("solve --scenario " + (dir / "gap.json").string() + out), 4);
  EXPECT_TRUE(fs::exists(dir / "out" / "scenario.results.json"));
  EXPECT_EQ(run("solve --scenario " + (dir / "bad.json").string() + out), 2);
  EXPECT_EQ(run("solve --instance " + (dir / "broken.dadnet").string() + " --scenario " +
                (dir / "ok.json").string() + out),
            2);
  EXPECT_EQ(run("solve --backend nosuch --scenario " + (dir / "ok.json").string() + out), 3);
}
