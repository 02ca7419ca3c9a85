#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "chainmf/json_io.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  static int counter = 0;
  const std::string path = ::testing::TempDir() + "cli_out_" + std::to_string(counter++) + ".txt";
  const std::string cmd = std::string(CHAINMF_CLI) + " " + args + " > " + path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  r.out = buf.str();
  return r;
}

using chainmf::Json;

}  // namespace

TEST(Cli, CollectionPasses) {
  auto r = run("collection -a 2,2");
  ASSERT_EQ(r.code, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["labels"].size(), 3u);
  EXPECT_EQ(j["schema_version"], chainmf::kSchemaVersion);
  auto r3 = run("collection -a 3");
  ASSERT_EQ(r3.code, 0);
  EXPECT_EQ(Json::parse(r3.out)["labels"].size(), 2u);
}

TEST(Cli, ConfigErrors) {
  EXPECT_EQ(run("collection -a 1,2").code, 2);
  EXPECT_EQ(run("checks -a ''").code, 2);
  EXPECT_EQ(run("collection -a 2,x").code, 2);
  EXPECT_EQ(run("collection").code, 2);
  EXPECT_EQ(run("collection -a 2 --format dot").code, 2);
  EXPECT_EQ(run("collection -a 2 --window 3,1").code, 2);
  EXPECT_EQ(run("hom -a 3 0 2").code, 2);
  EXPECT_EQ(run("frobnicate -a 2").code, 2);
}

TEST(Cli, Hom) {
  auto r = run("hom -a 3 0 1");
  ASSERT_EQ(r.code, 0);
  auto j = Json::parse(r.out);
  const int from = j["from"];
  for (std::size_t k = 0; k < j["dims"].size(); ++k)
    EXPECT_EQ(j["dims"][k].get<int>(), from + static_cast<int>(k) == 0 ? 1 : 0);
  auto rev = Json::parse(run("hom -a 3 1 0").out);
  for (const auto& d : rev["dims"]) EXPECT_EQ(d.get<int>(), 0);
  auto end = Json::parse(run("hom -a 2,2 0 0 --window -2,2").out);
  EXPECT_EQ(end["dims"], Json::array({0, 0, 1, 0, 0}));
}

TEST(Cli, Milnor) {
  auto j = Json::parse(run("milnor -a 2,2").out);
  EXPECT_EQ(j["recursion"], "3");
  EXPECT_EQ(j["weights"], "3");
  EXPECT_EQ(j["agree"], true);
  EXPECT_EQ(Json::parse(run("milnor -a 2").out)["recursion"], "1");
  auto r = run("milnor -a 2,1");
  EXPECT_EQ(r.code, 0);
  auto k = Json::parse(r.out);
  EXPECT_EQ(k["recursion"], "2");
  EXPECT_TRUE(k["weights"].is_null());
}

TEST(Cli, Quiver) {
  auto dot = run("quiver -a 3 --format dot");
  EXPECT_EQ(dot.code, 0);
  EXPECT_NE(dot.out.find("v0 -> v1"), std::string::npos);
  auto js = run("quiver -a 2,2 --format json");
  ASSERT_EQ(js.code, 0);
  auto q = chainmf::parse_quiver(js.out);
  EXPECT_EQ(q.vertices.size(), 3u);

  const std::string good = ::testing::TempDir() + "fixture_good.json";
  const std::string bad = ::testing::TempDir() + "fixture_bad.json";
  std::ofstream(good) << js.out;
  auto j = Json::parse(js.out);
  j["arrows"][0]["label"] = "tampered";
  std::ofstream(bad) << j.dump(2);
  EXPECT_EQ(run("quiver -a 2,2 --compare " + good).code, 0);
  EXPECT_EQ(run("quiver -a 2,2 --compare " + bad).code, 1);
}

TEST(Cli, Checks) {
  EXPECT_EQ(run("checks -a 3,2").code, 0);
  EXPECT_EQ(run("checks -a 2,2,2").code, 0);
}

TEST(Cli, DeterministicAcrossJobs) {
  auto a = run("collection -a 2,2,2 --jobs 1");
  auto b = run("collection -a 2,2,2 --jobs 8");
  EXPECT_EQ(a.code, b.code);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(run("quiver -a 3,2 --jobs 1").out, run("quiver -a 3,2 --jobs 8").out);
}

TEST(Cli, ReportFile) {
  const std::string path = ::testing::TempDir() + "report.json";
  ASSERT_EQ(run("collection -a 2,2 --report " + path).code, 0);
  std::ifstream in(path);
  Json r = Json::parse(in);
  EXPECT_EQ(r["schema_version"], chainmf::kSchemaVersion);
  EXPECT_EQ(r["tool_version"], chainmf::kToolVersion);
  EXPECT_EQ(r["pass"], true);
  EXPECT_TRUE(r.contains("timing_ms"));
  EXPECT_NE(r["command"].get<std::string>().find("collection -a 2,2"), std::string::npos);
}
