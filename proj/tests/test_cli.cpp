#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "flipgraph/cli.hpp"

using namespace flipgraph;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t vertex_count(const std::string& json) { return nlohmann::json::parse(json).at("vertices").size(); }

}  // namespace

TEST(CliBall, Sizes) {
  Result r = run({"ball", "--surface", "S1,1", "--radius", "3", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(vertex_count(r.out), 22u);
  r = run({"ball", "--surface", "S0,0,(1,1)", "--radius", "4"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(vertex_count(r.out), 9u);
}

TEST(CliBall, ParseErrorCitesToken) {
  Result r = run({"ball", "--surface", "Sx"});
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(r.err.find("'x'"), std::string::npos);
}

TEST(CliBall, Deterministic) {
  std::vector<std::string> args{"ball", "--surface", "S0,5", "--radius", "2"};
  EXPECT_EQ(run(args).out, run(args).out);
  args.push_back("--threads");
  args.push_back("3");
  EXPECT_EQ(run(args).out, run({"ball", "--surface", "S0,5", "--radius", "2"}).out);
  std::vector<std::string> dot{"ball", "--surface", "S0,4", "--radius", "2", "--format", "dot"};
  EXPECT_EQ(run(dot).out, run(dot).out);
}

TEST(CliBall, ResourceLimit) {
  Result r = run({"ball", "--surface", "S0,5", "--radius", "5", "--budget", "100"});
  EXPECT_EQ(r.code, kExitResource);
  EXPECT_NE(r.err.find("100"), std::string::npos);
}

TEST(CliBall, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitInput);
  EXPECT_EQ(run({"ball"}).code, kExitInput);
  EXPECT_EQ(run({"ball", "--surface", "S1,1", "--radius", "-1"}).code, kExitInput);
  EXPECT_EQ(run({"ball", "--surface", "S1,1", "--format", "xml"}).code, kExitInput);
  EXPECT_EQ(run({"ball", "--surface", "S1,1", "--budget", "0"}).code, kExitInput);
  EXPECT_EQ(run({"ball", "--surface", "S0,2"}).code, kExitInput);
  EXPECT_EQ(run({"frobnicate"}).code, kExitInput);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(CliClasses, FourPuncturedSphere) {
  Result r = run({"classes", "--surface", "S0,4"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "6\n");
  EXPECT_EQ(run({"classes", "--surface", "S1,0,(1)"}).out, "1\n");
  EXPECT_EQ(run({"classes"}).code, kExitInput);
}

TEST(CliGrowth, MaxN) {
  EXPECT_EQ(run({"growth", "--max-n"}).out, "61\n");
  EXPECT_EQ(run({"growth", "--n", "62"}).out, "false\n");
  EXPECT_EQ(run({"growth", "--n", "61"}).out, "true\n");
  EXPECT_EQ(run({"growth"}).code, kExitInput);
  EXPECT_EQ(run({"growth", "--n", "0"}).code, kExitInput);
}

TEST(CliVerify, ShortCycles) {
  Result r = run({"verify-lemma32", "--surface", "S0,4", "--radius", "4"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("violations=0"), std::string::npos);
  EXPECT_EQ(run({"verify-lemma32", "--surface", "S0,4", "--radius", "4", "--budget", "3"}).code, kExitResource);
  EXPECT_EQ(run({"verify-lemma32"}).code, kExitInput);
}

TEST(CliVerify, DoubleTriangles) {
  Result r = run({"verify-lemma51", "--surface", "S1,2", "--count", "60"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("triangulations=60"), std::string::npos);
  std::vector<std::string> seeded{"verify-lemma51", "--surface", "S0,5", "--count", "40", "--seed", "3"};
  EXPECT_EQ(run(seeded).out, run(seeded).out);
  EXPECT_EQ(run({"verify-lemma51", "--surface", "S0,4"}).code, kExitInput);
  EXPECT_EQ(run({"verify-lemma51", "--surface", "S0,5", "--count", "0"}).code, kExitInput);
}

TEST(CliClosure, Trace) {
  Result r = run({"closure", "--surface", "S0,0,(1,2)", "--radius", "5", "--r1-only"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_FALSE(nlohmann::json::parse(r.out).empty());
  EXPECT_NE(r.err.find("forced_radius="), std::string::npos);
  EXPECT_EQ(run({"closure", "--surface", "S0,0,(1,2)", "--radius", "5", "--r1-only"}).out, r.out);
  EXPECT_EQ(run({"closure"}).code, kExitInput);
}

TEST(CliHomsearch, Extensions) {
  Result r = run({"homsearch", "--radius", "8"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out).at("extensions").size(), 4u);
  EXPECT_EQ(run({"homsearch", "--length", "0"}).code, kExitInput);
  EXPECT_EQ(run({"homsearch", "--radius", "3"}).code, kExitResource);
}

TEST(CliLadder, Export) {
  Result r = run({"ladder", "--half-length", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("vertices").size(), 10u);
  EXPECT_EQ(j.at("roles").size(), 10u);
  EXPECT_EQ(run({"ladder", "--half-length", "-1"}).code, kExitInput);
  EXPECT_EQ(run({"ladder", "--surface", "S0,4"}).code, kExitInput);
}

TEST(CliFibers, Counts) {
  Result r = run({"fibers", "--radius", "4"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("bad_degree=0"), std::string::npos);
  EXPECT_EQ(run({"fibers", "--surface", "S1,1"}).code, kExitInput);
}

TEST(CliExport, JsonToDot) {
  const std::string path = testing::TempDir() + "/cli_export_ball.json";
  ASSERT_EQ(run({"ball", "--surface", "S1,1", "--radius", "2", "--out", path}).code, kExitOk);
  Result dot = run({"export", "--in", path, "--format", "dot"});
  EXPECT_EQ(dot.code, kExitOk);
  EXPECT_EQ(dot.out, run({"ball", "--surface", "S1,1", "--radius", "2", "--format", "dot"}).out);
  Result json = run({"export", "--in", path});
  std::ifstream f(path);
  std::stringstream buf;
  buf << f.rdbuf();
  EXPECT_EQ(json.out, buf.str());
  std::remove(path.c_str());
  EXPECT_EQ(run({"export"}).code, kExitInput);
  EXPECT_EQ(run({"export", "--in", "/nonexistent/ball.json"}).code, kExitInput);
}
