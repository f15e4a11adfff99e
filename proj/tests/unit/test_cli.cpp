#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dualitykit/cli.hpp"
#include "dualitykit/reports.hpp"

using namespace dualitykit;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, FusionTableTy) {
  const auto r = run({"fusion-table", "--group", "Z2", "--variant", "ty"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["labels"], json({"1", "η", "m"}));
  EXPECT_NEAR(j["dims"][2].get<double>(), std::sqrt(2.0), 1e-10);
}

TEST(Cli, FusionTableGroupAndGraded) {
  const auto g = json::parse(run({"fusion-table", "--group", "Z3", "--variant", "group"}).out);
  EXPECT_EQ(g["rules"].size(), 9u);
  const auto r = run({"fusion-table", "--variant", "graded", "--window", "2", "--group", "Z2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["labels"].size(), 8u);
  EXPECT_EQ(j["grades"], json({-2, -2, -1, 0, 0, 1, 2, 2}));
  EXPECT_EQ(j["window"], 2);
}

TEST(Cli, FusionTableFormats) {
  const auto csv = run({"fusion-table", "--variant", "ty", "--output", "csv"});
  EXPECT_EQ(csv.out.rfind("x,y,z,N\n", 0), 0u);
  const auto text = run({"fusion-table", "--variant", "ty", "--output", "text"});
  EXPECT_NE(text.out.find("m ⊗ m = 1 ⊕ η"), std::string::npos);
  EXPECT_EQ(run({"fusion-table", "--output", "yaml"}).code, 2);
}

TEST(Cli, BadInputsExitTwo) {
  EXPECT_EQ(run({"fusion-table", "--group", "Q8"}).code, 2);
  EXPECT_EQ(run({"fusion-table", "--variant", "bogus"}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"channels", "--chi", "[[0]]"}).code, 2);
  EXPECT_EQ(run({"channels", "--grades=3..1"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "nope"}).code, 2);
}

TEST(Cli, Channels) {
  const auto r = run({"channels", "--group", "Z2", "--grades=-2..2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["counts"], json({2, 1, 2, 1, 2}));
  EXPECT_EQ(j["grades"][2]["channels"][0]["name"], "1");
  const auto k = json::parse(run({"channels", "--group", "Z2xZ2", "--grades=1..1"}).out);
  // Grade 0 is always listed.
  EXPECT_EQ(k["counts"], json({4, 1}));
  EXPECT_NEAR(k["grades"][1]["channels"][0]["qdim"].get<double>(), 2.0, 1e-10);
}

TEST(Cli, VerifySuites) {
  const auto r = run({"verify", "--group", "Z2", "-L", "4", "--suite", "fusion"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  for (const auto& e : j["results"])
    for (const char* field : {"identity", "L", "group", "max_error", "fitted_scale", "pass"}) EXPECT_TRUE(e.contains(field));
  EXPECT_EQ(run({"verify", "--suite", "selfdual", "--model", "cluster", "--group", "Z2xZ2", "-L", "4"}).code, 0);
  EXPECT_EQ(run({"verify", "-L", "3", "--suite", "fusion"}).code, 2);
  EXPECT_EQ(run({"verify", "-L", "14", "--suite", "fusion"}).code, 3);
  EXPECT_EQ(run({"verify", "--suite", "selfdual", "--model", "cluster", "--group", "Z2", "-L", "4"}).code, 2);
}

TEST(Cli, VerifyCapFromEnvironment) {
  ::setenv("DUALITYKIT_CAP", "8", 1);
  const int code = run({"verify", "-L", "4", "--suite", "fusion"}).code;
  ::unsetenv("DUALITYKIT_CAP");
  EXPECT_EQ(code, 3);
}

TEST(Cli, TightToleranceFailsWithExitOne) {
  EXPECT_EQ(run({"verify", "-L", "6", "--suite", "fusion", "--tol", "1e-30"}).code, 1);
}

TEST(Cli, GoldenRoundTrip) {
  const auto dir = std::filesystem::path(::testing::TempDir()) / "dk_golden";
  std::filesystem::remove_all(dir);
  ASSERT_EQ(run({"verify", "-L", "4", "--suite", "fusion", "--golden-dir", dir.string(), "--write-golden"}).code, 0);
  const auto stored = read_golden((dir / "fitted_scales.json").string());
  EXPECT_EQ(stored.size(), 3u);
  EXPECT_EQ(run({"verify", "-L", "4", "--suite", "fusion", "--golden-dir", dir.string()}).code, 0);
  GoldenScales tampered = stored;
  for (auto& [k, v] : tampered) v *= 2.0;
  write_golden((dir / "fitted_scales.json").string(), tampered);
  EXPECT_EQ(run({"verify", "-L", "4", "--suite", "fusion", "--golden-dir", dir.string()}).code, 1);
}

TEST(Cli, MatrixDump) {
  const auto path = std::filesystem::path(::testing::TempDir()) / "dk_dplus.bin";
  ASSERT_EQ(run({"verify", "-L", "4", "--suite", "fusion", "--dump", path.string()}).code, 0);
  EXPECT_EQ(std::filesystem::file_size(path), 16u * 16u * 16u);
}

TEST(Cli, WeakIntegral) {
  EXPECT_EQ(run({"weak-integral", "--ring", "ty", "--group", "Z2"}).code, 0);
  EXPECT_EQ(run({"weak-integral", "--ring", "group", "--group", "Z3"}).code, 0);
  EXPECT_EQ(run({"weak-integral", "--ring", "graded", "--group", "Z2"}).code, 0);
  const auto fib = run({"weak-integral", "--ring", "fibonacci"});
  EXPECT_EQ(fib.code, 1);
  EXPECT_EQ(json::parse(fib.out)["weakly_integral"], false);
}

TEST(Cli, WeakIntegralFromFile) {
  const auto path = std::filesystem::path(::testing::TempDir()) / "dk_ring.json";
  std::ofstream(path) << R"({"name": "Z2 by hand", "labels": ["1", "g"], "unit": "1",
                             "rules": [["1","1","1",1], ["1","g","g",1], ["g","1","g",1], ["g","g","1",1]]})";
  EXPECT_EQ(run({"weak-integral", "--ring-file", path.string()}).code, 0);
  std::ofstream(path) << R"({"labels": ["1"], "rules": [["1","1","x",1]]})";
  EXPECT_EQ(run({"weak-integral", "--ring-file", path.string()}).code, 2);
  EXPECT_EQ(run({"weak-integral", "--ring-file", "/nonexistent/ring.json"}).code, 2);
}

TEST(Cli, OutputIsDeterministic) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"channels", "--group", "Z3", "--grades=-2..2"},
        std::vector<std::string>{"verify", "--group", "Z2", "-L", "4", "--suite", "all"},
        std::vector<std::string>{"fusion-table", "--variant", "graded", "--group", "Z2xZ2"}}) {
    EXPECT_EQ(run(args).out, run(args).out);
  }
}

TEST(Cli, Help) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}
