#include <gtest/gtest.h>

#include "bmcycles/cli.hpp"

using namespace bmc;
using nlohmann::json;

TEST(Cli, RejectsUnknownKeys) {
  const json out = cli::run_task("validate-bounds", json::parse(R"({"field":{"p":5,"e":2},"mu":[[2,0],[1,0]],"extra":1})"), {});
  EXPECT_FALSE(out["pass"].get<bool>());
  EXPECT_EQ(out["error"]["kind"], "SchemaError");
  const json nested = cli::run_task("validate-bounds", json::parse(R"({"field":{"p":5,"e":2,"q":1},"mu":[[2,0],[1,0]]})"), {});
  EXPECT_EQ(nested["error"]["kind"], "SchemaError");
}

TEST(Cli, TaskMismatch) {
  const json out = cli::run_task("decompose", json::parse(R"({"task":"suite","weights":[[1,0]]})"), {});
  EXPECT_EQ(out["error"]["kind"], "SchemaError");
}

TEST(Cli, UnknownSuite) {
  const json out = cli::run_task("suite", json::parse(R"({"suite":"nope"})"), {});
  EXPECT_EQ(out["error"]["kind"], "UnknownSuite");
}

TEST(Cli, BoundViolationReported) {
  const json out = cli::run_task("bm-identity", json::parse(R"({"field":{"p":5,"e":2},"mu":[[4,0],[4,0]]})"), {});
  EXPECT_EQ(out["error"]["kind"], "BoundViolated");
  cli::Options opt;
  opt.override_bounds = true;
  const json forced = cli::run_task("bm-identity", json::parse(R"({"field":{"p":5,"e":2},"mu":[[4,0],[4,0]]})"), opt);
  EXPECT_FALSE(forced.contains("error"));
  EXPECT_TRUE(forced["results"]["unsound_override"].get<bool>());
  EXPECT_FALSE(forced["pass"].get<bool>());
}

TEST(Cli, DeterministicReports) {
  const json cfg = json::parse(R"({"suite":"duality","seed":4})");
  EXPECT_EQ(cli::run_task("suite", cfg, {}).dump(), cli::run_task("suite", cfg, {}).dump());
  cli::Options opt;
  opt.seed = 9;
  EXPECT_EQ(cli::run_task("suite", cfg, opt)["results"]["seed"], 9);
}

TEST(Cli, EveryVerdictHasAnchor) {
  const json out = cli::run_task("hilbert-defect", json::parse(R"({"mu":[[2,0],[2,0]],"overcount":[{"lambda":[2,0],"m":1}]})"), {});
  ASSERT_EQ(out["verdicts"].size(), 3u);
  for (const auto& v : out["verdicts"]) EXPECT_FALSE(v["anchor"].get<std::string>().empty());
  EXPECT_TRUE(out["pass"].get<bool>());
}

TEST(Cli, TorsorCommand) {
  const json cfg = json::parse(R"({"field":{"p":3,"e":1},"N":1,"precision":24,
      "C":[[[0,1],[1]],[[0],[2]]],"g":[[[1,0,1],[0,2]],[[0,1],[1,1]]]})");
  const json out = cli::run_task("bk-torsor", cfg, {});
  EXPECT_TRUE(out["pass"].get<bool>()) << out.dump(1);
}
