// Copyright 2026 The winroute Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "winroute/cli.hpp"
#include "winroute/errors.hpp"
#include "winroute/io.hpp"

namespace winroute {
namespace {

namespace fs = std::filesystem;

const fs::path kData = WINROUTE_TEST_DATA;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("winroute_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string Data(const std::string& name) { return (kData / name).string(); }

  fs::path dir_;
};

std::string Slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

TEST_F(CliTest, DecideStarOfFiveEmitsRoute) {
  const auto result = cli::Run({"decide", "--algo", "const-priority", "--input", Data("star5.json"),
                                "--route-out", Path("star5.route")});
  EXPECT_EQ(result.exit_code, cli::kOk);
  EXPECT_TRUE(fs::exists(Path("star5.route")));
  EXPECT_TRUE(result.json["feasible"].get<bool>());
  const auto check = cli::Run({"validate", "--input", Data("star5.json"), "--route", Path("star5.route")});
  EXPECT_EQ(check.exit_code, cli::kOk);
}

TEST_F(CliTest, ValidateReportsLength) {
  cli::Run({"decide", "--input", Data("star5.json"), "--route-out", Path("bad.route")});
  const auto result = cli::Run({"validate", "--input", Data("star5_L9.json"), "--route", Path("bad.route"),
                                "--json-report", Path("report.json")});
  EXPECT_EQ(result.exit_code, cli::kNo);
  EXPECT_NE(result.report.find("LENGTH"), std::string::npos);
  const auto report = io::ReadJson(Path("report.json"));
  EXPECT_EQ(report["exit_code"], 1);
  EXPECT_EQ(report["violations"][0]["kind"], "LENGTH");
}

TEST_F(CliTest, NecklaceSplitReportsTwoCuts) {
  const auto result = cli::Run({"necklace", "split", "--input", Data("n4.json")});
  EXPECT_EQ(result.exit_code, cli::kOk);
  EXPECT_NE(result.report.find("cuts: 2"), std::string::npos);
}

TEST_F(CliTest, UnknownFlagIsUsageError) {
  const auto result = cli::Run({"decide", "--input", Data("star5.json"), "--frobnicate"});
  EXPECT_EQ(result.exit_code, cli::kInputError);
  EXPECT_NE(result.report.find("Usage"), std::string::npos);
  EXPECT_EQ(cli::Run({"launch"}).exit_code, cli::kInputError);
  EXPECT_EQ(cli::Run({}).exit_code, cli::kInputError);
}

TEST_F(CliTest, HelpExitsCleanly) {
  const auto result = cli::Run({"--help"});
  EXPECT_EQ(result.exit_code, cli::kOk);
  EXPECT_NE(result.report.find("decide"), std::string::npos);
}

TEST_F(CliTest, MissingFileIsInputError) {
  EXPECT_EQ(cli::Run({"decide", "--input", Path("absent.json")}).exit_code, cli::kInputError);
}

TEST_F(CliTest, MalformedJsonIsInputError) {
  io::WriteText(Path("broken.json"), "{\"vertices\": [\"d\"");
  EXPECT_EQ(cli::Run({"decide", "--input", Path("broken.json")}).exit_code, cli::kInputError);
}

TEST_F(CliTest, GuardExceededExitsThree) {
  cli::Run({"gen", "partition-star", "--weights", "1,2,3,4,5,6", "--output", Path("p.json")});
  const auto result = cli::Run({"decide", "--algo", "brute", "--guard", "5", "--input", Path("p.json")});
  EXPECT_EQ(result.exit_code, cli::kGuardExceeded);
}

TEST_F(CliTest, PartitionStarDecisions) {
  cli::Run({"gen", "partition-star", "--weights", "1,2,3", "--output", Path("yes.json")});
  cli::Run({"gen", "partition-star", "--weights", "1,1,3", "--output", Path("no.json")});
  EXPECT_EQ(cli::Run({"decide", "--algo", "brute", "--input", Path("yes.json")}).exit_code, cli::kOk);
  EXPECT_EQ(cli::Run({"decide", "--algo", "brute", "--input", Path("no.json")}).exit_code, cli::kNo);
}

TEST_F(CliTest, ThreePartitionTreeThroughFgDp) {
  ASSERT_EQ(cli::Run({"gen", "3p-tree", "--values", "3,3,4", "--target", "10", "--output", Path("t.json")})
                .exit_code,
            cli::kOk);
  EXPECT_EQ(io::ReadJson(Path("t.json"))["reduction"]["B"], 6);
  EXPECT_EQ(cli::Run({"decide", "--algo", "fg-dp", "--input", Path("t.json")}).exit_code, cli::kOk);
  cli::Run({"gen", "3p-tree", "--values", "3,3,4", "--target", "11", "--output", Path("bad.json")});
  EXPECT_FALSE(fs::exists(Path("bad.json")));
}

TEST_F(CliTest, RandomGraphThroughTwDpAndBrute) {
  for (int seed = 1; seed <= 6; ++seed) {
    const auto instance = Path("g" + std::to_string(seed) + ".json");
    const auto dec = Path("g" + std::to_string(seed) + ".dec.json");
    ASSERT_EQ(cli::Run({"gen", "random-graph", "--seed", std::to_string(seed), "--edges", "6", "--output",
                        instance, "--decomposition", dec})
                  .exit_code,
              cli::kOk);
    const auto tw = cli::Run({"decide", "--algo", "tw-dp", "--input", instance, "--decomposition", dec});
    const auto brute = cli::Run({"decide", "--algo", "brute", "--input", instance});
    ASSERT_LE(tw.exit_code, 1) << tw.report;
    EXPECT_EQ(tw.exit_code, brute.exit_code) << "seed " << seed;
  }
}

TEST_F(CliTest, UnfairnessMinRoundTrip) {
  ASSERT_EQ(cli::Run({"necklace", "reduce", "--input", Data("n4.json"), "--output", Path("star.json")}).exit_code,
            cli::kOk);
  const auto best = cli::Run({"unfairness", "min", "--input", Path("star.json"), "--route-out", Path("u.route")});
  ASSERT_EQ(best.exit_code, cli::kOk);
  const auto again = cli::Run({"unfairness", "eval", "--input", Path("star.json"), "--route", Path("u.route")});
  EXPECT_EQ(again.json["unfairness"], best.json["unfairness"]);
  EXPECT_EQ(cli::Run({"validate", "--input", Path("star.json"), "--route", Path("u.route")}).exit_code, cli::kOk);
}

TEST_F(CliTest, CutCommand) {
  const auto tree = test::Build({"d", "a", "b", "c"}, {{"d", "a"}, {"a", "b"}, {"b", "c"}});
  io::WriteText(Path("path.json"), io::InstanceToJson(tree).dump());
  EXPECT_EQ(cli::Run({"cut", "--input", Path("path.json"), "--sizes", "1,3"}).exit_code, cli::kOk);
  EXPECT_EQ(cli::Run({"cut", "--input", Path("path.json"), "--sizes", "1,2"}).exit_code, cli::kNo);
  EXPECT_EQ(cli::Run({"cut", "--input", Path("path.json"), "--sizes", "1,2", "--algo", "brute"}).exit_code,
            cli::kNo);
  EXPECT_EQ(cli::Run({"cut", "--input", Path("path.json"), "--sizes", "1,x"}).exit_code, cli::kInputError);
}

std::string WithoutTimes(const std::string& csv) {
  std::stringstream in(csv);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    cells.at(3).clear();
    for (const auto& c : cells) out += c + ",";
    out += "\n";
  }
  return out;
}

TEST_F(CliTest, BenchIsDeterministicUnderSeed) {
  const std::vector<std::string> args{"bench", "--random", "6", "--seed", "9", "--edges", "5", "--algo",
                                      "fg-dp,tw-dp,brute"};
  auto with_csv = [&](const std::string& name) {
    auto copy = args;
    copy.insert(copy.end(), {"--csv", Path(name)});
    EXPECT_EQ(cli::Run(copy).exit_code, cli::kOk);
    return Slurp(Path(name));
  };
  const auto first = with_csv("a.csv");
  EXPECT_EQ(first.substr(0, first.find('\n')), "instance,algo,feasible,wall_ms,states");
  EXPECT_EQ(WithoutTimes(first), WithoutTimes(with_csv("b.csv")));
}

TEST_F(CliTest, BenchOverDirectory) {
  cli::Run({"gen", "random-graph", "--seed", "4", "--edges", "5", "--output", Path("x.json"), "--decomposition",
            Path("x.dec.json")});
  cli::Run({"gen", "random-tree", "--seed", "4", "--edges", "5", "--output", Path("y.json")});
  const auto result = cli::Run({"bench", "--dir", dir_.string(), "--algo", "tw-dp,brute"});
  EXPECT_EQ(result.exit_code, cli::kOk);
  EXPECT_EQ(result.json["rows"].size(), 4u);
  EXPECT_EQ(result.report.find("x.dec.json"), std::string::npos);
}

TEST(Io, InstanceRoundTrip) {
  auto inst = test::Build({"d", "a", "b"}, {{"d", "a", 3}, {"a", "b", 5}});
  auto params = ExternalParams::Uniform(inst, 20, Rational(1, 2), Rational(3, 4), 2);
  params.capacity_semantics = CapacitySemantics::kServiced;
  const auto loaded = io::ParseInstance(io::InstanceToJson(inst, &params));
  ASSERT_TRUE(loaded.params.has_value());
  EXPECT_EQ(loaded.instance.num_edges(), 2);
  EXPECT_EQ(loaded.instance.alpha(2), 5);
  EXPECT_EQ(loaded.params->L, 20);
  EXPECT_EQ(loaded.params->c, Rational(1, 2));
  EXPECT_EQ(loaded.params->t.at(1, 1), Rational(3, 4));
  EXPECT_EQ(loaded.params->f, params.f);
  EXPECT_EQ(loaded.params->capacity_semantics, CapacitySemantics::kServiced);
}

TEST(Io, RouteAndArcKeys) {
  const auto inst = test::Build({"d", "a"}, {{"d", "a"}});
  EXPECT_EQ(io::ArcKey(inst, 1), "a>d");
  EXPECT_EQ(io::ParseArcKey(inst, "d>a"), 0);
  EXPECT_THROW(io::ParseArcKey(inst, "d>q"), InputError);
  const auto route = io::ParseRoute(inst, "# tour\nd>a\n\na>d\n");
  EXPECT_EQ(route.arcs, (std::vector<ArcId>{0, 1}));
  EXPECT_EQ(io::ParseRoute(inst, io::FormatRoute(inst, route)), route);
}

TEST(Io, FgRoundTrip) {
  FgInstance fg;
  fg.graph = test::Build({"d", "a", "b"}, {{"d", "a"}, {"a", "b"}});
  fg.f = {2, 1};
  fg.g = {{1, 2, 3, 4}, {5}};
  fg.mode = WalkMode::kAtMost;
  fg.max_length = 6;
  const auto back = io::ParseInstance(io::FgToJson(fg)).ToFg();
  EXPECT_EQ(back.f, fg.f);
  EXPECT_EQ(back.gap(0, 3), 3);
  EXPECT_EQ(back.gap(1, 2), 5);
  EXPECT_EQ(back.mode, WalkMode::kAtMost);
  EXPECT_EQ(back.max_length, 6);
}

TEST(Io, GapKeysMustBeContiguous) {
  const auto doc = io::Json::parse(R"({"vertices":["d","a"],"edges":[{"u":"d","v":"a"}],"depot":"d",
      "params":{"f":1},"g":{"d>a#1":2,"d>a#3":2}})");
  EXPECT_THROW(io::ParseInstance(doc), InputError);
}

}  // namespace
}  // namespace winroute
