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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "winroute/errors.hpp"
#include "winroute/fg_tree_dp.hpp"
#include "winroute/testkit.hpp"

namespace winroute {
namespace {

FgInstance Uniform(RoadInstance graph, int f, std::int64_t gap) {
  FgInstance fg;
  fg.f.assign(graph.num_edges(), f);
  fg.g.assign(graph.num_edges(), {gap});
  fg.graph = std::move(graph);
  return fg;
}

TEST(RunsOf, MaximalRuns) {
  EXPECT_EQ(RunsOf({1, 2, 3, 5, 7, 8}), (IndexRuns{{1, 3}, {5, 5}, {7, 8}}));
  EXPECT_TRUE(RunsOf({}).empty());
}

TEST(DecideFgWalk, PathEulerTour) {
  const auto fg = Uniform(test::Build({"d", "a", "b"}, {{"d", "a"}, {"a", "b"}}), 1, 4);
  const auto result = DecideFgWalk(fg);
  ASSERT_TRUE(result.exists);
  EXPECT_EQ(*result.witness, test::Walk(fg.graph, "d>a a>b b>a a>d"));
}

TEST(DecideFgWalk, CherryWithGapFour) {
  const auto fg = Uniform(test::Build({"d", "a", "b"}, {{"d", "a"}, {"d", "b"}}), 1, 4);
  const auto result = DecideFgWalk(fg);
  ASSERT_TRUE(result.exists);
  EXPECT_TRUE(SatisfiesGaps(fg, *result.witness));
  EXPECT_TRUE(SatisfiesCounts(fg, *result.witness));
  EXPECT_TRUE(testkit::BruteForceFgWalk(fg).exists);
}

TEST(DecideFgWalk, CherryWithGapOneIsImpossible) {
  // Each leaf edge waits two steps while the other leaf is served.
  const auto fg = Uniform(test::Build({"d", "a", "b"}, {{"d", "a"}, {"d", "b"}}), 1, 1);
  EXPECT_FALSE(DecideFgWalk(fg).exists);
  EXPECT_FALSE(testkit::BruteForceFgWalk(fg).exists);
}

TEST(DecideFgWalk, DoubleTraversalOfSingleEdge) {
  auto fg = Uniform(test::Build({"d", "a"}, {{"d", "a"}}), 2, 0);
  const auto result = DecideFgWalk(fg);
  ASSERT_TRUE(result.exists);
  EXPECT_EQ(result.witness->arcs.size(), 4u);
}

TEST(DecideFgWalk, AtMostAllowsFewerTraversals) {
  auto fg = Uniform(test::Build({"d", "a", "b"}, {{"d", "a"}, {"a", "b"}}), 2, 4);
  fg.mode = WalkMode::kAtMost;
  fg.max_length = 4;
  const auto result = DecideFgWalk(fg);
  ASSERT_TRUE(result.exists);
  EXPECT_EQ(result.witness->arcs.size(), 4u);
  EXPECT_TRUE(SatisfiesGaps(fg, *result.witness));
  EXPECT_TRUE(SatisfiesCounts(fg, *result.witness));
  fg.max_length = 3;
  EXPECT_FALSE(DecideFgWalk(fg).exists);
}

TEST(DecideFgWalk, RejectsOutOfBoundInstances) {
  const auto star = Uniform(test::Build({"d", "a", "b", "c", "e"},
                                        {{"d", "a"}, {"d", "b"}, {"d", "c"}, {"d", "e"}}),
                            1, 8);
  EXPECT_THROW(DecideFgWalk(star), InputError);
  EXPECT_NO_THROW(DecideFgWalk(star, FgOptions{FgBounds{4, 2}, true}));
  const auto cycle = Uniform(test::Build({"d", "a", "b"}, {{"d", "a"}, {"a", "b"}, {"b", "d"}}), 1, 6);
  EXPECT_THROW(DecideFgWalk(cycle), InputError);
}

TEST(EncodeVehicleRouteAsFg, UnitGapsBecomeL) {
  const auto inst = test::Build({"d", "a", "b"}, {{"d", "a"}, {"a", "b"}});
  const auto params = ExternalParams::Uniform(inst, 10, Rational(1), Rational(1), 2);
  const auto fg = EncodeVehicleRouteAsFg(inst, params);
  EXPECT_EQ(fg.mode, WalkMode::kAtMost);
  EXPECT_EQ(fg.max_length, 10);
  for (int y = 1; y <= 4; ++y) EXPECT_EQ(fg.gap(1, y), 10);
  // On the depot edge an entry-to-exit gap is one trip's interior.
  EXPECT_EQ(fg.gap(0, 1), 8);
  EXPECT_EQ(fg.gap(0, 2), 10);
}

TEST(EncodeVehicleRouteAsFg, HalfCapacityTwoTrips) {
  const auto inst = test::Build({"d", "a", "b", "c", "e"}, {{"d", "a"}, {"d", "b"}, {"d", "c"}, {"d", "e"}});
  const auto params = ExternalParams::Uniform(inst, 8, Rational(1, 2), Rational(1), 1);
  const auto fg = EncodeVehicleRouteAsFg(inst, params);
  EXPECT_EQ(fg.gap(0, 1), 2);
  const auto route = test::Walk(inst, "d>a a>d d>b b>d d>c c>d d>e e>d");
  EXPECT_TRUE(ValidateRoute(inst, params, route).valid);
  EXPECT_TRUE(SatisfiesGaps(fg, route));
  EXPECT_TRUE(SatisfiesCounts(fg, route));
}

TEST(DecideVehicleRouteTree, PathOfTwo) {
  const auto inst = test::Build({"d", "a", "b"}, {{"d", "a"}, {"a", "b"}});
  const auto fits = ExternalParams::Uniform(inst, 4, Rational(1), Rational(1), 1);
  const auto result = DecideVehicleRouteTree(inst, fits);
  ASSERT_TRUE(result.exists);
  EXPECT_TRUE(ValidateRoute(inst, fits, *result.witness).valid);
  EXPECT_FALSE(DecideVehicleRouteTree(inst, ExternalParams::Uniform(inst, 3, Rational(1), Rational(1), 1)).exists);
}

TEST(DecideVehicleRouteTree, StarOfFourHalfCapacity) {
  const auto inst = test::Build({"d", "a", "b", "c", "e"}, {{"d", "a"}, {"d", "b"}, {"d", "c"}, {"d", "e"}});
  const auto params = ExternalParams::Uniform(inst, 12, Rational(1, 2), Rational(1), 1);
  const auto result = DecideVehicleRouteTree(inst, params, FgOptions{FgBounds{4, 2}, true});
  EXPECT_EQ(result.exists, testkit::BruteForceRoute(inst, params).exists);
  if (result.exists) EXPECT_TRUE(ValidateRoute(inst, params, *result.witness).valid);
}

TEST(FgTreeProperty, AgreesWithExhaustiveSearch) {
  std::mt19937_64 rng(20261016);
  for (int i = 0; i < 200; ++i) {
    const auto fg = testkit::RandomFgInstance(rng, 6, {}, i % 2 ? WalkMode::kAtMost : WalkMode::kExact);
    const auto result = DecideFgWalk(fg);
    ASSERT_EQ(result.exists, testkit::BruteForceFgWalk(fg).exists) << "instance " << i;
    if (!result.exists) continue;
    ASSERT_TRUE(SatisfiesGaps(fg, *result.witness));
    ASSERT_TRUE(SatisfiesCounts(fg, *result.witness));
    ASSERT_NO_THROW(CheckRouteStructure(fg.graph, *result.witness));
  }
}

TEST(FgTreeProperty, StoredSetsWithinBound) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto fg = testkit::RandomFgInstance(rng, 7, {}, i % 2 ? WalkMode::kAtMost : WalkMode::kExact);
    const auto result = DecideFgWalk(fg, FgOptions{FgBounds{}, false});
    const auto tree = RootedTree::FromInstance(fg.graph, fg.graph.depot());
    const double length = static_cast<double>(fg.exact_length());
    for (int v = 0; v < tree.num_vertices(); ++v) {
      if (v == tree.root) continue;
      const int f = fg.f[tree.parent_edge[v]];
      ASSERT_LE(static_cast<double>(result.stats.primed_sets[v]), f * std::pow(length, 2 * f));
    }
  }
}

}  // namespace
}  // namespace winroute
