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

#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "winroute/errors.hpp"
#include "winroute/testkit.hpp"
#include "winroute/treewidth_dp.hpp"

namespace winroute {
namespace {

const RoadInstance kTriangle = test::Build({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}, "a");
const RoadInstance kPath = test::Build({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}, "a");
const RoadInstance kSquare =
    test::Build({"d", "a", "b", "c"}, {{"d", "a"}, {"a", "b"}, {"b", "c"}, {"c", "d"}});

FgInstance Uniform(const RoadInstance& graph, std::int64_t gap) {
  FgInstance fg;
  fg.graph = graph;
  fg.f.assign(graph.num_edges(), 1);
  fg.g.assign(graph.num_edges(), {gap});
  return fg;
}

TEST(VerifyDecomposition, Examples) {
  EXPECT_TRUE(VerifyDecomposition(kTriangle, {{{0, 1, 2}}, {{}}, 0}));
  EXPECT_TRUE(VerifyDecomposition(kPath, {{{0, 1}, {1, 2}}, {{1}, {}}, 0}));
  EXPECT_FALSE(VerifyDecomposition(kPath, {{{0, 1}, {2}}, {{1}, {}}, 0}));
}

TEST(VerifyDecomposition, DisconnectedOccurrencesFail) {
  // Vertex 0 sits in bags 0 and 2 but not in bag 1 between them.
  EXPECT_FALSE(VerifyDecomposition(kPath, {{{0, 1}, {1, 2}, {0, 2}}, {{1}, {2}, {}}, 0}));
}

TEST(Canonicalize, SingleBagBecomesIntroduceChain) {
  const auto dec = Canonicalize(kTriangle, {{{0, 1, 2}}, {{}}, 0}, 0);
  EXPECT_TRUE(IsCanonical(dec, 0));
  EXPECT_TRUE(VerifyDecomposition(kTriangle, dec.AsDecomposition()));
  EXPECT_EQ(dec.width(), 2);
  ASSERT_EQ(dec.nodes.size(), 3u);
  int leaves = 0;
  int introduces = 0;
  for (const auto& node : dec.nodes) {
    leaves += node.kind == NodeKind::kLeaf;
    introduces += node.kind == NodeKind::kIntroduce;
  }
  EXPECT_EQ(leaves, 1);
  EXPECT_EQ(introduces, 2);
  const auto& root_bag = dec.nodes[dec.root].bag;
  EXPECT_NE(std::find(root_bag.begin(), root_bag.end(), 0), root_bag.end());
}

TEST(Canonicalize, TreeKeepsWidthOne) {
  const auto star = test::Build({"d", "a", "b", "c"}, {{"d", "a"}, {"d", "b"}, {"b", "c"}});
  const auto dec = Canonicalize(star, DecompositionOfTree(star), star.depot());
  EXPECT_TRUE(IsCanonical(dec, star.depot()));
  EXPECT_EQ(dec.width(), 1);
  EXPECT_TRUE(VerifyDecomposition(star, dec.AsDecomposition()));
}

TEST(Canonicalize, IdempotentUpToRelabeling) {
  const auto once = Canonicalize(kSquare, {{{0, 1, 2}, {0, 2, 3}}, {{1}, {}}, 0}, 0);
  const auto twice = Canonicalize(kSquare, once.AsDecomposition(), 0);
  EXPECT_TRUE(IsCanonical(twice, 0));
  EXPECT_EQ(twice.nodes.size(), once.nodes.size());
  EXPECT_EQ(twice.width(), once.width());
}

TEST(Canonicalize, RejectsInvalidInput) {
  EXPECT_THROW(Canonicalize(kPath, {{{0, 1}, {2}}, {{1}, {}}, 0}, 0), InputError);
}

TEST(DecideFgWalkTw, SquareWithLooseGaps) {
  const auto fg = Uniform(kSquare, 8);
  const auto dec = Canonicalize(kSquare, {{{0, 1, 2}, {0, 2, 3}}, {{1}, {}}, 0}, 0);
  EXPECT_TRUE(DecideFgWalkTw(fg, dec).exists);
  EXPECT_TRUE(testkit::BruteForceFgWalk(fg).exists);
}

TEST(DecideFgWalkTw, SquareWithOneTightEdge) {
  auto fg = Uniform(kSquare, 8);
  fg.g[1] = {1};
  const auto dec = Canonicalize(kSquare, {{{0, 1, 2}, {0, 2, 3}}, {{1}, {}}, 0}, 0);
  EXPECT_FALSE(DecideFgWalkTw(fg, dec).exists);
  EXPECT_FALSE(testkit::BruteForceFgWalk(fg).exists);
}

TEST(DecideFgWalkTw, NeedsCanonicalInput) {
  const auto fg = Uniform(kSquare, 8);
  auto dec = Canonicalize(kSquare, {{{0, 1, 2}, {0, 2, 3}}, {{1}, {}}, 0}, 0);
  dec.nodes[dec.root].bag.push_back(3);
  EXPECT_THROW(DecideFgWalkTw(fg, dec), InputError);
}

TEST(TreewidthProperty, TreesMatchTreeDp) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 150; ++i) {
    const auto fg = testkit::RandomFgInstance(rng, 6, {}, i % 2 ? WalkMode::kAtMost : WalkMode::kExact);
    const auto dec = Canonicalize(fg.graph, DecompositionOfTree(fg.graph), fg.graph.depot());
    ASSERT_EQ(DecideFgWalkTw(fg, dec).exists, DecideFgWalk(fg).exists) << "instance " << i;
  }
}

TEST(TreewidthProperty, WidthTwoGraphsMatchExhaustiveSearch) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 120; ++i) {
    const auto grown = testkit::RandomWidth2Graph(rng, 7, 3);
    ASSERT_TRUE(VerifyDecomposition(grown.graph, grown.decomposition));
    const auto fg = testkit::RandomFgOnGraph(rng, grown.graph, 2, i % 2 ? WalkMode::kAtMost : WalkMode::kExact);
    const auto dec = Canonicalize(fg.graph, grown.decomposition, fg.graph.depot());
    ASSERT_TRUE(IsCanonical(dec, fg.graph.depot()));
    ASSERT_LE(dec.width(), 2);
    ASSERT_EQ(DecideFgWalkTw(fg, dec).exists, testkit::BruteForceFgWalk(fg).exists) << "instance " << i;
  }
}

}  // namespace
}  // namespace winroute
