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

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "winroute/errors.hpp"
#include "winroute/fairness_necklace.hpp"

namespace winroute {
namespace {

using test::Build;
using test::Walk;

const RoadInstance kCherry = Build({"d", "x", "u1", "u2"}, {{"d", "x"}, {"x", "u1"}, {"x", "u2"}});

CyclicOrders CherryOrders() {
  // O(x) = (d, u1, u2).
  return CyclicOrders{{{1}, {0, 2, 3}, {1}, {1}}};
}

// Fewest cuts when the necklace is closed into a ring: every thief change
// between cyclically adjacent beads is one cut.
int RingCuts(const Necklace& necklace) {
  const int beads = static_cast<int>(necklace.beads.size());
  const auto share = necklace.share();
  int best = beads;
  for (int mask = 0; mask < (1 << beads); ++mask) {
    std::vector<int> first(share.size(), 0);
    std::vector<int> second(share.size(), 0);
    for (int i = 0; i < beads; ++i) ((mask >> i) & 1 ? second : first)[necklace.beads[i] - 1]++;
    if (first != share || second != share) continue;
    int cuts = 0;
    for (int i = 0; i < beads; ++i) cuts += ((mask >> i) & 1) != ((mask >> ((i + 1) % beads)) & 1);
    best = std::min(best, cuts);
  }
  return best;
}

TEST(UnfairnessIndex, InOrderSweepHasNoComplaints) {
  EXPECT_EQ(UnfairnessIndex(kCherry, CherryOrders(), Walk(kCherry, "d>x x>u1 u1>x x>u2 u2>x x>d")), 0);
}

TEST(UnfairnessIndex, OutOfOrderSweepComplainsTwice) {
  EXPECT_EQ(UnfairnessIndex(kCherry, CherryOrders(), Walk(kCherry, "d>x x>u2 u2>x x>u1 u1>x x>d")), 2);
}

TEST(UnfairnessIndex, PathInOrder) {
  const auto path = Build({"d", "x", "u"}, {{"d", "x"}, {"x", "u"}});
  EXPECT_EQ(UnfairnessIndex(path, CyclicOrders::FromInstance(path), Walk(path, "d>x x>u u>x x>d")), 0);
}

TEST(UnfairnessIndex, DepotMustBeALeaf) {
  const auto cherry = Build({"d", "a", "b"}, {{"d", "a"}, {"d", "b"}});
  EXPECT_THROW(UnfairnessIndex(cherry, CyclicOrders::FromInstance(cherry), Walk(cherry, "d>a a>d d>b b>d")),
               InputError);
}

TEST(CyclicOrders, CheckRejectsWrongNeighbours) {
  CyclicOrders orders = CherryOrders();
  orders.around[1] = {0, 2, 2};
  EXPECT_THROW(orders.Check(kCherry), InputError);
}

TEST(MinimizeUnfairness, CherryReachesZero) {
  const auto params = ExternalParams::Uniform(kCherry, 6, Rational(1), Rational(1), 1);
  const auto best = MinimizeUnfairness(kCherry, CherryOrders(), params);
  ASSERT_TRUE(best.has_value());
  EXPECT_EQ(best->unfairness, 0);
  EXPECT_TRUE(ValidateRoute(kCherry, params, best->route).valid);
}

TEST(MinimizeUnfairness, InfeasibleParamsGiveNothing) {
  const auto params = ExternalParams::Uniform(kCherry, 5, Rational(1), Rational(1), 1);
  EXPECT_FALSE(MinimizeUnfairness(kCherry, CherryOrders(), params).has_value());
}

TEST(MinimizeUnfairness, ThrowsPastGuard) {
  const auto star = NecklaceToStar(Necklace{2, {1, 2, 2, 1, 1, 2, 2, 1}});
  EXPECT_THROW(MinimizeUnfairness(star.instance, star.orders, star.params, 10), GuardExceeded);
}

TEST(MinimizeUnfairness, ParallelMatchesSerial) {
  const auto star = NecklaceToStar(Necklace{2, {1, 2, 2, 1, 2, 1, 1, 2}});
  const auto serial = MinimizeUnfairness(star.instance, star.orders, star.params);
  const auto parallel =
      MinimizeUnfairness(star.instance, star.orders, star.params, 50'000'000, Parallelism::kOpenMp);
  ASSERT_TRUE(serial && parallel);
  EXPECT_EQ(serial->unfairness, parallel->unfairness);
  EXPECT_EQ(serial->route, parallel->route);
}

// Complaints are not counted across the end of the route, yet the two depot
// turns still see the first and last bead as neighbours of d. The optimum is
// therefore the ring cut count, which exceeds the line cut count here.
TEST(MinimizeUnfairness, NecklaceStarAlternating) {
  const Necklace necklace{2, {1, 2, 1, 2}};
  const auto star = NecklaceToStar(necklace);
  const auto best = MinimizeUnfairness(star.instance, star.orders, star.params);
  ASSERT_TRUE(best.has_value());
  EXPECT_EQ(best->unfairness, RingCuts(necklace));
  EXPECT_EQ(best->unfairness, 2);
  EXPECT_EQ(SplitNecklaceMin(necklace).size(), 1);
}

TEST(MinimizeUnfairness, NecklaceStarBlocks) {
  const Necklace necklace{2, {1, 1, 2, 2}};
  const auto star = NecklaceToStar(necklace);
  const auto best = MinimizeUnfairness(star.instance, star.orders, star.params);
  ASSERT_TRUE(best.has_value());
  EXPECT_EQ(best->unfairness, 2);
  EXPECT_EQ(SplitNecklaceMin(necklace).size(), 2);
}

TEST(NecklaceToStar, WeightsLengthAndCapacity) {
  const auto star = NecklaceToStar(Necklace{2, {1, 2, 1, 2}});
  EXPECT_EQ(star.weights, (std::vector<std::int64_t>{3, 7}));
  EXPECT_EQ(star.params.L, 44);
  EXPECT_EQ(star.params.c, Rational(1, 2));
  EXPECT_EQ(star.params.f[0], 2);
  EXPECT_EQ(star.params.f[1], 2);
  EXPECT_EQ(star.instance.num_edges(), 5);
  EXPECT_EQ(star.instance.alpha(2 * 3), 3);
  EXPECT_EQ(star.instance.alpha(2 * 4), 7);
}

TEST(NecklaceToStar, DepotBoundIsThiefCount) {
  const auto star = NecklaceToStar(Necklace{3, {1, 1, 1}});
  EXPECT_EQ(star.params.f[0], 3);
  EXPECT_EQ(star.params.c, Rational(1, 3));
}

TEST(SplittingFromRoute, ContiguousTrips) {
  const Necklace necklace{2, {1, 2, 1, 2}};
  const auto star = NecklaceToStar(necklace);
  const auto route = Walk(star.instance,
                          "d>x x>u1 u1>x x>u2 u2>x x>d d>x x>u3 u3>x x>u4 u4>x x>d");
  EXPECT_TRUE(ValidateRoute(star.instance, star.params, route).valid);
  const auto splitting = SplittingFromRoute(necklace, star, route);
  EXPECT_EQ(splitting.cuts, (std::vector<int>{2}));
  EXPECT_TRUE(IsValidSplitting(necklace, splitting));
}

TEST(SplittingFromRoute, InterleavedTrips) {
  const Necklace necklace{2, {1, 2, 2, 1}};
  const auto star = NecklaceToStar(necklace);
  const auto route = Walk(star.instance,
                          "d>x x>u1 u1>x x>u3 u3>x x>d d>x x>u2 u2>x x>u4 u4>x x>d");
  const auto splitting = SplittingFromRoute(necklace, star, route);
  EXPECT_EQ(splitting.cuts, (std::vector<int>{1, 2, 3}));
  EXPECT_TRUE(IsValidSplitting(necklace, splitting));
}

TEST(SplittingFromRoute, OuterBeadsShareAColour) {
  // Beads 1 and 4 are both colour 1, so that trip is not a fair share.
  const Necklace necklace{2, {1, 2, 2, 1}};
  const auto star = NecklaceToStar(necklace);
  const auto route = Walk(star.instance,
                          "d>x x>u1 u1>x x>u4 u4>x x>d d>x x>u2 u2>x x>u3 u3>x x>d");
  EXPECT_THROW(SplittingFromRoute(necklace, star, route), InputError);
}

TEST(SplittingFromRoute, UnfairTripCountsThrow) {
  const Necklace necklace{2, {1, 2, 1, 2}};
  const auto star = NecklaceToStar(necklace);
  const auto route = Walk(star.instance,
                          "d>x x>u1 u1>x x>u3 u3>x x>d d>x x>u2 u2>x x>u4 u4>x x>d");
  EXPECT_THROW(SplittingFromRoute(necklace, star, route), InputError);
}

TEST(SplitNecklaceMin, Examples) {
  EXPECT_EQ(SplitNecklaceMin(Necklace{2, {1, 1}}).size(), 1);
  EXPECT_EQ(SplitNecklaceMin(Necklace{2, {1, 2, 1, 2}}).size(), 1);
  const Necklace blocks{2, {1, 1, 2, 2}};
  const auto splitting = SplitNecklaceMin(blocks);
  EXPECT_EQ(splitting.size(), 2);
  EXPECT_TRUE(IsValidSplitting(blocks, splitting));
}

TEST(SplitNecklaceMin, ThreeThieves) {
  const Necklace necklace{3, {1, 1, 1, 2, 2, 2}};
  const auto splitting = SplitNecklaceMin(necklace);
  EXPECT_TRUE(IsValidSplitting(necklace, splitting));
  EXPECT_EQ(splitting.size(), 4);
}

TEST(Necklace, CheckRejectsUnevenColours) {
  EXPECT_THROW(Necklace({2, {1, 2, 2}}).Check(), InputError);
  EXPECT_THROW(Necklace({2, {1, 1, 3, 3}}).Check(), InputError);
  EXPECT_THROW(Necklace({2, {}}).Check(), InputError);
}

TEST(HasDistinctSubsetSums, Examples) {
  const std::vector<std::int64_t> four{3, 5, 6, 7};
  const std::vector<std::int64_t> five{6, 9, 11, 12, 13};
  const std::vector<std::int64_t> clash{1, 2, 3};
  EXPECT_TRUE(HasDistinctSubsetSums(four));
  EXPECT_TRUE(HasDistinctSubsetSums(five));
  EXPECT_FALSE(HasDistinctSubsetSums(clash));
}

TEST(HasDistinctSubsetSums, LargeValuesUseMerge) {
  std::vector<std::int64_t> powers;
  for (int i = 0; i < 20; ++i) powers.push_back(std::int64_t{1} << (i + 20));
  EXPECT_TRUE(HasDistinctSubsetSums(powers));
  powers.push_back(powers[0] + powers[1]);
  EXPECT_FALSE(HasDistinctSubsetSums(powers));
}

TEST(ConwayGuySet, SmallSetsAreDistinct) {
  EXPECT_EQ(ConwayGuySet(4), (std::vector<std::int64_t>{3, 5, 6, 7}));
  for (int n = 1; n <= 12; ++n) EXPECT_TRUE(HasDistinctSubsetSums(ConwayGuySet(n))) << n;
}

TEST(MinMaxDistinctSubsetSums, KnownMinimaUpToSix) {
  const std::vector<std::int64_t> minima{1, 2, 4, 7, 13, 24};
  for (int n = 1; n <= 6; ++n) {
    const auto best = MinMaxDistinctSubsetSums(n);
    ASSERT_TRUE(best.has_value());
    EXPECT_EQ(best->largest, minima[n - 1]) << n;
    EXPECT_TRUE(HasDistinctSubsetSums(best->witness));
  }
}

TEST(MinMaxDistinctSubsetSums, CapBelowMinimumFindsNothing) {
  EXPECT_FALSE(MinMaxDistinctSubsetSums(5, 12).has_value());
  EXPECT_FALSE(MinMaxDistinctSubsetSums(6, 23, Parallelism::kOpenMp).has_value());
}

TEST(MinMaxDistinctSubsetSums, ParallelMatchesSerial) {
  const auto serial = MinMaxDistinctSubsetSums(6);
  const auto parallel = MinMaxDistinctSubsetSums(6, 0, Parallelism::kOpenMp);
  ASSERT_TRUE(serial && parallel);
  EXPECT_EQ(serial->witness, parallel->witness);
}

TEST(FairnessProperty, StarWeightsHaveDistinctSums) {
  for (int colors = 1; colors <= 10; ++colors) {
    std::vector<int> beads;
    for (int c = 1; c <= colors; ++c) beads.insert(beads.end(), {c, c});
    ASSERT_TRUE(HasDistinctSubsetSums(NecklaceToStar(Necklace{2, beads}).weights)) << colors;
  }
}

TEST(FairnessProperty, UnfairnessWithinTwiceLength) {
  std::mt19937_64 rng(5);
  const auto star = NecklaceToStar(Necklace{2, {1, 2, 1, 2, 3, 3}});
  std::vector<int> order{1, 2, 3, 4, 5, 6};
  for (int i = 0; i < 50; ++i) {
    std::shuffle(order.begin(), order.end(), rng);
    std::string arcs = "d>x";
    for (int bead : order) arcs += " x>u" + std::to_string(bead) + " u" + std::to_string(bead) + ">x";
    arcs += " x>d";
    const auto route = Walk(star.instance, arcs);
    const auto value = UnfairnessIndex(star.instance, star.orders, route);
    ASSERT_GE(value, 0);
    ASSERT_LE(value, 2 * (static_cast<std::int64_t>(route.arcs.size()) - 1));
  }
}

}  // namespace
}  // namespace winroute
