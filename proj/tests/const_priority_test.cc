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

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "winroute/const_priority.hpp"
#include "winroute/errors.hpp"
#include "winroute/testkit.hpp"

namespace winroute {
namespace {

RoadInstance Star(int leaves) {
  std::vector<int> parent(leaves + 1, 0);
  parent[0] = -1;
  return TreeInstance(RootedTree::FromParents(parent));
}

TEST(ClassifyCase, FourCases) {
  EXPECT_EQ(ClassifyCase(Rational(1), Rational(1)), CaseTag::kCase1);
  EXPECT_EQ(ClassifyCase(Rational(2), Rational(1, 2)), CaseTag::kCase2);
  EXPECT_EQ(ClassifyCase(Rational(1, 2), Rational(1, 2)), CaseTag::kCase3);
  EXPECT_EQ(ClassifyCase(Rational(1, 2), Rational(1, 3)), CaseTag::kCase4);
  EXPECT_THROW(ClassifyCase(Rational(0), Rational(1)), InputError);
  EXPECT_EQ(CaseTagName(CaseTag::kCase3), "CASE3");
}

TEST(DecideRouteConstPriority, StarOfFiveFitsTen) {
  const auto star = Star(5);
  const auto params = ExternalParams::Uniform(star, 10, Rational(1), Rational(1), 1);
  const auto result = DecideRouteConstPriority(star, params);
  EXPECT_EQ(result.tag, CaseTag::kCase1);
  ASSERT_TRUE(result.feasible);
  EXPECT_TRUE(ValidateRoute(star, params, *result.route).valid);
  EXPECT_EQ(RouteLength(*result.route, star), 10);
}

TEST(DecideRouteConstPriority, StarOfFiveMissesNine) {
  const auto star = Star(5);
  const auto params = ExternalParams::Uniform(star, 9, Rational(1), Rational(1), 1);
  EXPECT_FALSE(DecideRouteConstPriority(star, params).feasible);
}

TEST(DecideRouteConstPriority, StarOfFiveHalfGapInfeasible) {
  const auto star = Star(5);
  const auto params = ExternalParams::Uniform(star, 10, Rational(1, 2), Rational(1, 2), 2);
  const auto result = DecideRouteConstPriority(star, params);
  EXPECT_EQ(result.tag, CaseTag::kCase3);
  EXPECT_FALSE(result.feasible);
  EXPECT_FALSE(testkit::BruteForceRoute(star, params).exists);
}

TEST(DecideRouteConstPriority, RejectsNonTree) {
  const auto triangle = test::Build({"d", "a", "b"}, {{"d", "a"}, {"a", "b"}, {"b", "d"}});
  const auto params = ExternalParams::Uniform(triangle, 6, Rational(1), Rational(1), 1);
  EXPECT_THROW(DecideRouteConstPriority(triangle, params), InputError);
}

TEST(DfsRoute, Examples) {
  const auto edge = test::Build({"d", "a"}, {{"d", "a"}});
  EXPECT_EQ(DfsRoute(edge), test::Walk(edge, "d>a a>d"));
  const auto path = test::Build({"d", "a", "b"}, {{"d", "a"}, {"a", "b"}});
  EXPECT_EQ(DfsRoute(path), test::Walk(path, "d>a a>b b>a a>d"));
}

TEST(ConstPriorityProperty, DfsRouteUsesEveryArcOnce) {
  for (const auto& tree : testkit::EnumerateRootedTrees(6)) {
    const auto inst = TreeInstance(tree);
    const auto route = DfsRoute(inst);
    ASSERT_EQ(static_cast<int>(route.arcs.size()), 2 * inst.num_edges());
    std::vector<int> seen(inst.num_arcs(), 0);
    for (ArcId a : route.arcs) ++seen[a];
    for (int count : seen) ASSERT_EQ(count, 1);
    ASSERT_NO_THROW(CheckRouteStructure(inst, route));
  }
}

TEST(ConstPriorityProperty, AgreesWithBruteForceOnSmallTrees) {
  for (const auto& tree : testkit::EnumerateRootedTrees(5)) {
    const auto inst = TreeInstance(tree);
    const int edges = inst.num_edges();
    for (Rational t : {Rational(1, 2), Rational(1), Rational(2)}) {
      for (int denominator : {1, 2, 3}) {
        const Rational c(1, denominator);
        for (std::int64_t L : {2 * edges - 1, 2 * edges, 2 * edges + 2, 3 * edges}) {
          if (L < 0) continue;
          const auto params = ExternalParams::Uniform(inst, L, c, t, denominator);
          const auto result = DecideRouteConstPriority(inst, params);
          ASSERT_EQ(result.feasible, testkit::BruteForceRoute(inst, params).exists)
              << "edges " << edges << " t " << FormatRational(t) << " c " << FormatRational(c)
              << " L " << L;
          if (result.feasible) ASSERT_TRUE(ValidateRoute(inst, params, *result.route).valid);
        }
      }
    }
  }
}

TEST(ConstPriorityProperty, LiteralConstructionIsSound) {
  for (const auto& tree : testkit::EnumerateRootedTrees(5)) {
    const auto inst = TreeInstance(tree);
    for (int denominator : {1, 2, 3}) {
      for (Rational t : {Rational(1, 2), Rational(1), Rational(2)}) {
        const auto params = ExternalParams::Uniform(inst, 3 * inst.num_edges(), Rational(1, denominator),
                                                    t, denominator);
        const auto result = DecideRouteConstPriority(inst, params, ConstPriorityOptions{true});
        if (result.feasible) {
          ASSERT_TRUE(ValidateRoute(inst, params, *result.route).valid);
          ASSERT_FALSE(result.exact_search);
        }
      }
    }
  }
}

}  // namespace
}  // namespace winroute
