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
#include "winroute/errors.hpp"

namespace winroute {
namespace {

using test::Build;
using test::Walk;

bool HasViolation(const ValidationReport& report, ViolationKind kind) {
  for (const auto& v : report.violations) {
    if (v.kind == kind) return true;
  }
  return false;
}

TEST(SymmetricOrientation, SingleEdgeGivesBothArcs) {
  const auto inst = Build({"a", "b"}, {{"a", "b"}}, "a");
  const auto arcs = SymmetricOrientation(inst);
  ASSERT_EQ(arcs.size(), 2u);
  EXPECT_EQ(arcs[0].tail, 0);
  EXPECT_EQ(arcs[0].head, 1);
  EXPECT_EQ(arcs[1].tail, 1);
  EXPECT_EQ(arcs[1].head, 0);
}

TEST(SymmetricOrientation, TriangleHasSixArcs) {
  const auto inst = Build({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}, "a");
  EXPECT_EQ(SymmetricOrientation(inst).size(), 6u);
}

TEST(SymmetricOrientation, NoEdgesNoArcs) {
  const auto inst = Build({"d"}, {});
  EXPECT_TRUE(SymmetricOrientation(inst).empty());
}

TEST(RouteLength, Examples) {
  const auto path = Build({"d", "a", "b"}, {{"d", "a"}, {"a", "b"}});
  EXPECT_EQ(RouteLength(Walk(path, "d>a a>b b>a a>d"), path), 4);
  const auto weighted = Build({"d", "a", "b"}, {{"d", "a", 3}, {"d", "b", 7}});
  EXPECT_EQ(RouteLength(Walk(weighted, "d>a a>d d>b b>d"), weighted), 20);
  EXPECT_EQ(RouteLength(VehicleRoute{}, path), 0);
}

TEST(ValidateRoute, MinimalTourIsValid) {
  const auto inst = Build({"d", "a"}, {{"d", "a"}});
  const auto params = ExternalParams::Uniform(inst, 2, Rational(1), Rational(1), 1);
  EXPECT_TRUE(ValidateRoute(inst, params, Walk(inst, "d>a a>d")).valid);
}

TEST(ValidateRoute, TooLongForL) {
  const auto inst = Build({"d", "a"}, {{"d", "a"}});
  const auto params = ExternalParams::Uniform(inst, 1, Rational(1), Rational(1), 1);
  const auto report = ValidateRoute(inst, params, Walk(inst, "d>a a>d"));
  EXPECT_FALSE(report.valid);
  ASSERT_FALSE(report.violations.empty());
  EXPECT_EQ(report.violations.front().kind, ViolationKind::kLength);
  EXPECT_EQ(report.violations.front().measured, 2);
}

TEST(ValidateRoute, SingleSweepBreaksTraversedCapacity) {
  const auto inst = Build({"d", "x", "p", "q"}, {{"d", "x", 1}, {"x", "p", 2}, {"x", "q", 2}});
  const auto params = ExternalParams::Uniform(inst, 12, Rational(1, 4), Rational(1), 1);
  const auto report = ValidateRoute(inst, params, Walk(inst, "d>x x>p p>x x>q q>x x>d"));
  ASSERT_TRUE(HasViolation(report, ViolationKind::kCapacity));
  for (const auto& v : report.violations) {
    if (v.kind != ViolationKind::kCapacity) continue;
    EXPECT_EQ(v.measured, 10);
    EXPECT_EQ(v.allowed, Rational(3));
  }
}

TEST(ValidateRoute, ServicedCapacityCountsFirstVisitsOnly) {
  // Second trip re-walks d-x, which was serviced by the first.
  const auto inst = Build({"d", "x", "p"}, {{"d", "x", 2}, {"x", "p", 2}});
  auto params = ExternalParams::Uniform(inst, 16, Rational(1, 4), Rational(1), 2);
  const auto route = Walk(inst, "d>x x>d d>x x>p p>x x>d");
  EXPECT_TRUE(HasViolation(ValidateRoute(inst, params, route), ViolationKind::kCapacity));
  params.capacity_semantics = CapacitySemantics::kServiced;
  EXPECT_TRUE(ValidateRoute(inst, params, route).valid);
}

TEST(ValidateRoute, MissingArcIsCoverage) {
  const auto inst = Build({"d", "a", "b"}, {{"d", "a"}, {"d", "b"}});
  const auto params = ExternalParams::Uniform(inst, 10, Rational(1), Rational(1), 1);
  EXPECT_TRUE(HasViolation(ValidateRoute(inst, params, Walk(inst, "d>a a>d")), ViolationKind::kCoverage));
}

TEST(ValidateRoute, RepeatedArcIsFrequency) {
  const auto inst = Build({"d", "a"}, {{"d", "a"}});
  const auto params = ExternalParams::Uniform(inst, 10, Rational(1), Rational(1), 1);
  EXPECT_TRUE(HasViolation(ValidateRoute(inst, params, Walk(inst, "d>a a>d d>a a>d")),
                           ViolationKind::kFrequency));
}

TEST(ValidateRoute, GapIsMeasuredAcrossTheWrap) {
  // Edge d-a is left at step 2 and re-entered at step 1 of the next cycle:
  // the cyclic gap around it is the 6 units of the b and c trips.
  const auto inst = Build({"d", "a", "b", "c"}, {{"d", "a"}, {"d", "b", 2}, {"d", "c", 1}});
  auto params = ExternalParams::Uniform(inst, 10, Rational(1), Rational(1, 2), 1);
  const auto route = Walk(inst, "d>a a>d d>b b>d d>c c>d");
  EXPECT_TRUE(HasViolation(ValidateRoute(inst, params, route), ViolationKind::kPriorityGap));
  params = ExternalParams::Uniform(inst, 10, Rational(1), Rational(3, 5), 1);
  EXPECT_TRUE(ValidateRoute(inst, params, route).valid);
}

TEST(CheckRouteStructure, RejectsBrokenWalks) {
  const auto inst = Build({"d", "a", "b"}, {{"d", "a"}, {"a", "b"}});
  EXPECT_THROW(CheckRouteStructure(inst, Walk(inst, "d>a b>a")), InputError);
  EXPECT_THROW(CheckRouteStructure(inst, Walk(inst, "a>b b>a")), InputError);
  EXPECT_THROW(CheckRouteStructure(inst, Walk(inst, "d>a a>b")), InputError);
  EXPECT_NO_THROW(CheckRouteStructure(inst, Walk(inst, "d>a a>b b>a a>d")));
}

TEST(TripBoundaries, SplitsAtDepotVisits) {
  const auto inst = Build({"d", "a", "b"}, {{"d", "a"}, {"d", "b"}});
  const auto bounds = TripBoundaries(inst, Walk(inst, "d>a a>d d>b b>d"));
  EXPECT_EQ(bounds, (std::vector<int>{0, 2, 4}));
}

TEST(PriorityTable, LastEntryRepeats) {
  const PriorityTable t({{Rational(1, 2), Rational(1)}, {Rational(2)}});
  EXPECT_EQ(t.at(1, 1), Rational(1, 2));
  EXPECT_EQ(t.at(1, 5), Rational(1));
  EXPECT_EQ(t.at(2, 3), Rational(2));
  EXPECT_FALSE(t.constant_value().has_value());
  EXPECT_EQ(PriorityTable::Constant(3, Rational(2, 3)).constant_value(), Rational(2, 3));
}

TEST(ExternalParams, CheckRejectsBadCapacity) {
  const auto inst = Build({"d", "a"}, {{"d", "a"}});
  EXPECT_THROW(ExternalParams::Uniform(inst, 2, Rational(0), Rational(1), 1).Check(inst), InputError);
  EXPECT_THROW(ExternalParams::Uniform(inst, 2, Rational(3, 2), Rational(1), 1).Check(inst), InputError);
}

TEST(RoadInstance, CreateRejectsLoopsAndUnknownDepot) {
  EXPECT_THROW(RoadInstance::Create({"a"}, {Edge{0, 0}}, 0, 1), InputError);
  EXPECT_THROW(RoadInstance::Create({"a", "b"}, {Edge{0, 1}}, 5, 1), InputError);
}

}  // namespace
}  // namespace winroute
