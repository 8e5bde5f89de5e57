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

#pragma once

#include <optional>
#include <string_view>

#include "winroute/rational.hpp"
#include "winroute/road_model.hpp"

namespace winroute {

enum class CaseTag { kCase1, kCase2, kCase3, kCase4 };

std::string_view CaseTagName(CaseTag tag);  // "CASE1" ... "CASE4"

// CASE1: t >= 1, c = 1. CASE2: t >= 1, c < 1. CASE3: t < 1, t <= c.
// CASE4: t < 1, c < t. Throws InputError unless t > 0 and c in (0, 1].
CaseTag ClassifyCase(const Rational& t, const Rational& c);

struct ConstPriorityOptions {
  // Only the four-case construction: ceil(1/c) subtrees of the whole tree,
  // depth-first tours for cases 1 and 3. Sound but incomplete.
  bool literal = false;
};

struct ConstPriorityResult {
  CaseTag tag = CaseTag::kCase1;
  bool feasible = false;
  std::optional<VehicleRoute> route;
  // True when the construction failed and the tree DP settled the instance.
  bool exact_search = false;
};

// Unweighted tree, depot anywhere, t constant over levels and indices.
// Every returned route passes ValidateRoute. Without `literal`, the answer is
// exact under traversed capacity.
ConstPriorityResult DecideRouteConstPriority(const RoadInstance& instance,
                                             const ExternalParams& params,
                                             const ConstPriorityOptions& options = {});

// Closed depth-first tour from the depot, neighbours in adjacency order.
VehicleRoute DfsRoute(const RoadInstance& instance);

}  // namespace winroute
