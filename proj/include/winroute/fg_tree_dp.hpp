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

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "winroute/road_model.hpp"
#include "winroute/rooted_tree.hpp"

namespace winroute {

enum class WalkMode { kExact, kAtMost };

// Degree and frequency bounds the DP is instantiated for.
struct FgBounds {
  int max_degree = 3;
  int max_f = 2;
};

// Closed-walk problem on a unit-length graph: every arc of edge e is used
// f[e] times (kExact) or between 1 and f[e] times (kAtMost), and between the
// y-th and (y+1)-st traversal of e (either direction, cyclically) there are at
// most gap(e, y) steps.
struct FgInstance {
  RoadInstance graph;
  std::vector<int> f;                        // per EdgeId
  std::vector<std::vector<std::int64_t>> g;  // per EdgeId, entry y-1; last entry repeats
  WalkMode mode = WalkMode::kExact;
  std::int64_t max_length = -1;              // kAtMost: cap on the walk length, -1 none

  std::int64_t gap(EdgeId e, int y) const;
  std::int64_t exact_length() const;  // 2 * sum f
  // Sizes, f >= 1, nonempty gap lists, unit lengths. Throws InputError.
  void CheckShape() const;
  // CheckShape, plus: a tree within `bounds`.
  void Check(const FgBounds& bounds) const;
};

// Canonical maximal runs z(A) = {(a_1,b_1),...,(a_q,b_q)} of a set of route
// indices, 1-based, with b_i + 1 < a_{i+1}.
using IndexRuns = std::vector<std::pair<int, int>>;
IndexRuns RunsOf(const std::vector<int>& sorted_indices);

struct FgStats {
  // Per vertex, number of index sets stored for the subtree plus its parent
  // edge (the primed table); root entry holds its combined table size.
  std::vector<std::size_t> primed_sets;
  std::int64_t walk_length = 0;
};

struct FgResult {
  bool exists = false;
  std::optional<VehicleRoute> witness;
  FgStats stats;
};

struct FgOptions {
  FgBounds bounds;
  bool want_witness = true;
};

// Interval-set dynamic program over the tree rooted at the depot.
FgResult DecideFgWalk(const FgInstance& instance, const FgOptions& options = {});

// Steps between consecutive traversals of every edge, checked against g.
// Independent of the DP; used to audit witnesses.
bool SatisfiesGaps(const FgInstance& instance, const VehicleRoute& walk);
bool SatisfiesCounts(const FgInstance& instance, const VehicleRoute& walk);

// Vehicle-route problem on an unweighted tree as an f/g instance on the same
// tree (kAtMost, max_length = L). Gap bounds are floor(t(p(e), y) * L); on the
// edges at the depot, the bound between an entry and its exit is also capped
// by floor(c * L) - 2, which is the capacity constraint for one trip.
FgInstance EncodeVehicleRouteAsFg(const RoadInstance& instance, const ExternalParams& params);

struct VehicleRouteDecision {
  bool exists = false;
  std::optional<VehicleRoute> witness;
};

VehicleRouteDecision DecideVehicleRouteTree(const RoadInstance& instance,
                                            const ExternalParams& params,
                                            const FgOptions& options = {});

}  // namespace winroute
