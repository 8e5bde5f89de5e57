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
#include <span>
#include <vector>

#include "winroute/road_model.hpp"

namespace winroute {

// Per vertex, a cyclic order of its neighbors.
struct CyclicOrders {
  std::vector<std::vector<VertexId>> around;

  // Neighbors in the order their arcs were listed.
  static CyclicOrders FromInstance(const RoadInstance& instance);
  // Throws InputError unless every order is a permutation of the neighbors.
  void Check(const RoadInstance& instance) const;
};

// Number of edges with a forward complaint plus number with a backward
// complaint, over consecutive arc pairs of the route (no wrap at its end).
// The depot must have degree 1.
std::int64_t UnfairnessIndex(const RoadInstance& instance, const CyclicOrders& orders,
                             const VehicleRoute& route);

struct UnfairnessOptimum {
  VehicleRoute route;
  std::int64_t unfairness = 0;
  std::int64_t nodes = 0;
};

enum class Parallelism { kSerial, kOpenMp };

// Exhaustive branch and bound over routes that pass ValidateRoute. nullopt if
// none exists; throws GuardExceeded after `guard` search nodes. Both
// parallelism settings return the same route.
std::optional<UnfairnessOptimum> MinimizeUnfairness(const RoadInstance& instance,
                                                    const CyclicOrders& orders,
                                                    const ExternalParams& params,
                                                    std::int64_t guard = 50'000'000,
                                                    Parallelism parallelism = Parallelism::kSerial);

// k thieves; colors are 1..s and color i appears k * a_i times.
struct Necklace {
  int thieves = 2;
  std::vector<int> beads;

  int colors() const;
  // a_i for colors 1..s, at index i - 1.
  std::vector<int> share() const;
  // Throws InputError on an empty necklace, k < 1, a color below 1, an
  // absent color, or a count not divisible by k.
  void Check() const;
};

// Cuts sit between beads: cut i separates bead i from bead i + 1 (1-based).
// Interval j (in bead order) goes to thief owner[j].
struct Splitting {
  std::vector<int> cuts;
  std::vector<int> owner;

  int size() const { return static_cast<int>(cuts.size()); }
};

bool IsValidSplitting(const Necklace& necklace, const Splitting& splitting);

// Fewest cuts, by increasing cut count; throws GuardExceeded past 16 beads
// or 4 thieves.
Splitting SplitNecklaceMin(const Necklace& necklace);

struct NecklaceStar {
  RoadInstance instance;       // vertices x, d, u1..u_{nk}
  CyclicOrders orders;         // around x: d, u1, ..., u_{nk}
  ExternalParams params;
  std::vector<std::int64_t> weights;  // per color
};

NecklaceStar NecklaceToStar(const Necklace& necklace);

// Beads serviced on each depot-to-depot trip form one thief's part; cuts go
// where neighbouring beads change trip. Throws InputError naming the first
// trip whose colour counts are off, or if the trip count is not k.
Splitting SplittingFromRoute(const Necklace& necklace, const NecklaceStar& star,
                             const VehicleRoute& route);

// All 2^n subset sums distinct. Throws GuardExceeded above 30 elements.
bool HasDistinctSubsetSums(std::span<const std::int64_t> values);

struct DistinctSumsMinimum {
  std::int64_t largest = 0;
  std::vector<std::int64_t> witness;  // increasing
  std::int64_t nodes = 0;
};

// Smallest maximum of an n-element set with distinct subset sums, by
// exhaustive branch and bound over sets whose maximum is at most `cap`;
// nullopt if there are none. cap = 0 starts from the Conway-Guy set, which
// always qualifies. Both parallelism settings return the same set. Throws
// GuardExceeded when n > 12 or n * cap > 16383.
std::optional<DistinctSumsMinimum> MinMaxDistinctSubsetSums(
    int n, std::int64_t cap = 0, Parallelism parallelism = Parallelism::kSerial);

// Conway-Guy construction: u_n - u_i for 0 <= i < n, increasing.
std::vector<std::int64_t> ConwayGuySet(int n);

}  // namespace winroute
