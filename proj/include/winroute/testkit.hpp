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
#include <random>
#include <set>
#include <string>
#include <vector>

#include "winroute/fg_tree_dp.hpp"
#include "winroute/road_model.hpp"
#include "winroute/rooted_tree.hpp"
#include "winroute/tree_cutting.hpp"
#include "winroute/treewidth_dp.hpp"

// Exhaustive oracles and reduction generators. Nothing here calls into the
// dynamic programs it is meant to check.
namespace winroute::testkit {

struct SearchResult {
  bool exists = false;
  std::optional<VehicleRoute> witness;
  std::int64_t nodes = 0;
};

inline constexpr std::int64_t kDefaultGuard = 50'000'000;

// Depth-first search over arc sequences. A pendant tree whose arcs all have
// f = 1 is walked in one fixed depth-first order: every order yields the same
// gaps, trip lengths and counts. Throws GuardExceeded after `guard` nodes.
SearchResult BruteForceRoute(const RoadInstance& instance, const ExternalParams& params,
                             std::int64_t guard = kDefaultGuard);

// Same search for an f/g walk, with exact or at-most counts.
SearchResult BruteForceFgWalk(const FgInstance& instance, std::int64_t guard = kDefaultGuard);

// Route problem whose feasible routes are the at-most f/g walks of `fg`:
// one priority level per distinct gap list, L = max_length (or 2 sum f), c = 1.
struct RouteProblem {
  RoadInstance instance;
  ExternalParams params;
};
RouteProblem RouteProblemFromFg(const FgInstance& fg);

// Cover of the edges of a connected graph by connected edge sets of the given
// sizes, each containing an edge at `root` (or empty when its size is 0).
using EdgeCover = std::vector<std::vector<EdgeId>>;
std::optional<EdgeCover> BruteForceCut(const RoadInstance& graph, VertexId root,
                                       const SizeVector& sizes);
// Every size vector of such covers with k parts of a rooted tree.
std::set<SizeVector> BruteForceSizeVectors(const RootedTree& tree, int k);

// Fewest edges of a connected subgraph spanning the terminals.
int BruteForceSteiner(const RoadInstance& graph, const std::vector<VertexId>& terminals);

// Non-isomorphic rooted trees with 0..max_edges edges.
std::vector<RootedTree> EnumerateRootedTrees(int max_edges);
// Non-isomorphic connected simple graphs with 1..max_edges edges, vertices
// named "a", "b", ...; depot 0.
std::vector<RoadInstance> EnumerateConnectedGraphs(int max_edges);

struct ThreePartitionInstance {
  std::vector<int> values;
  int target = 0;

  int groups() const { return static_cast<int>(values.size()) / 3; }
  // Throws InputError unless there are 3n values summing to n * target
  // (and, when `restricted`, each strictly between target/4 and target/2).
  void Check(bool restricted) const;
};

// Split into n groups of sum `target`, as index lists; triples only when
// `triples_only`.
std::optional<std::vector<std::vector<int>>> SolveThreePartitionBrute(
    const ThreePartitionInstance& instance, bool triples_only = false);
// Every restricted instance (values sorted) with 1..max_groups groups and
// target <= max_target.
std::vector<ThreePartitionInstance> EnumerateRestrictedThreePartition(int max_groups,
                                                                      int max_target);

RouteProblem GenPartitionStar(const std::vector<std::int64_t>& weights);

struct ReductionWalk {
  FgInstance fg;
  std::int64_t scale = 0;         // B
  std::int64_t short_bound = 0;   // S'
  std::int64_t long_bound = 0;    // S'' (spider only)
  int depth = 0;                  // h (tree only)
  bool within_default_bounds = false;
};

ReductionWalk Gen3PartitionTree(const ThreePartitionInstance& instance);
ReductionWalk GenSpider(const ThreePartitionInstance& instance);

struct SteinerCut {
  RoadInstance graph;  // depot = first terminal
  SizeVector sizes;    // {t1, t2}
};
SteinerCut GenSteinerCut(const RoadInstance& graph, const std::vector<VertexId>& terminals,
                         int max_tree_edges);

// Random unweighted tree with `edges` edges and degree at most max_degree,
// depot at vertex 0.
RoadInstance RandomTree(std::mt19937_64& rng, int edges, int max_degree);
// Random f/g instance on a random tree: f in 1..max_f, gaps in 0..2 sum f.
FgInstance RandomFgInstance(std::mt19937_64& rng, int max_edges, const FgBounds& bounds,
                            WalkMode mode);
// Same draw of f, g and max_length on a given graph.
FgInstance RandomFgOnGraph(std::mt19937_64& rng, RoadInstance graph, int max_f, WalkMode mode);

struct DecomposedGraph {
  RoadInstance graph;
  TreeDecomposition decomposition;
};
// Connected graph of width at most 2 grown from one edge by pendant vertices,
// triangles on an existing edge (sometimes dropping that edge), and chords
// inside a bag. Depot at vertex 0.
DecomposedGraph RandomWidth2Graph(std::mt19937_64& rng, int max_edges, int max_degree);

}  // namespace winroute::testkit
