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

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "winroute/fg_tree_dp.hpp"
#include "winroute/road_model.hpp"

namespace winroute {

// Rooted tree of bags.
struct TreeDecomposition {
  std::vector<std::vector<VertexId>> bags;
  std::vector<std::vector<int>> children;
  int root = 0;

  int width() const;
};

// Every vertex in a bag, every edge inside a bag, and the bags holding any
// one vertex form a connected subtree. Also rejects malformed node lists.
bool VerifyDecomposition(const RoadInstance& graph, const TreeDecomposition& dec);

enum class NodeKind { kLeaf, kIntroduce, kForget, kJoin };
std::string_view NodeKindName(NodeKind kind);

struct CanonicalNode {
  NodeKind kind = NodeKind::kLeaf;
  VertexId vertex = -1;          // introduced or forgotten vertex
  std::vector<VertexId> bag;     // sorted
  std::vector<int> children;
};

struct CanonicalDecomposition {
  std::vector<CanonicalNode> nodes;
  int root = 0;

  int width() const;
  TreeDecomposition AsDecomposition() const;
};

// Leaves hold one vertex, introduce/forget change the bag by their vertex,
// joins have two children with the parent's bag, and the root bag has the depot.
bool IsCanonical(const CanonicalDecomposition& dec, VertexId depot);

// Throws InputError if `dec` does not verify, has an empty bag, or two
// adjacent bags share no vertex.
CanonicalDecomposition Canonicalize(const RoadInstance& graph, const TreeDecomposition& dec,
                                    VertexId depot);

// Width-1 decomposition of a tree: a bag {depot} at the root and one bag per
// edge below it.
TreeDecomposition DecompositionOfTree(const RoadInstance& tree);

struct TwStats {
  std::size_t max_states = 0;  // largest state set stored at one node
  std::int64_t walk_length = 0;
};

struct TwResult {
  bool exists = false;
  TwStats stats;
};

// f/g closed walk on a general graph by dynamic programming over a canonical
// decomposition. Each edge is added at the highest node whose bag holds both
// endpoints. A state keeps the used walk indices and, at the ends of each
// maximal used run, the bag vertex the walk sits at. Decision only. Throws InputError when degree or f exceed `bounds`.
TwResult DecideFgWalkTw(const FgInstance& instance, const CanonicalDecomposition& dec,
                        const FgBounds& bounds = {});

}  // namespace winroute
