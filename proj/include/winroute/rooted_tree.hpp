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

#include <vector>

#include "winroute/road_model.hpp"

namespace winroute {

// A tree rooted at `root`. Vertex v != root hangs below parent[v] through
// edge parent_edge[v]; children keep a fixed order.
struct RootedTree {
  int root = 0;
  std::vector<int> parent;
  std::vector<EdgeId> parent_edge;
  std::vector<std::vector<int>> children;

  int num_vertices() const { return static_cast<int>(parent.size()); }
  int num_edges() const { return num_vertices() - 1; }

  // parent[root] == -1. Edge ids are assigned in increasing child order.
  static RootedTree FromParents(std::vector<int> parent);
  // Throws InputError unless the instance is a tree.
  static RootedTree FromInstance(const RoadInstance& instance, VertexId root);

  std::vector<int> PostOrder() const;
  // Number of edges strictly below v.
  std::vector<int> SubtreeEdgeCounts() const;
  // Parent vertex of the edge, i.e. the endpoint closer to the root.
  int UpperEnd(EdgeId e) const;
  int LowerEnd(EdgeId e) const { return lower_end_[e]; }

 private:
  void Finish();
  std::vector<int> lower_end_;
};

// Unit-length instance on the tree, vertex i named "v<i>", depot at the root.
RoadInstance TreeInstance(const RootedTree& tree);

}  // namespace winroute
