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

#include "winroute/rooted_tree.hpp"

#include <algorithm>
#include <string>

#include "winroute/errors.hpp"

namespace winroute {

RootedTree RootedTree::FromParents(std::vector<int> parent) {
  RootedTree t;
  const int n = static_cast<int>(parent.size());
  t.root = -1;
  for (int v = 0; v < n; ++v) {
    if (parent[v] < 0) {
      if (t.root >= 0) throw InputError("tree has two roots");
      t.root = v;
    } else if (parent[v] >= n) {
      throw InputError("parent out of range");
    }
  }
  if (t.root < 0) throw InputError("tree has no root");
  t.parent = std::move(parent);
  t.parent_edge.assign(n, -1);
  t.children.assign(n, {});
  EdgeId next = 0;
  for (int v = 0; v < n; ++v) {
    if (v == t.root) continue;
    t.parent_edge[v] = next++;
    t.children[t.parent[v]].push_back(v);
  }
  t.Finish();
  if (static_cast<int>(t.PostOrder().size()) != n) throw InputError("parent map has a cycle");
  return t;
}

RootedTree RootedTree::FromInstance(const RoadInstance& instance, VertexId root) {
  if (!instance.is_tree()) throw InputError("instance is not a tree");
  RootedTree t;
  const int n = instance.num_vertices();
  t.root = root;
  t.parent.assign(n, -1);
  t.parent_edge.assign(n, -1);
  t.children.assign(n, {});
  std::vector<int> stack{root};
  std::vector<char> seen(n, 0);
  seen[root] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (ArcId a : instance.out_arcs(v)) {
      const int w = instance.arc(a).head;
      if (seen[w]) continue;
      seen[w] = 1;
      t.parent[w] = v;
      t.parent_edge[w] = EdgeOfArc(a);
      t.children[v].push_back(w);
    }
    for (auto it = t.children[v].rbegin(); it != t.children[v].rend(); ++it) stack.push_back(*it);
  }
  t.Finish();
  return t;
}

void RootedTree::Finish() {
  int max_edge = -1;
  for (EdgeId e : parent_edge) max_edge = std::max(max_edge, e);
  lower_end_.assign(max_edge + 1, -1);
  for (int v = 0; v < num_vertices(); ++v) {
    if (parent_edge[v] >= 0) lower_end_[parent_edge[v]] = v;
  }
}

int RootedTree::UpperEnd(EdgeId e) const { return parent[lower_end_[e]]; }

std::vector<int> RootedTree::PostOrder() const {
  std::vector<int> order;
  order.reserve(num_vertices());
  std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
  std::vector<char> seen(num_vertices(), 0);
  seen[root] = 1;
  while (!stack.empty()) {
    auto& [v, i] = stack.back();
    if (i < children[v].size()) {
      const int c = children[v][i++];
      if (seen[c]) return order;  // cycle guard
      seen[c] = 1;
      stack.push_back({c, 0});
    } else {
      order.push_back(v);
      stack.pop_back();
    }
  }
  return order;
}

std::vector<int> RootedTree::SubtreeEdgeCounts() const {
  std::vector<int> below(num_vertices(), 0);
  for (int v : PostOrder()) {
    for (int c : children[v]) below[v] += below[c] + 1;
  }
  return below;
}

RoadInstance TreeInstance(const RootedTree& tree) {
  std::vector<std::string> names;
  for (int v = 0; v < tree.num_vertices(); ++v) names.push_back("v" + std::to_string(v));
  std::vector<Edge> edges(tree.num_edges());
  for (int v = 0; v < tree.num_vertices(); ++v) {
    if (v == tree.root) continue;
    edges[tree.parent_edge[v]] = Edge{tree.parent[v], v, 1, 1, Material::kChemical};
  }
  return RoadInstance::Create(std::move(names), std::move(edges), tree.root, 1);
}

}  // namespace winroute
