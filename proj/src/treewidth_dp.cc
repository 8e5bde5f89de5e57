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

#include "winroute/treewidth_dp.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <string>
#include <unordered_set>
#include <utility>

#include "winroute/errors.hpp"

namespace winroute {
namespace {

int WidthOf(const std::vector<std::vector<VertexId>>& bags) {
  std::size_t largest = 1;
  for (const auto& bag : bags) largest = std::max(largest, bag.size());
  return static_cast<int>(largest) - 1;
}

bool Contains(const std::vector<VertexId>& sorted_bag, VertexId v) {
  return std::binary_search(sorted_bag.begin(), sorted_bag.end(), v);
}

std::vector<VertexId> Sorted(std::vector<VertexId> bag) {
  std::sort(bag.begin(), bag.end());
  bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
  return bag;
}

// Parent of every node, or nullopt-like -2 if the child lists do not form a
// tree rooted at dec.root.
std::vector<int> ParentsOf(const TreeDecomposition& dec) {
  const int count = static_cast<int>(dec.bags.size());
  std::vector<int> parent(count, -2);
  if (dec.children.size() != dec.bags.size() || dec.root < 0 || dec.root >= count) return {};
  parent[dec.root] = -1;
  std::vector<int> stack{dec.root};
  int seen = 1;
  while (!stack.empty()) {
    const int node = stack.back();
    stack.pop_back();
    for (int child : dec.children[node]) {
      if (child < 0 || child >= count || parent[child] != -2) return {};
      parent[child] = node;
      ++seen;
      stack.push_back(child);
    }
  }
  if (seen != count) return {};
  return parent;
}

class Canonicalizer {
 public:
  explicit Canonicalizer(std::vector<std::vector<int>> adjacency,
                         std::vector<std::vector<VertexId>> bags)
      : adjacency_(std::move(adjacency)), bags_(std::move(bags)) {}

  CanonicalDecomposition Run(int root) {
    out_.root = Build(root, -1);
    return std::move(out_);
  }

 private:
  int Add(NodeKind kind, VertexId vertex, std::vector<VertexId> bag, std::vector<int> children) {
    out_.nodes.push_back({kind, vertex, std::move(bag), std::move(children)});
    return static_cast<int>(out_.nodes.size()) - 1;
  }

  int Leaf(const std::vector<VertexId>& bag) {
    int node = Add(NodeKind::kLeaf, bag.front(), {bag.front()}, {});
    std::vector<VertexId> current{bag.front()};
    for (std::size_t i = 1; i < bag.size(); ++i) {
      current.push_back(bag[i]);
      node = Add(NodeKind::kIntroduce, bag[i], Sorted(current), {node});
    }
    return node;
  }

  int Transition(int node, const std::vector<VertexId>& from, const std::vector<VertexId>& to) {
    if (std::none_of(from.begin(), from.end(), [&](VertexId v) { return Contains(to, v); })) {
      throw InputError("decomposition: adjacent bags share no vertex");
    }
    std::vector<VertexId> current = from;
    for (VertexId v : from) {
      if (Contains(to, v)) continue;
      std::erase(current, v);
      node = Add(NodeKind::kForget, v, current, {node});
    }
    for (VertexId v : to) {
      if (Contains(from, v)) continue;
      current.push_back(v);
      current = Sorted(std::move(current));
      node = Add(NodeKind::kIntroduce, v, current, {node});
    }
    return node;
  }

  int Build(int node, int parent) {
    std::vector<int> subs;
    for (int next : adjacency_[node]) {
      if (next == parent) continue;
      subs.push_back(Transition(Build(next, node), bags_[next], bags_[node]));
    }
    if (subs.empty()) return Leaf(bags_[node]);
    int joined = subs.front();
    for (std::size_t i = 1; i < subs.size(); ++i) {
      joined = Add(NodeKind::kJoin, -1, bags_[node], {joined, subs[i]});
    }
    return joined;
  }

  std::vector<std::vector<int>> adjacency_;
  std::vector<std::vector<VertexId>> bags_;
  CanonicalDecomposition out_;
};

// Per walk index: free, or used. A used index next to a free one keeps the
// vertex on that side (the tail toward the previous index, the head toward
// the next); all other used indices collapse to kUsed.
using State = std::u16string;
constexpr char16_t kFree = 0;
constexpr char16_t kUsed = 1;
constexpr int kUnreachable = 1 << 20;

// Shortest walks of each parity over the edges not yet placed, and what those
// edges still need.
struct FutureEdges {
  int vertices = 0;
  std::vector<std::array<int, 2>> shortest;  // [tail * vertices + head][parity]
  std::int64_t min_steps = 0;
  std::int64_t max_steps = 0;

  // Length of the shortest walk of at least one step with the parity of `steps`.
  int Shortest(VertexId from, VertexId to, std::int64_t steps) const {
    return shortest[from * vertices + to][steps % 2];
  }
};

FutureEdges FutureOf(const FgInstance& instance, const std::vector<char>& placed) {
  const RoadInstance& graph = instance.graph;
  FutureEdges future;
  future.vertices = graph.num_vertices();
  future.shortest.assign(future.vertices * future.vertices, {kUnreachable, kUnreachable});
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    if (placed[e]) continue;
    future.min_steps += instance.mode == WalkMode::kExact ? 2 * instance.f[e] : 2;
    future.max_steps += 2 * instance.f[e];
  }
  for (VertexId source = 0; source < future.vertices; ++source) {
    auto* row = &future.shortest[source * future.vertices];
    std::deque<std::pair<VertexId, int>> queue;
    // Seed with single steps so closed walks have at least one.
    for (ArcId a : graph.out_arcs(source)) {
      if (placed[EdgeOfArc(a)]) continue;
      const VertexId head = graph.arc(a).head;
      if (row[head][1] != kUnreachable) continue;
      row[head][1] = 1;
      queue.push_back({head, 1});
    }
    while (!queue.empty()) {
      const auto [v, parity] = queue.front();
      queue.pop_front();
      for (ArcId a : graph.out_arcs(v)) {
        if (placed[EdgeOfArc(a)]) continue;
        const VertexId head = graph.arc(a).head;
        const int flipped = parity ^ 1;
        if (row[head][flipped] != kUnreachable) continue;
        row[head][flipped] = row[v][parity] + 1;
        queue.push_back({head, flipped});
      }
    }
  }
  return future;
}

class TwSolver {
 public:
  TwSolver(const FgInstance& instance, const CanonicalDecomposition& dec,
           const std::vector<std::vector<EdgeId>>& edges_at, int length)
      : instance_(instance), graph_(instance.graph), dec_(dec), edges_at_(edges_at),
        length_(length), radix_(graph_.num_vertices() + 1) {}

  bool Run(std::size_t& max_states) {
    std::vector<std::vector<State>> tables(dec_.nodes.size());
    std::vector<std::vector<char>> placed(dec_.nodes.size());
    for (int node : PostOrder()) {
      const CanonicalNode& current = dec_.nodes[node];
      std::vector<State> table;
      switch (current.kind) {
        case NodeKind::kLeaf:
          table.push_back(State(length_, kFree));
          break;
        case NodeKind::kIntroduce:
          table = std::move(tables[current.children[0]]);
          break;
        case NodeKind::kForget:
          table = Forget(tables[current.children[0]], current.vertex);
          break;
        case NodeKind::kJoin:
          table = Join(tables[current.children[0]], tables[current.children[1]]);
          break;
      }
      std::vector<char> mine(graph_.num_edges(), 0);
      for (int child : current.children) {
        std::vector<State>().swap(tables[child]);
        for (EdgeId e = 0; e < graph_.num_edges(); ++e) mine[e] |= placed[child][e];
        std::vector<char>().swap(placed[child]);
      }
      if (current.kind == NodeKind::kJoin) {
        const FutureEdges future = FutureOf(instance_, mine);
        std::erase_if(table, [&](const State& state) { return !Viable(state, future); });
      }
      for (EdgeId e : edges_at_[node]) {
        mine[e] = 1;
        table = Extend(table, e, FutureOf(instance_, mine));
      }
      placed[node] = std::move(mine);
      max_states = std::max(max_states, table.size());
      if (table.empty()) return false;
      tables[node] = std::move(table);
    }
    return std::any_of(tables[dec_.root].begin(), tables[dec_.root].end(), [](const State& state) {
      return state.find(kFree) == State::npos;
    });
  }

 private:
  std::vector<int> PostOrder() const {
    std::vector<int> order;
    std::vector<std::pair<int, bool>> stack{{dec_.root, false}};
    while (!stack.empty()) {
      auto [node, expanded] = stack.back();
      stack.pop_back();
      if (expanded) {
        order.push_back(node);
        continue;
      }
      stack.push_back({node, true});
      for (int child : dec_.nodes[node].children) stack.push_back({child, false});
    }
    return order;
  }

  int Next(int index) const { return index + 1 == length_ ? 0 : index + 1; }
  int Prev(int index) const { return index == 0 ? length_ - 1 : index - 1; }

  char16_t Encode(VertexId tail, VertexId head) const {
    return static_cast<char16_t>(2 + (tail + 1) * radix_ + (head + 1));
  }
  // -1 when the side is not recorded.
  VertexId TailOf(char16_t code) const { return (code - 2) / radix_ - 1; }
  VertexId HeadOf(char16_t code) const { return (code - 2) % radix_ - 1; }

  // The walk leaves the depot at index 0.
  bool FitsAt(const State& state, int index, const Arc& arc) const {
    if (index == 0 && arc.tail != graph_.depot()) return false;
    if (index == length_ - 1 && arc.head != graph_.depot()) return false;
    const char16_t before = state[Prev(index)];
    const char16_t after = state[Next(index)];
    if (before != kFree && (before == kUsed || HeadOf(before) != arc.tail)) return false;
    if (after != kFree && (after == kUsed || TailOf(after) != arc.head)) return false;
    return true;
  }

  // Every free stretch can still be filled by a walk over unplaced edges
  // between the vertices at its two ends, and the free count fits their needs.
  bool Viable(const State& state, const FutureEdges& future) const {
    const auto free = static_cast<std::int64_t>(std::count(state.begin(), state.end(), kFree));
    if (free < future.min_steps || free > future.max_steps) return false;
    if (free == length_ || free == 0) return true;
    int start = 0;
    while (state[start] == kFree) ++start;  // a used index
    int i = start;
    do {
      const int next = Next(i);
      if (state[next] == kFree) {
        int end = next;
        std::int64_t steps = 0;
        while (state[end] == kFree) {
          ++steps;
          end = Next(end);
        }
        if (steps < future.Shortest(HeadOf(state[i]), TailOf(state[end]), steps)) return false;
        i = end;
      } else {
        i = next;
      }
    } while (i != start);
    return true;
  }

  // Drops the recorded side of every index whose neighbor on that side is used.
  State Normalized(State state) const {
    State out = state;
    for (int i = 0; i < length_; ++i) {
      if (state[i] == kFree || state[i] == kUsed) continue;
      const VertexId tail = state[Prev(i)] == kFree ? TailOf(state[i]) : -1;
      const VertexId head = state[Next(i)] == kFree ? HeadOf(state[i]) : -1;
      out[i] = tail < 0 && head < 0 ? kUsed : Encode(tail, head);
    }
    return out;
  }

  // Every recorded side names a bag vertex, so forgetting only has to reject
  // states that still wait on an arc at `vertex`.
  std::vector<State> Forget(const std::vector<State>& table, VertexId vertex) const {
    std::vector<State> out;
    for (const State& state : table) {
      const bool waiting = std::any_of(state.begin(), state.end(), [&](char16_t code) {
        return code > kUsed && (TailOf(code) == vertex || HeadOf(code) == vertex);
      });
      if (!waiting) out.push_back(state);
    }
    return out;
  }

  std::vector<State> Join(const std::vector<State>& left, const std::vector<State>& right) const {
    std::unordered_set<State> out;
    State merged(length_, kFree);
    for (const State& a : left) {
      for (const State& b : right) {
        bool ok = true;
        for (int i = 0; i < length_ && ok; ++i) {
          if (a[i] != kFree && b[i] != kFree) ok = false;
          merged[i] = a[i] != kFree ? a[i] : b[i];
        }
        // Across the two sides, the earlier index must end where the later starts.
        for (int i = 0; i < length_ && ok; ++i) {
          const int j = Next(i);
          if (merged[i] == kFree || merged[j] == kFree) continue;
          if ((a[i] != kFree) == (a[j] != kFree)) continue;
          ok = merged[i] != kUsed && merged[j] != kUsed && HeadOf(merged[i]) == TailOf(merged[j]);
        }
        if (ok) out.insert(Normalized(merged));
      }
    }
    return {out.begin(), out.end()};
  }

  std::vector<State> Extend(const std::vector<State>& table, EdgeId edge,
                            const FutureEdges& future) const {
    std::unordered_set<State> out;
    const int limit = instance_.f[edge];
    const auto& gaps = instance_.g[edge];
    const std::int64_t widest = *std::max_element(gaps.begin(), gaps.end());
    const Arc forward = graph_.arc(2 * edge);
    const Arc backward = graph_.arc(2 * edge + 1);
    const bool exact = instance_.mode == WalkMode::kExact;

    // Places traversals at increasing indices from `start`.
    std::function<void(State&, int, int, int, int, int, int)> place =
        [&](State& state, int start, int placed, int first, int last, int used_forward,
            int used_backward) {
          const bool counts_done = exact ? (used_forward == limit && used_backward == limit)
                                         : (used_forward >= 1 && used_backward >= 1);
          if (counts_done && (length_ - 1 - last) + first <= instance_.gap(edge, placed)) {
            State normalized = Normalized(state);
            if (Viable(normalized, future)) out.insert(std::move(normalized));
          }
          if (used_forward == limit && used_backward == limit) return;
          for (int i = start; i < length_; ++i) {
            if (placed == 0 ? i > widest : i - last - 1 > instance_.gap(edge, placed)) break;
            if (state[i] != kFree) continue;
            for (const bool is_forward : {true, false}) {
              const Arc& arc = is_forward ? forward : backward;
              if ((is_forward ? used_forward : used_backward) == limit) continue;
              if (!FitsAt(state, i, arc)) continue;
              state[i] = Encode(arc.tail, arc.head);
              place(state, i + 1, placed + 1, placed == 0 ? i : first, i,
                    used_forward + (is_forward ? 1 : 0), used_backward + (is_forward ? 0 : 1));
              state[i] = kFree;
            }
          }
        };
    for (State state : table) place(state, 0, 0, 0, 0, 0, 0);
    return {out.begin(), out.end()};
  }

  const FgInstance& instance_;
  const RoadInstance& graph_;
  const CanonicalDecomposition& dec_;
  const std::vector<std::vector<EdgeId>>& edges_at_;
  int length_;
  int radix_;
};

}  // namespace

int TreeDecomposition::width() const { return WidthOf(bags); }
int CanonicalDecomposition::width() const {
  std::vector<std::vector<VertexId>> bags;
  for (const auto& node : nodes) bags.push_back(node.bag);
  return WidthOf(bags);
}

TreeDecomposition CanonicalDecomposition::AsDecomposition() const {
  TreeDecomposition dec;
  for (const auto& node : nodes) {
    dec.bags.push_back(node.bag);
    dec.children.push_back(node.children);
  }
  dec.root = root;
  return dec;
}

std::string_view NodeKindName(NodeKind kind) {
  switch (kind) {
    case NodeKind::kLeaf: return "LEAF";
    case NodeKind::kIntroduce: return "INTRODUCE";
    case NodeKind::kForget: return "FORGET";
    case NodeKind::kJoin: return "JOIN";
  }
  return "?";
}

bool VerifyDecomposition(const RoadInstance& graph, const TreeDecomposition& dec) {
  const std::vector<int> parent = ParentsOf(dec);
  if (parent.empty()) return false;
  const int vertices = graph.num_vertices();
  std::vector<int> tops(vertices, 0);
  std::vector<std::vector<VertexId>> bags;
  for (const auto& bag : dec.bags) {
    for (VertexId v : bag) {
      if (v < 0 || v >= vertices) return false;
    }
    bags.push_back(Sorted(bag));
  }
  for (std::size_t node = 0; node < bags.size(); ++node) {
    for (VertexId v : bags[node]) {
      if (parent[node] < 0 || !Contains(bags[parent[node]], v)) ++tops[v];
    }
  }
  if (std::any_of(tops.begin(), tops.end(), [](int count) { return count != 1; })) return false;
  for (const Edge& edge : graph.edges()) {
    const bool covered = std::any_of(bags.begin(), bags.end(), [&](const auto& bag) {
      return Contains(bag, edge.u) && Contains(bag, edge.v);
    });
    if (!covered) return false;
  }
  return true;
}

bool IsCanonical(const CanonicalDecomposition& dec, VertexId depot) {
  const auto plain = dec.AsDecomposition();
  if (ParentsOf(plain).empty()) return false;
  if (!Contains(dec.nodes[dec.root].bag, depot)) return false;
  for (const auto& node : dec.nodes) {
    if (!std::is_sorted(node.bag.begin(), node.bag.end())) return false;
    switch (node.kind) {
      case NodeKind::kLeaf:
        if (!node.children.empty() || node.bag != std::vector<VertexId>{node.vertex}) return false;
        break;
      case NodeKind::kIntroduce:
      case NodeKind::kForget: {
        if (node.children.size() != 1) return false;
        auto expected = dec.nodes[node.children[0]].bag;
        if (node.kind == NodeKind::kIntroduce) {
          if (Contains(expected, node.vertex)) return false;
          expected.push_back(node.vertex);
        } else {
          if (!Contains(expected, node.vertex)) return false;
          std::erase(expected, node.vertex);
        }
        if (Sorted(expected) != node.bag || node.bag.empty()) return false;
        break;
      }
      case NodeKind::kJoin:
        if (node.children.size() != 2) return false;
        for (int child : node.children) {
          if (dec.nodes[child].bag != node.bag) return false;
        }
        break;
    }
  }
  return true;
}

CanonicalDecomposition Canonicalize(const RoadInstance& graph, const TreeDecomposition& dec,
                                    VertexId depot) {
  if (!VerifyDecomposition(graph, dec)) throw InputError("decomposition: invalid for graph");
  const int count = static_cast<int>(dec.bags.size());
  std::vector<std::vector<VertexId>> bags;
  for (const auto& bag : dec.bags) {
    if (bag.empty()) throw InputError("decomposition: empty bag");
    bags.push_back(Sorted(bag));
  }
  std::vector<std::vector<int>> adjacency(count);
  for (int node = 0; node < count; ++node) {
    for (int child : dec.children[node]) {
      adjacency[node].push_back(child);
      adjacency[child].push_back(node);
    }
  }
  int root = dec.root;
  if (!Contains(bags[root], depot)) {
    for (int node = 0; node < count; ++node) {
      if (Contains(bags[node], depot)) {
        root = node;
        break;
      }
    }
  }
  if (!Contains(bags[root], depot)) throw InputError("decomposition: depot in no bag");
  return Canonicalizer(std::move(adjacency), std::move(bags)).Run(root);
}

TreeDecomposition DecompositionOfTree(const RoadInstance& tree) {
  if (!tree.is_tree()) throw InputError("decomposition: graph is not a tree");
  TreeDecomposition dec;
  dec.bags.push_back({tree.depot()});
  dec.children.emplace_back();
  std::vector<int> node_below(tree.num_vertices(), -1);
  node_below[tree.depot()] = 0;
  std::vector<VertexId> stack{tree.depot()};
  std::vector<bool> seen(tree.num_vertices(), false);
  seen[tree.depot()] = true;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (ArcId a : tree.out_arcs(v)) {
      const VertexId w = tree.arc(a).head;
      if (seen[w]) continue;
      seen[w] = true;
      const int node = static_cast<int>(dec.bags.size());
      dec.bags.push_back({v, w});
      dec.children.emplace_back();
      dec.children[node_below[v]].push_back(node);
      node_below[w] = node;
      stack.push_back(w);
    }
  }
  return dec;
}

TwResult DecideFgWalkTw(const FgInstance& instance, const CanonicalDecomposition& dec,
                        const FgBounds& bounds) {
  instance.CheckShape();
  const RoadInstance& graph = instance.graph;
  for (int count : instance.f) {
    if (count > bounds.max_f) throw InputError("f/g walk: f exceeds bound " + std::to_string(bounds.max_f));
  }
  if (graph.max_degree() > bounds.max_degree) {
    throw InputError("f/g walk: degree exceeds bound " + std::to_string(bounds.max_degree));
  }
  if (!IsCanonical(dec, graph.depot())) throw InputError("decomposition: not canonical");
  if (!VerifyDecomposition(graph, dec.AsDecomposition())) {
    throw InputError("decomposition: invalid for graph");
  }
  if ((graph.num_vertices() + 1) * (graph.num_vertices() + 2) + 2 > 0xFFFF) {
    throw InputError("f/g walk: too many vertices");
  }

  // Highest node holding both endpoints, by depth from the root.
  const int count = static_cast<int>(dec.nodes.size());
  std::vector<int> depth(count, 0);
  std::vector<int> stack{dec.root};
  while (!stack.empty()) {
    const int node = stack.back();
    stack.pop_back();
    for (int child : dec.nodes[node].children) {
      depth[child] = depth[node] + 1;
      stack.push_back(child);
    }
  }
  std::vector<std::vector<EdgeId>> edges_at(count);
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    const Edge& edge = graph.edge(e);
    int best = -1;
    for (int node = 0; node < count; ++node) {
      const auto& bag = dec.nodes[node].bag;
      if (!Contains(bag, edge.u) || !Contains(bag, edge.v)) continue;
      if (best < 0 || depth[node] < depth[best]) best = node;
    }
    edges_at[best].push_back(e);
  }

  TwResult result;
  if (graph.num_edges() == 0) {
    result.exists = true;
    return result;
  }
  std::int64_t shortest = instance.exact_length();
  std::int64_t longest = shortest;
  if (instance.mode == WalkMode::kAtMost) {
    shortest = 2 * static_cast<std::int64_t>(graph.num_edges());
    if (instance.max_length >= 0) longest = std::min(longest, instance.max_length);
  }
  for (std::int64_t length = shortest; length <= longest; ++length) {
    TwSolver solver(instance, dec, edges_at, static_cast<int>(length));
    if (solver.Run(result.stats.max_states)) {
      result.exists = true;
      result.stats.walk_length = length;
      return result;
    }
  }
  return result;
}

}  // namespace winroute
