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

#include "winroute/testkit.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <string>

#include "winroute/errors.hpp"

namespace winroute::testkit {
namespace {

std::vector<std::int64_t> DistancesTo(const RoadInstance& graph, VertexId target) {
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> dist(graph.num_vertices(), kInf);
  using Item = std::pair<std::int64_t, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[target] = 0;
  queue.emplace(0, target);
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (d != dist[v]) continue;
    for (ArcId a : graph.out_arcs(v)) {
      const VertexId w = graph.arc(a).head;
      if (d + graph.alpha(a) < dist[w]) {
        dist[w] = d + graph.alpha(a);
        queue.emplace(dist[w], w);
      }
    }
  }
  return dist;
}

// For arc p->v: if the edge is a bridge, the far side is a tree without the
// depot, and every edge there (and the bridge) is single-use, the closed tour
// entering through the arc. Empty otherwise.
std::vector<std::vector<ArcId>> RigidTours(const RoadInstance& graph,
                                           const std::vector<bool>& single_use) {
  std::vector<std::vector<ArcId>> tours(graph.num_arcs());
  for (ArcId entry = 0; entry < graph.num_arcs(); ++entry) {
    if (!single_use[EdgeOfArc(entry)]) continue;
    const Arc arc = graph.arc(entry);
    std::vector<ArcId> tour{entry};
    std::vector<bool> seen(graph.num_vertices(), false);
    seen[arc.head] = true;
    bool rigid = true;
    std::function<void(VertexId, EdgeId)> walk = [&](VertexId v, EdgeId from) {
      for (ArcId a : graph.out_arcs(v)) {
        if (!rigid) return;
        const EdgeId e = EdgeOfArc(a);
        if (e == from) continue;
        const VertexId w = graph.arc(a).head;
        if (seen[w] || w == graph.depot() || !single_use[e]) {
          rigid = false;
          return;
        }
        seen[w] = true;
        tour.push_back(a);
        walk(w, e);
        tour.push_back(ReverseArc(a));
      }
    };
    if (arc.head == graph.depot()) continue;
    walk(arc.head, EdgeOfArc(entry));
    if (!rigid) continue;
    tour.push_back(ReverseArc(entry));
    tours[entry] = std::move(tour);
  }
  return tours;
}

class RouteSearch {
 public:
  RouteSearch(const RoadInstance& instance, const ExternalParams& params, std::int64_t guard)
      : g_(instance), params_(params), guard_(guard),
        dist_(DistancesTo(instance, instance.depot())),
        arc_uses_(instance.num_arcs(), 0), edge_uses_(instance.num_edges(), 0),
        last_end_(instance.num_edges(), 0) {
    std::vector<bool> single(instance.num_edges());
    for (EdgeId e = 0; e < instance.num_edges(); ++e) {
      single[e] = params.f[2 * e] == 1 && params.f[2 * e + 1] == 1;
      uncovered_alpha_ += 2 * instance.edge(e).alpha;
      Rational widest{0};
      for (int i = 1; i <= params.f[2 * e] + params.f[2 * e + 1]; ++i) {
        widest = std::max(widest, params.t.at(instance.edge(e).priority, i));
      }
      widest_gap_.push_back(widest);
    }
    uncovered_arcs_ = instance.num_arcs();
    tours_ = RigidTours(instance, single);
    TwinClasses();
    if (instance.is_tree()) RootAtDepot();
  }

  SearchResult Run() {
    SearchResult result;
    result.exists = Search(g_.depot());
    if (result.exists) result.witness = VehicleRoute{route_};
    result.nodes = nodes_;
    return result;
  }

 private:
  struct Undo {
    std::int64_t last_end, trip, serviced;
  };

  // On a tree, up_edge_[v] is the edge from v toward the depot and down_arc_[e]
  // the arc of e pointing away from it.
  void RootAtDepot() {
    up_edge_.assign(g_.num_vertices(), -1);
    down_arc_.assign(g_.num_edges(), -1);
    pending_below_.assign(g_.num_edges(), 0);
    std::vector<VertexId> stack{g_.depot()};
    std::vector<bool> seen(g_.num_vertices(), false);
    seen[g_.depot()] = true;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (ArcId a : g_.out_arcs(v)) {
        const VertexId w = g_.arc(a).head;
        if (seen[w]) continue;
        seen[w] = true;
        up_edge_[w] = EdgeOfArc(a);
        down_arc_[EdgeOfArc(a)] = a;
        stack.push_back(w);
      }
    }
    for (ArcId a = 0; a < g_.num_arcs(); ++a) AdjustPending(a, +1);
  }

  // Rigid tours from the same vertex with the same shape, lengths and
  // priorities are interchangeable while both are unused.
  void TwinClasses() {
    std::map<std::vector<std::int64_t>, int> ids;
    twin_.assign(g_.num_arcs(), -1);
    for (ArcId a = 0; a < g_.num_arcs(); ++a) {
      if (tours_[a].empty()) continue;
      std::vector<std::int64_t> key{g_.arc(a).tail};
      std::vector<bool> opened(g_.num_edges(), false);
      for (ArcId step : tours_[a]) {
        const EdgeId e = EdgeOfArc(step);
        key.insert(key.end(), {g_.edge(e).alpha, g_.edge(e).priority, opened[e] ? 1 : 0});
        opened[e] = true;
      }
      twin_[a] = ids.emplace(std::move(key), static_cast<int>(ids.size())).first->second;
    }
  }

  void AdjustPending(ArcId a, int delta) {
    if (up_edge_.empty()) return;
    const EdgeId e = EdgeOfArc(a);
    VertexId v = g_.arc(down_arc_[e]).tail;
    while (v != g_.depot()) {
      pending_below_[up_edge_[v]] += delta;
      v = g_.arc(down_arc_[up_edge_[v]]).tail;
    }
  }

  // Tree only: every edge must still be crossed once (on the way home), twice
  // (work beyond it) or three times (home path, but its outward arc unused).
  std::int64_t RemainingOnTree(VertexId at) const {
    std::vector<bool> on_path(g_.num_edges(), false);
    for (VertexId v = at; v != g_.depot(); v = g_.arc(down_arc_[up_edge_[v]]).tail) {
      on_path[up_edge_[v]] = true;
    }
    std::int64_t total = 0;
    for (EdgeId e = 0; e < g_.num_edges(); ++e) {
      const ArcId down = down_arc_[e];
      const bool down_open = arc_uses_[down] == 0;
      const bool up_open = arc_uses_[ReverseArc(down)] == 0;
      int crossings = 0;
      if (on_path[e]) {
        crossings = down_open ? 3 : 1;
      } else if (pending_below_[e] > 0 || down_open || up_open) {
        crossings = 2;
      }
      total += crossings * g_.edge(e).alpha;
    }
    return total;
  }

  bool Push(ArcId a) {
    const EdgeId e = EdgeOfArc(a);
    const std::int64_t alpha = g_.alpha(a);
    const int level = g_.edge(e).priority;
    if (arc_uses_[a] >= params_.f[a]) return false;
    if (edge_uses_[e] > 0 &&
        !AtMostTimes(prefix_ - last_end_[e], params_.t.at(level, edge_uses_[e]), params_.L)) {
      return false;
    }
    const VertexId head = g_.arc(a).head;
    const std::int64_t end = prefix_ + alpha;
    const std::int64_t uncovered = uncovered_alpha_ - (arc_uses_[a] == 0 ? alpha : 0);
    if (end + std::max(uncovered, dist_[head]) > params_.L) return false;
    const std::int64_t trip = trip_ + alpha;
    const std::int64_t serviced = serviced_ + (edge_uses_[e] == 0 ? alpha : 0);
    if (params_.capacity_semantics == CapacitySemantics::kTraversed) {
      if (!AtMostTimes(trip + dist_[head], params_.c, params_.L)) return false;
    } else if (!AtMostTimes(serviced, params_.c, params_.L)) {
      return false;
    }
    for (EdgeId other = 0; other < g_.num_edges(); ++other) {
      if (other == e) continue;
      const Rational bound = edge_uses_[other] == 0
                                 ? widest_gap_[other]
                                 : params_.t.at(g_.edge(other).priority, edge_uses_[other]);
      const std::int64_t open = edge_uses_[other] == 0 ? end : end - last_end_[other];
      if (!AtMostTimes(open, bound, params_.L)) return false;
    }
    undo_.push_back(Undo{last_end_[e], trip_, serviced_});
    if (arc_uses_[a]++ == 0) {
      uncovered_alpha_ -= alpha;
      --uncovered_arcs_;
      AdjustPending(a, -1);
    }
    ++edge_uses_[e];
    last_end_[e] = end;
    prefix_ = end;
    trip_ = head == g_.depot() ? 0 : trip;
    serviced_ = head == g_.depot() ? 0 : serviced;
    route_.push_back(a);
    if (!up_edge_.empty() && end + RemainingOnTree(head) > params_.L) {
      Pop();
      return false;
    }
    return true;
  }

  void Pop() {
    const ArcId a = route_.back();
    route_.pop_back();
    const EdgeId e = EdgeOfArc(a);
    const Undo undo = undo_.back();
    undo_.pop_back();
    if (--arc_uses_[a] == 0) {
      uncovered_alpha_ += g_.alpha(a);
      ++uncovered_arcs_;
      AdjustPending(a, +1);
    }
    --edge_uses_[e];
    last_end_[e] = undo.last_end;
    prefix_ -= g_.alpha(a);
    trip_ = undo.trip;
    serviced_ = undo.serviced;
  }

  bool Search(VertexId v) {
    if (++nodes_ > guard_) throw GuardExceeded("route search exceeded node guard");
    if (v == g_.depot() && uncovered_arcs_ == 0 &&
        ValidateRoute(g_, params_, VehicleRoute{route_}).valid) {
      return true;
    }
    std::vector<int> tried;
    for (ArcId a : g_.out_arcs(v)) {
      const auto& tour = tours_[a];
      if (tour.empty()) {
        if (!Push(a)) continue;
        if (Search(g_.arc(a).head)) return true;
        Pop();
        continue;
      }
      if (arc_uses_[a] == 0) {
        if (std::find(tried.begin(), tried.end(), twin_[a]) != tried.end()) continue;
        tried.push_back(twin_[a]);
      }
      std::size_t pushed = 0;
      while (pushed < tour.size() && Push(tour[pushed])) ++pushed;
      if (pushed == tour.size() && Search(v)) return true;
      while (pushed-- > 0) Pop();
    }
    return false;
  }

  const RoadInstance& g_;
  const ExternalParams& params_;
  std::int64_t guard_;
  std::int64_t nodes_ = 0;
  std::vector<std::int64_t> dist_;
  std::vector<int> arc_uses_;
  std::vector<int> edge_uses_;
  std::vector<std::int64_t> last_end_;
  std::vector<Rational> widest_gap_;
  std::vector<std::vector<ArcId>> tours_;
  std::vector<int> twin_;
  std::vector<EdgeId> up_edge_;
  std::vector<ArcId> down_arc_;
  std::vector<int> pending_below_;
  std::vector<Undo> undo_;
  std::vector<ArcId> route_;
  std::int64_t prefix_ = 0;
  std::int64_t trip_ = 0;
  std::int64_t serviced_ = 0;
  std::int64_t uncovered_alpha_ = 0;
  int uncovered_arcs_ = 0;
};

class WalkSearch {
 public:
  WalkSearch(const FgInstance& fg, std::int64_t guard)
      : fg_(fg), g_(fg.graph), guard_(guard), dist_(DistancesTo(g_, g_.depot())),
        arc_uses_(g_.num_arcs(), 0), edge_uses_(g_.num_edges(), 0),
        last_(g_.num_edges(), -1), first_(g_.num_edges(), -1) {
    exact_ = fg.mode == WalkMode::kExact;
    std::int64_t total = 0;
    std::vector<bool> single(g_.num_edges());
    for (EdgeId e = 0; e < g_.num_edges(); ++e) {
      total += 2 * fg.f[e];
      missing_ += exact_ ? 2 * fg.f[e] : 2;
      single[e] = fg.f[e] == 1;
      std::int64_t widest = fg.g[e].front();
      for (std::int64_t bound : fg.g[e]) widest = std::max(widest, bound);
      widest_.push_back(widest);
    }
    max_length_ = total;
    if (!exact_ && fg.max_length >= 0) max_length_ = std::min(total, fg.max_length);
    tours_ = RigidTours(g_, single);
  }

  SearchResult Run() {
    SearchResult result;
    const bool fits = !exact_ || fg_.max_length < 0 || max_length_ <= fg_.max_length;
    if (fits) result.exists = Search(g_.depot());
    if (result.exists) result.witness = VehicleRoute{walk_};
    result.nodes = nodes_;
    return result;
  }

 private:
  std::int64_t Gap(EdgeId e, int y) const {
    const auto& list = fg_.g[e];
    return list[std::min<std::size_t>(y, list.size()) - 1];
  }

  bool Push(ArcId a) {
    const EdgeId e = EdgeOfArc(a);
    const auto pos = static_cast<std::int64_t>(walk_.size());
    if (arc_uses_[a] >= fg_.f[e]) return false;
    if (edge_uses_[e] > 0 && pos - last_[e] - 1 > Gap(e, edge_uses_[e])) return false;
    const VertexId head = g_.arc(a).head;
    const int missing = missing_ - ((exact_ || arc_uses_[a] == 0) ? 1 : 0);
    if (pos + 1 + std::max<std::int64_t>(missing, dist_[head]) > max_length_) return false;
    for (EdgeId other = 0; other < g_.num_edges(); ++other) {
      if (other == e) continue;
      if (edge_uses_[other] == 0) {
        if (pos + 1 > widest_[other]) return false;
      } else if (pos - last_[other] > Gap(other, edge_uses_[other])) {
        return false;
      }
    }
    saved_.push_back({last_[e], first_[e]});
    missing_ = missing;
    if (edge_uses_[e]++ == 0) first_[e] = pos;
    ++arc_uses_[a];
    last_[e] = pos;
    walk_.push_back(a);
    return true;
  }

  void Pop() {
    const ArcId a = walk_.back();
    walk_.pop_back();
    const EdgeId e = EdgeOfArc(a);
    --arc_uses_[a];
    --edge_uses_[e];
    if (exact_ || arc_uses_[a] == 0) ++missing_;
    last_[e] = saved_.back().first;
    first_[e] = saved_.back().second;
    saved_.pop_back();
  }

  bool Complete() const {
    const auto length = static_cast<std::int64_t>(walk_.size());
    for (EdgeId e = 0; e < g_.num_edges(); ++e) {
      if (edge_uses_[e] == 0) return false;
      if ((length - 1 - last_[e]) + first_[e] > Gap(e, edge_uses_[e])) return false;
    }
    return true;
  }

  bool Search(VertexId v) {
    if (++nodes_ > guard_) throw GuardExceeded("walk search exceeded node guard");
    if (v == g_.depot() && missing_ == 0 && Complete()) return true;
    for (ArcId a : g_.out_arcs(v)) {
      const auto& tour = tours_[a];
      if (tour.empty()) {
        if (!Push(a)) continue;
        if (Search(g_.arc(a).head)) return true;
        Pop();
        continue;
      }
      std::size_t pushed = 0;
      while (pushed < tour.size() && Push(tour[pushed])) ++pushed;
      if (pushed == tour.size() && Search(v)) return true;
      while (pushed-- > 0) Pop();
    }
    return false;
  }

  const FgInstance& fg_;
  const RoadInstance& g_;
  std::int64_t guard_;
  std::int64_t nodes_ = 0;
  bool exact_ = true;
  std::int64_t max_length_ = 0;
  std::vector<std::int64_t> dist_;
  std::vector<int> arc_uses_;
  std::vector<int> edge_uses_;
  std::vector<std::int64_t> last_;
  std::vector<std::int64_t> first_;
  std::vector<std::int64_t> widest_;
  std::vector<std::vector<ArcId>> tours_;
  std::vector<std::pair<std::int64_t, std::int64_t>> saved_;
  std::vector<ArcId> walk_;
  int missing_ = 0;
};

}  // namespace

SearchResult BruteForceRoute(const RoadInstance& instance, const ExternalParams& params,
                             std::int64_t guard) {
  params.Check(instance);
  return RouteSearch(instance, params, guard).Run();
}

SearchResult BruteForceFgWalk(const FgInstance& instance, std::int64_t guard) {
  instance.CheckShape();
  return WalkSearch(instance, guard).Run();
}

RouteProblem RouteProblemFromFg(const FgInstance& fg) {
  fg.CheckShape();
  const RoadInstance& g = fg.graph;
  std::int64_t length = 2 * std::accumulate(fg.f.begin(), fg.f.end(), std::int64_t{0});
  if (fg.max_length >= 0) length = std::min(length, fg.max_length);
  const std::int64_t scale = std::max<std::int64_t>(length, 1);
  std::map<std::vector<std::int64_t>, int> levels;
  std::vector<std::vector<Rational>> table;
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto [it, added] = levels.try_emplace(fg.g[e], static_cast<int>(levels.size()) + 1);
    if (added) {
      std::vector<Rational> row;
      for (std::int64_t bound : fg.g[e]) {
        if (bound < 0) throw InputError("negative gap bound has no route equivalent");
        // floor((2g + 1) / 2) == g on integer gaps
        row.emplace_back(2 * bound + 1, 2 * scale);
      }
      table.push_back(std::move(row));
    }
    Edge edge = g.edge(e);
    edge.priority = it->second;
    edges.push_back(edge);
  }
  if (table.empty()) table.push_back({Rational(1)});
  const int z = static_cast<int>(table.size());
  RouteProblem problem{RoadInstance::Create(std::vector<std::string>(g.names().begin(), g.names().end()),
                                            std::move(edges), g.depot(), z),
                       {}};
  problem.params.L = length;
  problem.params.c = Rational(1);
  problem.params.t = PriorityTable(std::move(table));
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    problem.params.f.push_back(fg.f[e]);
    problem.params.f.push_back(fg.f[e]);
  }
  return problem;
}

namespace {

using Mask = std::uint32_t;

// Edge sets that are connected and touch `root`, bucketed by size.
std::vector<std::vector<Mask>> RootedConnectedSets(const RoadInstance& graph, VertexId root) {
  const int m = graph.num_edges();
  std::vector<Mask> touching(graph.num_vertices(), 0);
  for (EdgeId e = 0; e < m; ++e) {
    touching[graph.edge(e).u] |= Mask{1} << e;
    touching[graph.edge(e).v] |= Mask{1} << e;
  }
  std::vector<std::vector<Mask>> by_size(m + 1);
  std::vector<bool> seen(std::size_t{1} << m, false);
  std::vector<Mask> frontier{0};
  seen[0] = true;
  while (!frontier.empty()) {
    std::vector<Mask> next;
    for (Mask set : frontier) {
      by_size[std::popcount(set)].push_back(set);
      Mask reach = touching[root];
      for (EdgeId e = 0; e < m; ++e) {
        if (set >> e & 1) reach |= touching[graph.edge(e).u] | touching[graph.edge(e).v];
      }
      for (Mask add = reach & ~set; add != 0; add &= add - 1) {
        const Mask grown = set | (add & -add);
        if (!seen[grown]) {
          seen[grown] = true;
          next.push_back(grown);
        }
      }
    }
    frontier = std::move(next);
  }
  return by_size;
}

}  // namespace

std::optional<EdgeCover> BruteForceCut(const RoadInstance& graph, VertexId root,
                                       const SizeVector& sizes) {
  if (graph.num_edges() > 24) throw GuardExceeded("cut search limited to 24 edges");
  if (sizes.empty() || sizes.size() > 4) throw InputError("cut search needs 1..4 parts");
  const int m = graph.num_edges();
  for (int size : sizes) {
    if (size < 0) throw InputError("part sizes must be nonnegative");
    if (size > m) return std::nullopt;
  }
  const auto by_size = RootedConnectedSets(graph, root);
  const Mask full = m == 32 ? ~Mask{0} : (Mask{1} << m) - 1;
  const int k = static_cast<int>(sizes.size());
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return sizes[a] > sizes[b]; });
  std::vector<int> tail_sum(k + 1, 0);
  for (int i = k - 1; i >= 0; --i) tail_sum[i] = tail_sum[i + 1] + sizes[order[i]];
  std::vector<Mask> chosen(k, 0);
  std::function<bool(int, Mask)> place = [&](int i, Mask covered) {
    if (i == k) return covered == full;
    if (std::popcount(full & ~covered) > tail_sum[i]) return false;
    for (Mask set : by_size[sizes[order[i]]]) {
      chosen[order[i]] = set;
      if (place(i + 1, covered | set)) return true;
    }
    return false;
  };
  if (!place(0, 0)) return std::nullopt;
  EdgeCover cover(k);
  for (int i = 0; i < k; ++i) {
    for (EdgeId e = 0; e < m; ++e) {
      if (chosen[i] >> e & 1) cover[i].push_back(e);
    }
  }
  return cover;
}

std::set<SizeVector> BruteForceSizeVectors(const RootedTree& tree, int k) {
  const int m = tree.num_edges();
  if (m > 20) throw GuardExceeded("size-vector enumeration limited to 20 edges");
  // upper[e]: the edge above e, or -1 when e hangs off the root.
  std::vector<int> upper(m, -1);
  for (int v = 0; v < tree.num_vertices(); ++v) {
    if (v == tree.root) continue;
    const int p = tree.parent[v];
    if (p != tree.root) upper[tree.parent_edge[v]] = tree.parent_edge[p];
  }
  std::vector<Mask> subtrees;
  for (Mask set = 0; set < (Mask{1} << m); ++set) {
    bool closed = true;
    for (EdgeId e = 0; e < m && closed; ++e) {
      if ((set >> e & 1) && upper[e] >= 0 && !(set >> upper[e] & 1)) closed = false;
    }
    if (closed) subtrees.push_back(set);
  }
  std::map<Mask, std::set<SizeVector>> states{{0, {SizeVector{}}}};
  for (int part = 0; part < k; ++part) {
    std::map<Mask, std::set<SizeVector>> next;
    for (const auto& [covered, prefixes] : states) {
      for (Mask set : subtrees) {
        auto& bucket = next[covered | set];
        for (SizeVector sizes : prefixes) {
          sizes.push_back(std::popcount(set));
          bucket.insert(std::move(sizes));
        }
      }
    }
    states = std::move(next);
  }
  const Mask full = (Mask{1} << m) - 1;
  return states.count(full) ? states[full] : std::set<SizeVector>{};
}

int BruteForceSteiner(const RoadInstance& graph, const std::vector<VertexId>& terminals) {
  if (graph.num_edges() > 24) throw GuardExceeded("Steiner search limited to 24 edges");
  if (terminals.size() <= 1) return 0;
  const int m = graph.num_edges();
  int best = -1;
  for (Mask set = 0; set < (Mask{1} << m); ++set) {
    const int size = std::popcount(set);
    if (best >= 0 && size >= best) continue;
    // Union-find over the chosen edges.
    std::vector<int> parent(graph.num_vertices());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) {
      return parent[v] == v ? v : parent[v] = find(parent[v]);
    };
    for (EdgeId e = 0; e < m; ++e) {
      if (set >> e & 1) parent[find(graph.edge(e).u)] = find(graph.edge(e).v);
    }
    const int anchor = find(terminals.front());
    bool spans = true;
    for (VertexId t : terminals) spans = spans && find(t) == anchor;
    if (spans) best = size;
  }
  return best;
}

namespace {

std::string Canonical(const std::vector<std::vector<int>>& children, int v) {
  std::vector<std::string> parts;
  for (int c : children[v]) parts.push_back(Canonical(children, c));
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& part : parts) out += part;
  return out + ")";
}

}  // namespace

std::vector<RootedTree> EnumerateRootedTrees(int max_edges) {
  std::vector<RootedTree> out;
  std::vector<std::vector<int>> level{{-1}};
  for (int edges = 0; edges <= max_edges; ++edges) {
    for (const auto& parents : level) out.push_back(RootedTree::FromParents(parents));
    if (edges == max_edges) break;
    std::map<std::string, std::vector<int>> grown;
    for (const auto& parents : level) {
      for (int v = 0; v < static_cast<int>(parents.size()); ++v) {
        std::vector<int> next = parents;
        next.push_back(v);
        std::vector<std::vector<int>> children(next.size());
        for (std::size_t u = 1; u < next.size(); ++u) children[next[u]].push_back(static_cast<int>(u));
        grown.try_emplace(Canonical(children, 0), std::move(next));
      }
    }
    level.clear();
    for (auto& [key, parents] : grown) level.push_back(std::move(parents));
  }
  return out;
}

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

std::uint64_t CanonicalCode(int n, const EdgeList& edges) {
  std::vector<std::vector<bool>> adjacent(n, std::vector<bool>(n, false));
  std::vector<int> degree(n, 0);
  for (auto [u, v] : edges) {
    adjacent[u][v] = adjacent[v][u] = true;
    ++degree[u];
    ++degree[v];
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return degree[a] < degree[b]; });
  // Permute only inside blocks of equal degree.
  std::vector<std::pair<int, int>> blocks;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && degree[order[j]] == degree[order[i]]) ++j;
    blocks.emplace_back(i, j);
    i = j;
  }
  std::uint64_t best = ~std::uint64_t{0};
  std::function<void(std::size_t)> visit = [&](std::size_t b) {
    if (b == blocks.size()) {
      std::uint64_t code = 0;
      int bit = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++bit) {
          if (adjacent[order[i]][order[j]]) code |= std::uint64_t{1} << bit;
        }
      }
      best = std::min(best, code);
      return;
    }
    auto [lo, hi] = blocks[b];
    std::sort(order.begin() + lo, order.begin() + hi);
    do {
      visit(b + 1);
    } while (std::next_permutation(order.begin() + lo, order.begin() + hi));
  };
  visit(0);
  return best;
}

}  // namespace

std::vector<RoadInstance> EnumerateConnectedGraphs(int max_edges) {
  if (max_edges > 10) throw GuardExceeded("graph enumeration limited to 10 edges");
  std::vector<RoadInstance> out;
  std::vector<std::pair<int, EdgeList>> level{{2, {{0, 1}}}};
  for (int edges = 1; edges <= max_edges; ++edges) {
    for (const auto& [n, list] : level) {
      std::vector<std::string> names;
      for (int v = 0; v < n; ++v) names.emplace_back(1, static_cast<char>('a' + v));
      std::vector<Edge> road;
      for (auto [u, v] : list) road.push_back(Edge{u, v});
      out.push_back(RoadInstance::Create(std::move(names), std::move(road), 0, 1));
    }
    if (edges == max_edges) break;
    std::map<std::pair<int, std::uint64_t>, std::pair<int, EdgeList>> grown;
    for (const auto& [n, list] : level) {
      auto add = [&](int size, EdgeList next) {
        const auto code = CanonicalCode(size, next);
        grown.try_emplace({size, code}, size, std::move(next));
      };
      for (int u = 0; u < n; ++u) {
        EdgeList next = list;
        next.emplace_back(u, n);
        add(n + 1, std::move(next));
        for (int v = u + 1; v < n; ++v) {
          if (std::find(list.begin(), list.end(), std::make_pair(u, v)) != list.end()) continue;
          EdgeList closed = list;
          closed.emplace_back(u, v);
          add(n, std::move(closed));
        }
      }
    }
    level.clear();
    for (auto& [key, graph] : grown) level.push_back(std::move(graph));
  }
  return out;
}

void ThreePartitionInstance::Check(bool restricted) const {
  if (values.empty() || values.size() % 3 != 0) throw InputError("3-partition needs 3n values");
  if (target <= 0) throw InputError("3-partition target must be positive");
  std::int64_t sum = 0;
  for (int a : values) {
    if (a <= 0) throw InputError("3-partition values must be positive");
    if (restricted && (4 * a <= target || 2 * a >= target)) {
      throw InputError("3-partition value outside (S/4, S/2)");
    }
    sum += a;
  }
  if (sum != static_cast<std::int64_t>(groups()) * target) {
    throw InputError("3-partition values do not sum to n * S");
  }
}

std::optional<std::vector<std::vector<int>>> SolveThreePartitionBrute(
    const ThreePartitionInstance& instance, bool triples_only) {
  if (instance.values.empty() || instance.values.size() % 3 != 0) {
    throw InputError("3-partition needs 3n values");
  }
  const int n = instance.groups();
  if (n > 4) throw GuardExceeded("3-partition search limited to n <= 4");
  const std::int64_t sum =
      std::accumulate(instance.values.begin(), instance.values.end(), std::int64_t{0});
  if (sum != static_cast<std::int64_t>(n) * instance.target) return std::nullopt;
  std::vector<int> order(instance.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return instance.values[a] > instance.values[b]; });
  std::vector<std::vector<int>> groups(n);
  std::vector<int> sums(n, 0);
  std::function<bool(std::size_t)> place = [&](std::size_t i) {
    if (i == order.size()) {
      for (int g = 0; g < n; ++g) {
        if (sums[g] != instance.target) return false;
        if (triples_only && groups[g].size() != 3) return false;
      }
      return true;
    }
    const int value = instance.values[order[i]];
    for (int g = 0; g < n; ++g) {
      if (sums[g] + value > instance.target) continue;
      if (triples_only && groups[g].size() == 3) continue;
      groups[g].push_back(order[i]);
      sums[g] += value;
      if (place(i + 1)) return true;
      sums[g] -= value;
      groups[g].pop_back();
      if (groups[g].empty()) break;  // later empty groups are symmetric
    }
    return false;
  };
  if (!place(0)) return std::nullopt;
  for (auto& group : groups) std::sort(group.begin(), group.end());
  return groups;
}

std::vector<ThreePartitionInstance> EnumerateRestrictedThreePartition(int max_groups,
                                                                      int max_target) {
  std::vector<ThreePartitionInstance> out;
  for (int n = 1; n <= max_groups; ++n) {
    for (int target = 1; target <= max_target; ++target) {
      std::vector<int> allowed;
      for (int a = 1; 2 * a < target; ++a) {
        if (4 * a > target) allowed.push_back(a);
      }
      std::vector<int> values;
      std::function<void(std::size_t, int)> pick = [&](std::size_t from, int left) {
        if (static_cast<int>(values.size()) == 3 * n) {
          if (left == 0) out.push_back({values, target});
          return;
        }
        for (std::size_t i = from; i < allowed.size(); ++i) {
          if (allowed[i] > left) break;
          values.push_back(allowed[i]);
          pick(i, left - allowed[i]);
          values.pop_back();
        }
      };
      pick(0, n * target);
    }
  }
  return out;
}

RouteProblem GenPartitionStar(const std::vector<std::int64_t>& weights) {
  if (weights.empty()) throw InputError("partition star needs at least one weight");
  std::vector<std::string> names{"d", "s"};
  std::vector<Edge> edges{Edge{0, 1, 1}};
  std::int64_t total = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0) throw InputError("partition star weights must be positive");
    names.push_back("w" + std::to_string(i + 1));
    edges.push_back(Edge{1, static_cast<VertexId>(i + 2), weights[i]});
    total += weights[i];
  }
  RouteProblem problem{RoadInstance::Create(std::move(names), std::move(edges), 0, 1), {}};
  problem.params = ExternalParams::Uniform(problem.instance, 2 * total + 4, Rational(1, 2),
                                           Rational(1), 1);
  problem.params.f[0] = problem.params.f[1] = 2;
  return problem;
}

namespace {

// Collects names and unit edges of a tree being built.
struct TreeBuilder {
  std::vector<std::string> names;
  std::vector<Edge> edges;
  std::vector<int> f;

  VertexId Add(std::string name) {
    names.push_back(std::move(name));
    return static_cast<VertexId>(names.size()) - 1;
  }
  void Link(VertexId u, VertexId v, int count) {
    edges.push_back(Edge{u, v});
    f.push_back(count);
  }
};

bool WithinDefaultBounds(const FgInstance& fg) {
  const FgBounds bounds;
  if (fg.graph.max_degree() > bounds.max_degree) return false;
  return std::all_of(fg.f.begin(), fg.f.end(), [&](int x) { return x <= bounds.max_f; });
}

}  // namespace

ReductionWalk Gen3PartitionTree(const ThreePartitionInstance& instance) {
  instance.Check(true);
  const int n = instance.groups();
  const int leaves = 3 * n;
  int depth = 0;
  while ((1 << depth) < leaves) ++depth;
  const std::int64_t scale = 3 * depth;
  const std::int64_t short_bound = scale * (instance.target + 1);

  TreeBuilder tree;
  const VertexId depot = tree.Add("d");
  const VertexId top = tree.Add("d'");
  tree.Link(depot, top, n);
  // Subtree of T' over leaf slots [lo, hi) at the given level.
  std::function<void(VertexId, int, int, int)> grow = [&](VertexId at, int level, int lo, int hi) {
    if (level == depth) {
      const std::int64_t size = scale * instance.values[lo];
      std::vector<VertexId> local{at};
      for (std::int64_t j = 1; j <= size; ++j) {
        local.push_back(tree.Add("r" + std::to_string(lo + 1) + "_" + std::to_string(j)));
        tree.Link(local[(j - 1) / 2], local.back(), 1);
      }
      return;
    }
    const int mid = (lo + hi) / 2;
    for (auto [a, b] : {std::pair{lo, mid}, std::pair{mid, hi}}) {
      if (a >= leaves) continue;
      const VertexId child = level + 1 == depth
                                 ? tree.Add("r" + std::to_string(a + 1))
                                 : tree.Add("t" + std::to_string(level + 1) + "_" + std::to_string(a));
      tree.Link(at, child, std::min(b, leaves) - a);
      grow(child, level + 1, a, b);
    }
  };
  grow(top, 0, 0, 1 << depth);

  ReductionWalk out;
  out.scale = scale;
  out.short_bound = short_bound;
  out.depth = depth;
  const auto count = static_cast<EdgeId>(tree.edges.size());
  out.fg.graph = RoadInstance::Create(std::move(tree.names), std::move(tree.edges), depot, 1);
  out.fg.f = std::move(tree.f);
  out.fg.mode = WalkMode::kExact;
  const std::int64_t length = out.fg.exact_length();
  out.fg.g.assign(count, {length});
  out.fg.g[0] = {2 * short_bound + 2};
  out.within_default_bounds = WithinDefaultBounds(out.fg);
  return out;
}

ReductionWalk GenSpider(const ThreePartitionInstance& instance) {
  instance.Check(true);
  const int n = instance.groups();
  const std::int64_t scale = n;
  const std::int64_t short_bound = scale * instance.target + 1;
  const std::int64_t long_bound = (n - 1) * short_bound;

  TreeBuilder tree;
  const VertexId depot = tree.Add("d");
  for (int i = 1; i <= n; ++i) tree.Link(depot, tree.Add("u" + std::to_string(i)), 2);
  for (std::size_t i = 0; i < instance.values.size(); ++i) {
    VertexId at = depot;
    for (std::int64_t j = 1; j <= scale * instance.values[i]; ++j) {
      const VertexId next = tree.Add("p" + std::to_string(i + 1) + "_" + std::to_string(j));
      tree.Link(at, next, 1);
      at = next;
    }
  }

  ReductionWalk out;
  out.scale = scale;
  out.short_bound = short_bound;
  out.long_bound = long_bound;
  const auto count = static_cast<EdgeId>(tree.edges.size());
  out.fg.graph = RoadInstance::Create(std::move(tree.names), std::move(tree.edges), depot, 1);
  out.fg.f = std::move(tree.f);
  out.fg.mode = WalkMode::kExact;
  const std::int64_t length = out.fg.exact_length();
  out.fg.g.assign(count, {length});
  // Each visit to u_i is a bounce (gap 0). Between the two visits there is
  // room for one group of paths, 2(S' - 1) steps; the rest of the walk is
  // the other gap.
  const std::int64_t window = 2 * short_bound - 2;
  for (int i = 0; i < n; ++i) out.fg.g[i] = {0, window, 0, length - 4 - window};
  out.within_default_bounds = WithinDefaultBounds(out.fg);
  return out;
}

SteinerCut GenSteinerCut(const RoadInstance& graph, const std::vector<VertexId>& terminals,
                         int max_tree_edges) {
  if (terminals.size() < 2) throw InputError("Steiner cut needs at least two terminals");
  std::vector<bool> seen(graph.num_vertices(), false);
  for (VertexId t : terminals) {
    if (t < 0 || t >= graph.num_vertices() || seen[t]) {
      throw InputError("terminals must be distinct vertices");
    }
    seen[t] = true;
  }
  const int m = graph.num_edges();
  std::vector<std::string> names(graph.names().begin(), graph.names().end());
  std::vector<Edge> edges(graph.edges().begin(), graph.edges().end());
  for (std::size_t i = 1; i < terminals.size(); ++i) {
    VertexId at = terminals[i];
    for (int j = 1; j <= m; ++j) {
      names.push_back(graph.name(terminals[i]) + "~" + std::to_string(j));
      const auto next = static_cast<VertexId>(names.size()) - 1;
      edges.push_back(Edge{at, next});
      at = next;
    }
  }
  SteinerCut out{RoadInstance::Create(std::move(names), std::move(edges), terminals.front(), 1),
                 {}};
  const int paths = static_cast<int>(terminals.size()) - 1;
  out.sizes = {paths * m + max_tree_edges, m};
  return out;
}

RoadInstance RandomTree(std::mt19937_64& rng, int edges, int max_degree) {
  std::vector<std::string> names{"v0"};
  std::vector<int> degree{0};
  std::vector<Edge> list;
  for (int v = 1; v <= edges; ++v) {
    std::vector<int> open;
    for (int u = 0; u < v; ++u) {
      if (degree[u] < max_degree) open.push_back(u);
    }
    if (open.empty()) throw InputError("degree bound too small for a tree");
    const int parent = open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)];
    ++degree[parent];
    degree.push_back(1);
    names.push_back("v" + std::to_string(v));
    list.push_back(Edge{parent, v});
  }
  return RoadInstance::Create(std::move(names), std::move(list), 0, 1);
}

FgInstance RandomFgInstance(std::mt19937_64& rng, int max_edges, const FgBounds& bounds,
                            WalkMode mode) {
  const int edges = std::uniform_int_distribution<int>(1, max_edges)(rng);
  return RandomFgOnGraph(rng, RandomTree(rng, edges, bounds.max_degree), bounds.max_f, mode);
}

FgInstance RandomFgOnGraph(std::mt19937_64& rng, RoadInstance graph, int max_f, WalkMode mode) {
  FgInstance fg;
  fg.graph = std::move(graph);
  fg.mode = mode;
  const int edges = fg.graph.num_edges();
  std::uniform_int_distribution<int> pick_f(1, max_f);
  for (int e = 0; e < edges; ++e) fg.f.push_back(pick_f(rng));
  const std::int64_t length = fg.exact_length();
  std::uniform_int_distribution<std::int64_t> pick_gap(0, std::max<std::int64_t>(length - 2, 0));
  for (int e = 0; e < edges; ++e) {
    std::vector<std::int64_t> bounds_e;
    for (int y = 0; y < 2 * fg.f[e]; ++y) bounds_e.push_back(pick_gap(rng));
    fg.g.push_back(std::move(bounds_e));
  }
  if (mode == WalkMode::kAtMost) {
    // Closed walks on trees have even length.
    const int step = fg.graph.is_tree() ? 2 : 1;
    const std::int64_t steps = (length - 2 * edges) / step;
    fg.max_length = 2 * edges + step * std::uniform_int_distribution<std::int64_t>(0, steps)(rng);
  }
  return fg;
}

DecomposedGraph RandomWidth2Graph(std::mt19937_64& rng, int max_edges, int max_degree) {
  std::vector<Edge> edges{Edge{0, 1}};
  std::vector<int> degree{1, 1};
  TreeDecomposition dec;
  dec.bags.push_back({0, 1});
  dec.children.emplace_back();
  const auto pick = [&](std::size_t size) {
    return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
  };
  const auto has_edge = [&](VertexId a, VertexId b) {
    return std::any_of(edges.begin(), edges.end(), [&](const Edge& e) {
      return (e.u == a && e.v == b) || (e.u == b && e.v == a);
    });
  };
  const auto attach = [&](std::vector<VertexId> bag, const std::vector<VertexId>& needed) {
    std::vector<int> hosts;
    for (std::size_t node = 0; node < dec.bags.size(); ++node) {
      const auto& host = dec.bags[node];
      if (std::all_of(needed.begin(), needed.end(), [&](VertexId v) {
            return std::find(host.begin(), host.end(), v) != host.end();
          })) {
        hosts.push_back(static_cast<int>(node));
      }
    }
    dec.children[hosts[pick(hosts.size())]].push_back(static_cast<int>(dec.bags.size()));
    dec.bags.push_back(std::move(bag));
    dec.children.emplace_back();
  };
  const int target = std::uniform_int_distribution<int>(1, max_edges)(rng);
  for (int attempt = 0; attempt < 64 && static_cast<int>(edges.size()) < target; ++attempt) {
    const int room = target - static_cast<int>(edges.size());
    const VertexId fresh = static_cast<VertexId>(degree.size());
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
      case 0: {
        const VertexId v = static_cast<VertexId>(pick(degree.size()));
        if (degree[v] >= max_degree) break;
        edges.push_back(Edge{v, fresh});
        ++degree[v];
        degree.push_back(1);
        attach({v, fresh}, {v});
        break;
      }
      case 1: {
        if (room < 2) break;
        const std::size_t base = pick(edges.size());
        const Edge edge = edges[base];
        const bool drop = std::bernoulli_distribution(0.4)(rng);
        if (!drop && (degree[edge.u] >= max_degree || degree[edge.v] >= max_degree)) break;
        if (drop) {
          edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(base));
        } else {
          ++degree[edge.u];
          ++degree[edge.v];
        }
        edges.push_back(Edge{edge.u, fresh});
        edges.push_back(Edge{edge.v, fresh});
        degree.push_back(2);
        attach({edge.u, edge.v, fresh}, {edge.u, edge.v});
        break;
      }
      default: {
        const auto& bag = dec.bags[pick(dec.bags.size())];
        if (bag.size() < 2) break;
        const VertexId a = bag[pick(bag.size())];
        const VertexId b = bag[pick(bag.size())];
        if (a == b || has_edge(a, b) || degree[a] >= max_degree || degree[b] >= max_degree) break;
        edges.push_back(Edge{a, b});
        ++degree[a];
        ++degree[b];
        break;
      }
    }
  }
  std::vector<std::string> names;
  for (std::size_t v = 0; v < degree.size(); ++v) names.push_back("v" + std::to_string(v));
  return {RoadInstance::Create(std::move(names), std::move(edges), 0, 1), std::move(dec)};
}

}  // namespace winroute::testkit
