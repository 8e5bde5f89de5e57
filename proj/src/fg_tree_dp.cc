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

#include "winroute/fg_tree_dp.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <string>
#include <unordered_map>

#include "winroute/errors.hpp"

namespace winroute {

std::int64_t FgInstance::gap(EdgeId e, int y) const {
  const auto& list = g[e];
  return list[std::min<std::size_t>(y, list.size()) - 1];
}

std::int64_t FgInstance::exact_length() const {
  std::int64_t total = 0;
  for (int count : f) total += 2 * count;
  return total;
}

void FgInstance::CheckShape() const {
  if (!graph.unweighted()) throw InputError("f/g walk: graph has non-unit lengths");
  const auto edges = static_cast<std::size_t>(graph.num_edges());
  if (f.size() != edges || g.size() != edges) throw InputError("f/g walk: f or g not sized to edges");
  for (std::size_t e = 0; e < edges; ++e) {
    if (f[e] < 1) throw InputError("f/g walk: f must be >= 1");
    if (g[e].empty()) throw InputError("f/g walk: empty gap list");
  }
}

void FgInstance::Check(const FgBounds& bounds) const {
  CheckShape();
  if (!graph.is_tree()) throw InputError("f/g walk: graph is not a tree");
  for (int count : f) {
    if (count > bounds.max_f) {
      throw InputError("f/g walk: f exceeds bound " + std::to_string(bounds.max_f));
    }
  }
  if (graph.max_degree() > bounds.max_degree) {
    throw InputError("f/g walk: degree exceeds bound " + std::to_string(bounds.max_degree));
  }
}

IndexRuns RunsOf(const std::vector<int>& sorted_indices) {
  IndexRuns runs;
  for (int x : sorted_indices) {
    if (!runs.empty() && runs.back().second + 1 == x) {
      runs.back().second = x;
    } else {
      runs.emplace_back(x, x);
    }
  }
  return runs;
}

namespace {

template <int W>
struct Bits {
  std::array<std::uint64_t, W> w{};

  void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  bool intersects(const Bits& o) const {
    for (int i = 0; i < W; ++i) {
      if (w[i] & o.w[i]) return true;
    }
    return false;
  }
  Bits operator|(const Bits& o) const {
    Bits r;
    for (int i = 0; i < W; ++i) r.w[i] = w[i] | o.w[i];
    return r;
  }
  Bits operator^(const Bits& o) const {
    Bits r;
    for (int i = 0; i < W; ++i) r.w[i] = w[i] ^ o.w[i];
    return r;
  }
  template <typename Fn>
  void ForEach(Fn&& fn) const {
    for (int i = 0; i < W; ++i) {
      for (std::uint64_t word = w[i]; word != 0; word &= word - 1) {
        fn(i * 64 + std::countr_zero(word));
      }
    }
  }
  friend bool operator==(const Bits&, const Bits&) = default;

  int Lowest() const {
    for (int i = 0; i < W; ++i) {
      if (w[i] != 0) return i * 64 + std::countr_zero(w[i]);
    }
    return -1;
  }

  static Bits Prefix(int length) {
    Bits r;
    for (int i = 0; i < length; ++i) r.set(i);
    return r;
  }
};

template <int W>
struct BitsHash {
  std::size_t operator()(const Bits<W>& b) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t word : b.w) {
      h ^= word + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xbf58476d1ce4e5b9ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

template <int W>
struct StageEntry {
  Bits<W> prev;
  Bits<W> child;
  int child_min;  // smallest index of `child`
};

template <int W>
using BitsMap = std::unordered_map<Bits<W>, StageEntry<W>, BitsHash<W>>;

template <int W>
struct PrimedEntry {
  Bits<W> base;
  Bits<W> entries;
  Bits<W> exits;
};

template <int W>
class WalkSolver {
 public:
  WalkSolver(const FgInstance& instance, const RootedTree& tree, int length)
      : instance_(instance), tree_(tree), length_(length),
        shape_(tree.num_vertices()), order_(tree.num_vertices()),
        stages_(tree.num_vertices()), by_lowest_(tree.num_vertices()),
        primed_(tree.num_vertices()) {
    // Children with equal shapes (subtree, f, g) have equal tables; they are
    // merged next to each other with increasing smallest index.
    for (int v : tree.PostOrder()) {
      order_[v] = tree.children[v];
      std::sort(order_[v].begin(), order_[v].end(),
                [&](int a, int b) { return shape_[a] < shape_[b]; });
      std::string shape = "(";
      if (v != tree.root) {
        const EdgeId e = tree.parent_edge[v];
        shape += std::to_string(instance.f[e]);
        for (int y = 1; y <= 2 * instance.f[e]; ++y) shape += "," + std::to_string(instance.gap(e, y));
      }
      for (int c : order_[v]) shape += shape_[c];
      shape_[v] = shape + ")";
    }
  }

  bool Run(FgStats& stats) {
    stats.primed_sets.assign(tree_.num_vertices(), 0);
    stats.walk_length = length_;
    for (int v : tree_.PostOrder()) {
      if (v == tree_.root) return SolveRoot(stats);
      SolveVertex(v);
      stats.primed_sets[v] = primed_[v].size();
      if (primed_[v].empty()) return false;
    }
    return false;
  }

  VehicleRoute Witness() const {
    std::vector<ArcId> walk(length_, -1);
    Bits<W> key = Bits<W>::Prefix(length_);
    UnwindStages(tree_.root, key, walk);
    return VehicleRoute{std::move(walk)};
  }

 private:
  using Stage = BitsMap<W>;

  int CountHigh(EdgeId e) const { return instance_.f[e]; }
  int CountLow(EdgeId e) const {
    return instance_.mode == WalkMode::kExact ? instance_.f[e] : 1;
  }

  // Union of the base set with one primed set per child, all disjoint.
  // keep(merged, last) filters every stage; at the root only the full set
  // survives the last one.
  template <typename Keep>
  void Combine(int v, Keep&& keep, bool complement_only) {
    auto& stages = stages_[v];
    const auto& kids = order_[v];
    stages.assign(kids.size(), {});
    Stage seed;
    seed.emplace(Bits<W>{}, StageEntry<W>{{}, {}, -1});
    const Stage* current = &seed;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const auto& child_sets = primed_[kids[i]];
      Stage& next = stages[i];
      const bool last = i + 1 == kids.size();
      const bool twin = i > 0 && shape_[kids[i]] == shape_[kids[i - 1]];
      auto add = [&](const Bits<W>& merged, const Bits<W>& prev, const Bits<W>& child,
                     int after) {
        const int low = child.Lowest();
        if (twin && low <= after) return;
        auto [it, added] = next.try_emplace(merged, StageEntry<W>{prev, child, low});
        // The smallest last minimum leaves the most room for the next twin.
        if (!added && low < it->second.child_min) it->second = StageEntry<W>{prev, child, low};
      };
      if (last && complement_only) {
        const Bits<W> full = Bits<W>::Prefix(length_);
        for (const auto& [prev, entry] : *current) {
          const Bits<W> rest = full ^ prev;
          if (child_sets.count(rest)) add(full, prev, rest, entry.child_min);
        }
      } else {
        const auto& sorted = ByLowest(kids[i]);
        for (const auto& [prev, entry] : *current) {
          auto it = sorted.begin();
          if (twin) {
            it = std::partition_point(sorted.begin(), sorted.end(), [&](const auto& item) {
              return item.first <= entry.child_min;
            });
          }
          for (; it != sorted.end(); ++it) {
            const Bits<W>& child = it->second;
            if (prev.intersects(child)) continue;
            const Bits<W> merged = prev | child;
            if (!keep(merged, last)) continue;
            add(merged, prev, child, entry.child_min);
          }
        }
      }
      current = &next;
    }
    base_keys_.clear();
    for (const auto& [key, unused] : *current) base_keys_.push_back(key);
    if (kids.empty()) base_keys_.assign(1, Bits<W>{});
  }

  bool SolveRoot(FgStats& stats) {
    if (tree_.children[tree_.root].empty()) {
      stats.primed_sets[tree_.root] = 1;
      return length_ == 0;
    }
    Combine(tree_.root, [](const Bits<W>&, bool) { return true; }, true);
    stats.primed_sets[tree_.root] = base_keys_.size();
    return !base_keys_.empty();
  }

  void SolveVertex(int v) {
    const EdgeId e = tree_.parent_edge[v];
    const int high = CountHigh(e);
    // Runs only grow as children are added, and a run is the gap between the
    // entry before it and the exit after it.
    std::int64_t widest = 0;
    for (int y = 1; y <= 2 * high; ++y) widest = std::max(widest, instance_.gap(e, y));
    Combine(
        v,
        [&](const Bits<W>& merged, bool last) {
          const auto [runs, longest] = Runs(merged);
          return longest <= widest && (!last || runs <= high);
        },
        false);
    for (const auto& base : base_keys_) Extend(v, e, base);
  }

  // Primed sets of child c as (smallest index, set), sorted.
  const std::vector<std::pair<int, Bits<W>>>& ByLowest(int c) {
    auto& sorted = by_lowest_[c];
    if (sorted.empty()) {
      for (const auto& [set, unused] : primed_[c]) sorted.emplace_back(set.Lowest(), set);
      std::sort(sorted.begin(), sorted.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    return sorted;
  }

  // (number of maximal runs, longest run)
  std::pair<int, int> Runs(const Bits<W>& bits) const {
    int runs = 0;
    int longest = 0;
    int current = 0;
    int prev = -2;
    bits.ForEach([&](int x) {
      if (x != prev + 1) {
        ++runs;
        current = 0;
      }
      longest = std::max(longest, ++current);
      prev = x;
    });
    return {runs, longest};
  }

  // Adds every (entries, exits) placement for edge e around base set A.
  void Extend(int v, EdgeId e, const Bits<W>& base) {
    Bits<W> entries;
    Bits<W> exits;
    std::vector<int> forced;
    int runs = 0;
    bool ok = true;
    int prev = -2;
    int run_end = -2;
    auto close_run = [&](int end) {
      if (end + 1 >= length_) ok = false;
      else exits.set(end + 1);
    };
    base.ForEach([&](int x) {
      if (x != prev + 1) {
        if (prev >= 0) close_run(prev);
        ++runs;
        if (x == 0) ok = false;
        else entries.set(x - 1);
      }
      prev = x;
      run_end = x;
    });
    if (prev >= 0) close_run(run_end);
    if (!ok || entries.intersects(exits)) return;
    const Bits<W> forced_bits = entries | exits;
    forced_bits.ForEach([&](int x) { forced.push_back(x); });
    const Bits<W> blocked = base | forced_bits;

    const int low = std::max(CountLow(e), std::max(runs, 1));
    const int high = CountHigh(e);
    for (int count = low; count <= high; ++count) {
      Placement p{v, e, base, blocked, forced, count, entries, exits};
      Place(p, count - runs, 0, 0, -1, 0, -1);
    }
  }

  struct Placement {
    int v;
    EdgeId e;
    const Bits<W>& base;
    const Bits<W>& blocked;
    const std::vector<int>& forced;
    int count;
    Bits<W> entries;
    Bits<W> exits;
  };

  // Appends traversal position x as the (seen+1)-st; false if the gap before
  // it is too long.
  bool Append(const Placement& p, int x, int& last, int& seen, int& first) const {
    if (seen > 0 && x - last - 1 > instance_.gap(p.e, seen)) return false;
    if (seen == 0) first = x;
    last = x;
    ++seen;
    return true;
  }

  void Place(Placement& p, int bounces, int from, std::size_t forced_at, int last, int seen,
             int first) {
    if (bounces == 0) {
      for (std::size_t i = forced_at; i < p.forced.size(); ++i) {
        if (!Append(p, p.forced[i], last, seen, first)) return;
      }
      const int wrap = (length_ - 1 - last) + first;
      if (wrap > instance_.gap(p.e, seen)) return;
      primed_[p.v].try_emplace(p.base | p.entries | p.exits,
                               PrimedEntry<W>{p.base, p.entries, p.exits});
      return;
    }
    std::size_t fi = forced_at;
    int l = last, s = seen, fst = first;
    for (int x = from; x + 1 < length_; ++x) {
      bool broke = false;
      while (fi < p.forced.size() && p.forced[fi] < x) {
        if (!Append(p, p.forced[fi], l, s, fst)) {
          broke = true;
          break;
        }
        ++fi;
      }
      if (broke) return;
      if (s > 0 && x - l - 1 > instance_.gap(p.e, s)) return;
      if (p.blocked.test(x) || p.blocked.test(x + 1)) continue;
      int l2 = l, s2 = s, f2 = fst;
      Append(p, x, l2, s2, f2);
      if (!Append(p, x + 1, l2, s2, f2)) continue;
      p.entries.set(x);
      p.exits.set(x + 1);
      Place(p, bounces - 1, x + 2, fi, l2, s2, f2);
      p.entries.w[x >> 6] &= ~(std::uint64_t{1} << (x & 63));
      p.exits.w[(x + 1) >> 6] &= ~(std::uint64_t{1} << ((x + 1) & 63));
    }
  }

  void UnwindStages(int v, Bits<W> key, std::vector<ArcId>& walk) const {
    const auto& kids = order_[v];
    for (std::size_t i = kids.size(); i-- > 0;) {
      const StageEntry<W>& entry = stages_[v][i].at(key);
      UnwindPrimed(kids[i], entry.child, walk);
      key = entry.prev;
    }
  }

  void UnwindPrimed(int v, const Bits<W>& key, std::vector<ArcId>& walk) const {
    const auto& entry = primed_[v].at(key);
    const int p = tree_.parent[v];
    const ArcId down = *instance_.graph.FindArc(p, v);
    const ArcId up = ReverseArc(down);
    entry.entries.ForEach([&](int x) { walk[x] = down; });
    entry.exits.ForEach([&](int x) { walk[x] = up; });
    UnwindStages(v, entry.base, walk);
  }

  const FgInstance& instance_;
  const RootedTree& tree_;
  int length_;
  std::vector<std::string> shape_;
  std::vector<std::vector<int>> order_;  // children in merge order
  std::vector<std::vector<Stage>> stages_;
  std::vector<std::vector<std::pair<int, Bits<W>>>> by_lowest_;
  std::vector<std::unordered_map<Bits<W>, PrimedEntry<W>, BitsHash<W>>> primed_;
  std::vector<Bits<W>> base_keys_;
};

template <int W>
bool SolveAt(const FgInstance& instance, const RootedTree& tree, int length,
             const FgOptions& options, FgResult& result) {
  WalkSolver<W> solver(instance, tree, length);
  FgStats stats;
  const bool found = solver.Run(stats);
  for (std::size_t v = 0; v < stats.primed_sets.size(); ++v) {
    if (result.stats.primed_sets.size() <= v) result.stats.primed_sets.resize(v + 1, 0);
    result.stats.primed_sets[v] = std::max(result.stats.primed_sets[v], stats.primed_sets[v]);
  }
  if (!found) return false;
  result.exists = true;
  result.stats.walk_length = length;
  if (options.want_witness) result.witness = solver.Witness();
  return true;
}

bool SolveLength(const FgInstance& instance, const RootedTree& tree, int length,
                 const FgOptions& options, FgResult& result) {
  if (length <= 64) return SolveAt<1>(instance, tree, length, options, result);
  if (length <= 128) return SolveAt<2>(instance, tree, length, options, result);
  if (length <= 256) return SolveAt<4>(instance, tree, length, options, result);
  if (length <= 512) return SolveAt<8>(instance, tree, length, options, result);
  if (length <= 1024) return SolveAt<16>(instance, tree, length, options, result);
  throw InputError("f/g walk: walk length " + std::to_string(length) + " above 1024");
}

}  // namespace

FgResult DecideFgWalk(const FgInstance& instance, const FgOptions& options) {
  instance.Check(options.bounds);
  const RootedTree tree = RootedTree::FromInstance(instance.graph, instance.graph.depot());
  FgResult result;
  result.stats.primed_sets.assign(tree.num_vertices(), 0);
  const std::int64_t full = instance.exact_length();
  if (instance.mode == WalkMode::kExact) {
    if (instance.max_length >= 0 && full > instance.max_length) return result;
    SolveLength(instance, tree, static_cast<int>(full), options, result);
    return result;
  }
  std::int64_t top = full;
  if (instance.max_length >= 0) top = std::min(top, instance.max_length);
  for (std::int64_t length = 2 * instance.graph.num_edges(); length <= top; length += 2) {
    if (SolveLength(instance, tree, static_cast<int>(length), options, result)) break;
  }
  return result;
}

bool SatisfiesCounts(const FgInstance& instance, const VehicleRoute& walk) {
  const auto& graph = instance.graph;
  std::vector<int> uses(graph.num_arcs(), 0);
  for (ArcId a : walk.arcs) {
    if (a < 0 || a >= graph.num_arcs()) return false;
    ++uses[a];
  }
  if (instance.max_length >= 0 && static_cast<std::int64_t>(walk.arcs.size()) > instance.max_length) {
    return false;
  }
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    for (ArcId a : {2 * e, 2 * e + 1}) {
      const bool fits = instance.mode == WalkMode::kExact
                            ? uses[a] == instance.f[e]
                            : uses[a] >= 1 && uses[a] <= instance.f[e];
      if (!fits) return false;
    }
  }
  return true;
}

bool SatisfiesGaps(const FgInstance& instance, const VehicleRoute& walk) {
  const auto& graph = instance.graph;
  const auto length = static_cast<std::int64_t>(walk.arcs.size());
  std::vector<std::vector<std::int64_t>> positions(graph.num_edges());
  for (std::int64_t i = 0; i < length; ++i) {
    const ArcId a = walk.arcs[i];
    if (a < 0 || a >= graph.num_arcs()) return false;
    positions[EdgeOfArc(a)].push_back(i);
  }
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    const auto& xs = positions[e];
    if (xs.empty()) return false;
    const int m = static_cast<int>(xs.size());
    for (int y = 1; y < m; ++y) {
      if (xs[y] - xs[y - 1] - 1 > instance.gap(e, y)) return false;
    }
    if ((length - 1 - xs.back()) + xs.front() > instance.gap(e, m)) return false;
  }
  return true;
}

FgInstance EncodeVehicleRouteAsFg(const RoadInstance& instance, const ExternalParams& params) {
  params.Check(instance);
  if (!instance.is_tree()) throw InputError("tree route decision: network is not a tree");
  if (!instance.unweighted()) throw InputError("tree route decision: network is weighted");
  if (params.capacity_semantics != CapacitySemantics::kTraversed) {
    throw InputError("tree route decision: only traversed capacity is supported");
  }
  FgInstance fg;
  fg.graph = instance;
  fg.mode = WalkMode::kAtMost;
  fg.max_length = params.L;
  const std::int64_t trip_interior = FloorTimes(params.c, params.L) - 2;
  const VertexId depot = instance.depot();
  for (EdgeId e = 0; e < instance.num_edges(); ++e) {
    const Edge& edge = instance.edge(e);
    const int count = std::min(params.f[2 * e], params.f[2 * e + 1]);
    const bool at_depot = edge.u == depot || edge.v == depot;
    std::vector<std::int64_t> bounds;
    for (int y = 1; y <= 2 * count; ++y) {
      std::int64_t bound = FloorTimes(params.t.at(edge.priority, y), params.L);
      if (at_depot && y % 2 == 1) bound = std::min(bound, trip_interior);
      bounds.push_back(bound);
    }
    fg.f.push_back(count);
    fg.g.push_back(std::move(bounds));
  }
  return fg;
}

VehicleRouteDecision DecideVehicleRouteTree(const RoadInstance& instance,
                                            const ExternalParams& params,
                                            const FgOptions& options) {
  const FgInstance fg = EncodeVehicleRouteAsFg(instance, params);
  FgResult result = DecideFgWalk(fg, options);
  return VehicleRouteDecision{result.exists, std::move(result.witness)};
}

}  // namespace winroute
