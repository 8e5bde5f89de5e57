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

#include "winroute/fairness_necklace.hpp"

#include <algorithm>
#include <atomic>
#include <bitset>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <string>

#include <boost/dynamic_bitset.hpp>

#include "winroute/errors.hpp"
#include "winroute/rational.hpp"

namespace winroute {
namespace {

// Position of every neighbor inside O(v), for successor and predecessor.
class OrderIndex {
 public:
  OrderIndex(const RoadInstance& instance, const CyclicOrders& orders)
      : instance_(instance), orders_(orders), slot_(instance.num_vertices()) {
    for (VertexId v = 0; v < instance.num_vertices(); ++v) {
      slot_[v].assign(instance.num_vertices(), -1);
      for (std::size_t i = 0; i < orders.around[v].size(); ++i) {
        slot_[v][orders.around[v][i]] = static_cast<int>(i);
      }
    }
  }

  // Edge {v, w'} where w' follows (step = 1) or precedes (step = -1) w in O(v).
  EdgeId Beside(VertexId v, VertexId w, int step) const {
    const auto& ring = orders_.around[v];
    const int size = static_cast<int>(ring.size());
    const VertexId other = ring[(slot_[v][w] + step + size) % size];
    return EdgeOfArc(*instance_.FindArc(v, other));
  }

 private:
  const RoadInstance& instance_;
  const CyclicOrders& orders_;
  std::vector<std::vector<int>> slot_;
};

void RequireDepotLeaf(const RoadInstance& instance) {
  if (instance.degree(instance.depot()) != 1) {
    throw InputError("unfairness: depot must have degree 1");
  }
}

// Complaint bookkeeping for one growing route, with undo.
class ComplaintTally {
 public:
  ComplaintTally(const RoadInstance& instance, const OrderIndex& index)
      : instance_(instance), index_(index), seen_(instance.num_edges(), 0),
        forward_(instance.num_edges(), 0), backward_(instance.num_edges(), 0) {}

  std::int64_t total() const { return total_; }

  // Returns an undo token.
  struct Change {
    EdgeId seen = -1;
    EdgeId forward = -1;
    EdgeId backward = -1;
  };

  Change Push(std::optional<ArcId> previous, ArcId next) {
    Change change;
    const EdgeId edge = EdgeOfArc(next);
    if (seen_[edge]++ == 0) change.seen = edge;
    if (!previous) return change;
    const Arc before = instance_.arc(*previous);
    const Arc after = instance_.arc(next);
    const EdgeId ahead = index_.Beside(before.head, before.tail, 1);
    if (!seen_[ahead] && !forward_[ahead]) {
      forward_[ahead] = 1;
      change.forward = ahead;
      ++total_;
    }
    const EdgeId behind = index_.Beside(after.tail, after.head, -1);
    if (!seen_[behind] && !backward_[behind]) {
      backward_[behind] = 1;
      change.backward = behind;
      ++total_;
    }
    return change;
  }

  void Pop(ArcId next, const Change& change) {
    --seen_[EdgeOfArc(next)];
    if (change.forward >= 0) {
      forward_[change.forward] = 0;
      --total_;
    }
    if (change.backward >= 0) {
      backward_[change.backward] = 0;
      --total_;
    }
  }

 private:
  const RoadInstance& instance_;
  const OrderIndex& index_;
  std::vector<int> seen_;
  std::vector<char> forward_;
  std::vector<char> backward_;
  std::int64_t total_ = 0;
};

// Depth-first search below one fixed route prefix.
class UnfairnessSearch {
 public:
  UnfairnessSearch(const RoadInstance& instance, const ExternalParams& params,
                   const OrderIndex& index, std::int64_t guard, std::atomic<std::int64_t>& nodes)
      : instance_(instance), params_(params), tally_(instance, index), guard_(guard),
        nodes_(nodes), used_(instance.num_arcs(), 0) {
    for (ArcId a = 0; a < instance.num_arcs(); ++a) uncovered_alpha_ += instance.alpha(a);
    uncovered_ = instance.num_arcs();
  }

  // Searches every route starting with `prefix`. Prunes partial unfairness
  // above `shared_cap` and at or above the best found here.
  std::optional<UnfairnessOptimum> Run(const std::vector<ArcId>& prefix, std::int64_t shared_cap) {
    cap_ = shared_cap;
    for (ArcId a : prefix) Push(a);
    if (tally_.total() <= cap_) Descend();
    return best_;
  }

 private:
  bool Traversed() const {
    return params_.capacity_semantics == CapacitySemantics::kTraversed;
  }

  void Push(ArcId a) {
    changes_.push_back(tally_.Push(route_.empty() ? std::nullopt : std::optional(route_.back()), a));
    route_.push_back(a);
    if (used_[a]++ == 0) {
      --uncovered_;
      uncovered_alpha_ -= instance_.alpha(a);
    }
    length_ += instance_.alpha(a);
    trip_.push_back(instance_.arc(a).tail == instance_.depot() ? instance_.alpha(a)
                                                               : trip_.back() + instance_.alpha(a));
  }

  void Pop() {
    const ArcId a = route_.back();
    tally_.Pop(a, changes_.back());
    changes_.pop_back();
    route_.pop_back();
    if (--used_[a] == 0) {
      ++uncovered_;
      uncovered_alpha_ += instance_.alpha(a);
    }
    length_ -= instance_.alpha(a);
    trip_.pop_back();
  }

  bool Improves(std::int64_t value) const {
    return value <= cap_ && (!best_ || value < best_->unfairness);
  }

  void Descend() {
    if (nodes_.fetch_add(1, std::memory_order_relaxed) >= guard_) {
      throw GuardExceeded("unfairness search exceeded " + std::to_string(guard_) + " nodes");
    }
    const VertexId at = instance_.arc(route_.back()).head;
    if (at == instance_.depot() && uncovered_ == 0 && Improves(tally_.total())) {
      const VehicleRoute candidate{route_};
      if (ValidateRoute(instance_, params_, candidate).valid) {
        best_ = UnfairnessOptimum{candidate, tally_.total(), 0};
      }
    }
    for (ArcId a : instance_.out_arcs(at)) {
      if (used_[a] >= params_.f[a]) continue;
      const std::int64_t alpha = instance_.alpha(a);
      const std::int64_t still_needed = uncovered_alpha_ - (used_[a] == 0 ? alpha : 0);
      if (length_ + alpha + still_needed > params_.L) continue;
      const std::int64_t trip = instance_.arc(a).tail == instance_.depot() ? alpha
                                                                           : trip_.back() + alpha;
      if (Traversed() && !AtMostTimes(trip, params_.c, params_.L)) continue;
      Push(a);
      if (Improves(tally_.total())) Descend();
      Pop();
    }
  }

  const RoadInstance& instance_;
  const ExternalParams& params_;
  ComplaintTally tally_;
  std::int64_t guard_;
  std::atomic<std::int64_t>& nodes_;
  std::vector<int> used_;
  std::vector<ArcId> route_;
  std::vector<ComplaintTally::Change> changes_;
  std::vector<std::int64_t> trip_{0};
  std::int64_t length_ = 0;
  std::int64_t uncovered_alpha_ = 0;
  int uncovered_ = 0;
  std::int64_t cap_ = 0;
  std::optional<UnfairnessOptimum> best_;
};

void LowerTo(std::atomic<std::int64_t>& target, std::int64_t value) {
  std::int64_t current = target.load();
  while (value < current && !target.compare_exchange_weak(current, value)) {
  }
}

// Runs `solve(branch, cap)` for every branch, serially or with OpenMP, and
// keeps the smallest (value, branch). `solve` returns nullopt or a result whose
// value is read by `value_of`.
template <typename Result, typename Solve, typename ValueOf>
std::optional<Result> BestOverBranches(int branches, std::int64_t initial_cap,
                                       Parallelism parallelism, Solve solve, ValueOf value_of) {
  std::vector<std::optional<Result>> found(branches);
  std::atomic<std::int64_t> cap{initial_cap};
  std::exception_ptr failure;
  const auto run = [&](int b) {
    try {
      found[b] = solve(b, cap.load());
      if (found[b]) LowerTo(cap, value_of(*found[b]));
    } catch (...) {
#if defined(WINROUTE_HAVE_OPENMP)
#pragma omp critical
#endif
      if (!failure) failure = std::current_exception();
    }
  };
  if (parallelism == Parallelism::kOpenMp) {
#if defined(WINROUTE_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (int b = 0; b < branches; ++b) run(b);
  } else {
    for (int b = 0; b < branches; ++b) run(b);
  }
  if (failure) std::rethrow_exception(failure);
  std::optional<Result> best;
  for (auto& candidate : found) {
    if (candidate && (!best || value_of(*candidate) < value_of(*best))) best = std::move(candidate);
  }
  return best;
}

std::int64_t CheckedMul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw InputError("necklace: weights overflow");
  return out;
}

}  // namespace

CyclicOrders CyclicOrders::FromInstance(const RoadInstance& instance) {
  CyclicOrders orders;
  orders.around.resize(instance.num_vertices());
  for (VertexId v = 0; v < instance.num_vertices(); ++v) {
    for (ArcId a : instance.out_arcs(v)) orders.around[v].push_back(instance.arc(a).head);
  }
  return orders;
}

void CyclicOrders::Check(const RoadInstance& instance) const {
  if (static_cast<int>(around.size()) != instance.num_vertices()) {
    throw InputError("cyclic orders: one order per vertex expected");
  }
  for (VertexId v = 0; v < instance.num_vertices(); ++v) {
    std::vector<VertexId> expected;
    for (ArcId a : instance.out_arcs(v)) expected.push_back(instance.arc(a).head);
    std::vector<VertexId> given = around[v];
    std::sort(expected.begin(), expected.end());
    std::sort(given.begin(), given.end());
    if (given != expected) {
      throw InputError("cyclic orders: order at " + instance.name(v) + " is not its neighbors");
    }
  }
}

std::int64_t UnfairnessIndex(const RoadInstance& instance, const CyclicOrders& orders,
                             const VehicleRoute& route) {
  RequireDepotLeaf(instance);
  orders.Check(instance);
  CheckRouteStructure(instance, route);
  const OrderIndex index(instance, orders);
  ComplaintTally tally(instance, index);
  std::optional<ArcId> previous;
  for (ArcId a : route.arcs) {
    tally.Push(previous, a);
    previous = a;
  }
  return tally.total();
}

std::optional<UnfairnessOptimum> MinimizeUnfairness(const RoadInstance& instance,
                                                    const CyclicOrders& orders,
                                                    const ExternalParams& params,
                                                    std::int64_t guard, Parallelism parallelism) {
  RequireDepotLeaf(instance);
  orders.Check(instance);
  params.Check(instance);
  const OrderIndex index(instance, orders);
  // Branch on the first two arcs; the first is forced.
  const ArcId leave = instance.out_arcs(instance.depot())[0];
  std::vector<std::vector<ArcId>> prefixes;
  for (ArcId next : instance.out_arcs(instance.arc(leave).head)) prefixes.push_back({leave, next});
  std::atomic<std::int64_t> nodes{0};
  auto best = BestOverBranches<UnfairnessOptimum>(
      static_cast<int>(prefixes.size()), std::numeric_limits<std::int64_t>::max(), parallelism,
      [&](int b, std::int64_t cap) {
        return UnfairnessSearch(instance, params, index, guard, nodes).Run(prefixes[b], cap);
      },
      [](const UnfairnessOptimum& found) { return found.unfairness; });
  if (best) best->nodes = nodes.load();
  return best;
}

int Necklace::colors() const {
  return beads.empty() ? 0 : *std::max_element(beads.begin(), beads.end());
}

std::vector<int> Necklace::share() const {
  std::vector<int> counts(colors(), 0);
  for (int bead : beads) ++counts[bead - 1];
  for (int& count : counts) count /= thieves;
  return counts;
}

void Necklace::Check() const {
  if (thieves < 1) throw InputError("necklace: need at least one thief");
  if (beads.empty()) throw InputError("necklace: no beads");
  std::vector<int> counts(colors(), 0);
  for (int bead : beads) {
    if (bead < 1) throw InputError("necklace: colors start at 1");
    ++counts[bead - 1];
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0 || counts[i] % thieves != 0) {
      throw InputError("necklace: color " + std::to_string(i + 1) +
                       " count is not a positive multiple of k");
    }
  }
}

bool IsValidSplitting(const Necklace& necklace, const Splitting& splitting) {
  const int beads = static_cast<int>(necklace.beads.size());
  for (std::size_t i = 0; i < splitting.cuts.size(); ++i) {
    const int cut = splitting.cuts[i];
    if (cut < 1 || cut >= beads) return false;
    if (i > 0 && cut <= splitting.cuts[i - 1]) return false;
  }
  if (splitting.owner.size() != splitting.cuts.size() + 1) return false;
  const int colors = necklace.colors();
  std::vector<std::vector<int>> got(necklace.thieves, std::vector<int>(colors, 0));
  std::size_t interval = 0;
  for (int bead = 1; bead <= beads; ++bead) {
    const int thief = splitting.owner[interval];
    if (thief < 0 || thief >= necklace.thieves) return false;
    ++got[thief][necklace.beads[bead - 1] - 1];
    if (interval < splitting.cuts.size() && splitting.cuts[interval] == bead) ++interval;
  }
  const std::vector<int> share = necklace.share();
  return std::all_of(got.begin(), got.end(), [&](const auto& counts) { return counts == share; });
}

Splitting SplitNecklaceMin(const Necklace& necklace) {
  necklace.Check();
  const int beads = static_cast<int>(necklace.beads.size());
  if (beads > 16 || necklace.thieves > 4) {
    throw GuardExceeded("necklace split: more than 16 beads or 4 thieves");
  }
  const int colors = necklace.colors();
  const std::vector<int> share = necklace.share();
  for (int count = 0; count < beads; ++count) {
    std::vector<int> cuts(count);
    std::iota(cuts.begin(), cuts.end(), 1);
    while (true) {
      // Color counts per interval.
      std::vector<std::vector<int>> pieces(count + 1, std::vector<int>(colors, 0));
      int piece = 0;
      for (int bead = 1; bead <= beads; ++bead) {
        ++pieces[piece][necklace.beads[bead - 1] - 1];
        if (piece < count && cuts[piece] == bead) ++piece;
      }
      std::vector<std::vector<int>> left(necklace.thieves, share);
      std::vector<int> owner(count + 1, -1);
      const auto assign = [&](auto&& self, int j) -> bool {
        if (j > count) return true;
        for (int thief = 0; thief < necklace.thieves; ++thief) {
          bool fits = true;
          for (int c = 0; c < colors && fits; ++c) fits = pieces[j][c] <= left[thief][c];
          if (!fits) continue;
          for (int c = 0; c < colors; ++c) left[thief][c] -= pieces[j][c];
          owner[j] = thief;
          if (self(self, j + 1)) return true;
          for (int c = 0; c < colors; ++c) left[thief][c] += pieces[j][c];
        }
        return false;
      };
      if (assign(assign, 0)) return Splitting{cuts, owner};
      // Next combination of `count` cut positions from 1..beads-1.
      int i = count - 1;
      while (i >= 0 && cuts[i] == beads - count + i) --i;
      if (i < 0) break;
      ++cuts[i];
      for (int j = i + 1; j < count; ++j) cuts[j] = cuts[j - 1] + 1;
    }
  }
  throw std::logic_error("necklace split: cutting every gap must succeed");
}

NecklaceStar NecklaceToStar(const Necklace& necklace) {
  necklace.Check();
  const int beads = static_cast<int>(necklace.beads.size());
  const std::int64_t per_thief = beads / necklace.thieves;
  const std::vector<int> share = necklace.share();

  NecklaceStar star;
  std::int64_t prefix = 0;
  for (std::size_t r = 0; r < share.size(); ++r) {
    star.weights.push_back(1 + CheckedMul(per_thief, r == 0 ? 1 : prefix));
    prefix += star.weights.back();
  }
  std::vector<std::string> names{"x", "d"};
  std::vector<Edge> edges{Edge{0, 1, 1}};
  for (int i = 1; i <= beads; ++i) {
    names.push_back("u" + std::to_string(i));
    edges.push_back(Edge{0, i + 1, star.weights[necklace.beads[i - 1] - 1]});
  }
  star.instance = RoadInstance::Create(std::move(names), std::move(edges), 1, 1);

  star.orders.around.resize(beads + 2);
  star.orders.around[0].push_back(1);
  star.orders.around[1].push_back(0);
  for (int i = 1; i <= beads; ++i) {
    star.orders.around[0].push_back(i + 1);
    star.orders.around[i + 1].push_back(0);
  }

  std::int64_t trip = 1;
  for (std::size_t r = 0; r < share.size(); ++r) trip += CheckedMul(share[r], star.weights[r]);
  const std::int64_t L = CheckedMul(2 * necklace.thieves, trip);
  star.params = ExternalParams::Uniform(star.instance, L, Rational(1, necklace.thieves),
                                        Rational(1), 1);
  star.params.f[0] = necklace.thieves;
  star.params.f[1] = necklace.thieves;
  return star;
}

Splitting SplittingFromRoute(const Necklace& necklace, const NecklaceStar& star,
                             const VehicleRoute& route) {
  necklace.Check();
  const RoadInstance& instance = star.instance;
  CheckRouteStructure(instance, route);
  const int beads = static_cast<int>(necklace.beads.size());
  const std::vector<int> bounds = TripBoundaries(instance, route);
  const int trips = static_cast<int>(bounds.size()) - 1;
  if (trips != necklace.thieves) {
    throw InputError("route has " + std::to_string(trips) + " trips, expected " +
                     std::to_string(necklace.thieves));
  }
  std::vector<int> trip_of(beads + 1, -1);
  for (int trip = 0; trip < trips; ++trip) {
    std::vector<int> counts(necklace.colors(), 0);
    for (int j = bounds[trip]; j < bounds[trip + 1]; ++j) {
      const Arc arc = instance.arc(route.arcs[j]);
      if (arc.tail != 0 || arc.head < 2) continue;
      const int bead = arc.head - 1;
      if (trip_of[bead] < 0) {
        trip_of[bead] = trip;
        ++counts[necklace.beads[bead - 1] - 1];
      }
    }
    if (counts != necklace.share()) {
      throw InputError("trip " + std::to_string(trip + 1) + " services wrong color counts");
    }
  }
  Splitting splitting;
  splitting.owner.push_back(trip_of[1]);
  for (int bead = 1; bead < beads; ++bead) {
    if (trip_of[bead] != trip_of[bead + 1]) {
      splitting.cuts.push_back(bead);
      splitting.owner.push_back(trip_of[bead + 1]);
    }
  }
  return splitting;
}

bool HasDistinctSubsetSums(std::span<const std::int64_t> values) {
  if (values.size() > 30) throw GuardExceeded("subset sums: more than 30 values");
  std::int64_t total = 0;
  for (std::int64_t v : values) {
    if (v <= 0) throw InputError("subset sums: values must be positive");
    total += v;
  }
  if (total < (std::int64_t{1} << 26)) {
    boost::dynamic_bitset<> sums(static_cast<std::size_t>(total) + 1);
    sums.set(0);
    for (std::int64_t v : values) {
      const auto shifted = sums << static_cast<std::size_t>(v);
      if (sums.intersects(shifted)) return false;
      sums |= shifted;
    }
    return true;
  }
  std::vector<std::int64_t> sums{0};
  for (std::int64_t v : values) {
    std::vector<std::int64_t> merged(sums.size() * 2);
    std::vector<std::int64_t> raised(sums);
    for (auto& s : raised) s += v;
    std::merge(sums.begin(), sums.end(), raised.begin(), raised.end(), merged.begin());
    if (std::adjacent_find(merged.begin(), merged.end()) != merged.end()) return false;
    sums = std::move(merged);
  }
  return true;
}

namespace {

constexpr std::size_t kSumBits = 16384;

// Increasing sets a_1 < ... < a_n; the j smallest sum to at least 2^j - 1.
class DistinctSumsSearch {
 public:
  DistinctSumsSearch(int n, std::atomic<std::int64_t>& nodes) : n_(n), nodes_(nodes) {}

  std::optional<DistinctSumsMinimum> Run(std::int64_t first, std::int64_t cap) {
    cap_ = cap;
    std::bitset<kSumBits> sums;
    sums.set(0);
    if (first > cap) return std::nullopt;
    chosen_.push_back(first);
    Descend(sums << first | sums, first);
    return best_;
  }

 private:
  std::int64_t Limit() const { return best_ ? std::min(cap_, best_->largest - 1) : cap_; }

  void Descend(const std::bitset<kSumBits>& sums, std::int64_t total) {
    nodes_.fetch_add(1, std::memory_order_relaxed);
    const int depth = static_cast<int>(chosen_.size());
    if (depth == n_) {
      best_ = DistinctSumsMinimum{chosen_.back(), chosen_, 0};
      return;
    }
    const std::int64_t floor_sum = (std::int64_t{1} << (depth + 1)) - 1;
    for (std::int64_t next = std::max(chosen_.back() + 1, floor_sum - total);; ++next) {
      const std::int64_t limit = Limit();
      // The remaining elements must still fit strictly increasing below the limit.
      if (next + (n_ - depth - 1) > limit) break;
      if ((sums & (sums << next)).any()) continue;
      chosen_.push_back(next);
      Descend(sums | (sums << next), total + next);
      chosen_.pop_back();
    }
  }

  int n_;
  std::atomic<std::int64_t>& nodes_;
  std::int64_t cap_ = 0;
  std::vector<std::int64_t> chosen_;
  std::optional<DistinctSumsMinimum> best_;
};

}  // namespace

std::vector<std::int64_t> ConwayGuySet(int n) {
  if (n < 1) throw InputError("subset sums: n must be positive");
  std::vector<std::int64_t> u{0, 1};
  for (int m = 1; static_cast<int>(u.size()) <= n; ++m) {
    const auto r = static_cast<int>(std::lround(std::sqrt(2.0 * m)));
    u.push_back(2 * u[m] - u[m - r]);
  }
  std::vector<std::int64_t> set;
  for (int i = n - 1; i >= 0; --i) set.push_back(u[n] - u[i]);
  return set;
}

std::optional<DistinctSumsMinimum> MinMaxDistinctSubsetSums(int n, std::int64_t cap,
                                                            Parallelism parallelism) {
  if (n < 1) throw InputError("subset sums: n must be positive");
  if (n > 12) throw GuardExceeded("subset sums: minimum search limited to n <= 12");
  if (cap <= 0) cap = ConwayGuySet(n).back();
  if (n * cap >= static_cast<std::int64_t>(kSumBits)) {
    throw GuardExceeded("subset sums: n * cap exceeds the search table");
  }
  std::atomic<std::int64_t> nodes{0};
  auto best = BestOverBranches<DistinctSumsMinimum>(
      static_cast<int>(cap), cap, parallelism,
      [&](int b, std::int64_t shared) { return DistinctSumsSearch(n, nodes).Run(b + 1, shared); },
      [](const DistinctSumsMinimum& found) { return found.largest; });
  if (best) best->nodes = nodes.load();
  return best;
}

}  // namespace winroute
