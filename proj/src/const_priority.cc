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

#include "winroute/const_priority.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "winroute/errors.hpp"
#include "winroute/fg_tree_dp.hpp"
#include "winroute/rooted_tree.hpp"
#include "winroute/tree_cutting.hpp"

namespace winroute {

std::string_view CaseTagName(CaseTag tag) {
  switch (tag) {
    case CaseTag::kCase1: return "CASE1";
    case CaseTag::kCase2: return "CASE2";
    case CaseTag::kCase3: return "CASE3";
    case CaseTag::kCase4: return "CASE4";
  }
  return "?";
}

CaseTag ClassifyCase(const Rational& t, const Rational& c) {
  if (t <= Rational(0)) throw InputError("gap coefficient must be positive");
  if (c <= Rational(0) || c > Rational(1)) throw InputError("capacity c must lie in (0,1]");
  if (t >= Rational(1)) return c == Rational(1) ? CaseTag::kCase1 : CaseTag::kCase2;
  return t <= c ? CaseTag::kCase3 : CaseTag::kCase4;
}

namespace {

// Depth-first tour from the depot over the edges flagged in `inside`.
VehicleRoute TourOf(const RoadInstance& instance, const std::vector<bool>& inside) {
  VehicleRoute route;
  std::function<void(VertexId, EdgeId)> visit = [&](VertexId v, EdgeId from) {
    for (ArcId a : instance.out_arcs(v)) {
      const EdgeId e = EdgeOfArc(a);
      if (e == from || !inside[e]) continue;
      route.arcs.push_back(a);
      visit(instance.arc(a).head, e);
      route.arcs.push_back(ReverseArc(a));
    }
  };
  visit(instance.depot(), -1);
  return route;
}

VehicleRoute Concatenate(const RoadInstance& instance,
                         const std::vector<std::vector<EdgeId>>& parts) {
  VehicleRoute route;
  for (const auto& part : parts) {
    std::vector<bool> inside(instance.num_edges(), false);
    for (EdgeId e : part) inside[e] = true;
    const VehicleRoute tour = TourOf(instance, inside);
    route.arcs.insert(route.arcs.end(), tour.arcs.begin(), tour.arcs.end());
  }
  return route;
}

int EdgeFrequency(const ExternalParams& params, EdgeId e) {
  return std::min(params.f[2 * e], params.f[2 * e + 1]);
}

bool LexLessBySum(const SizeVector& a, const SizeVector& b) {
  const int sa = std::accumulate(a.begin(), a.end(), 0);
  const int sb = std::accumulate(b.begin(), b.end(), 0);
  return sa != sb ? sa < sb : a < b;
}

// One trip per part. Each depot branch is cut on its own into at most
// f(depot edge) subtrees of at most floor(cL)/2 edges, with edge e in at most
// f(e) parts; the cheapest cover per branch is optimal for the whole tree.
std::optional<VehicleRoute> BranchCovers(const RoadInstance& instance,
                                         const ExternalParams& params, std::int64_t length,
                                         const Rational& capacity) {
  const RootedTree whole = RootedTree::FromInstance(instance, instance.depot());
  const std::int64_t part_cap = FloorTimes(capacity, length) / 2;
  std::vector<std::vector<EdgeId>> parts;
  std::int64_t total = 0;
  for (int top : whole.children[whole.root]) {
    // Local tree: 0 = depot, 1 = top, then the rest of the branch.
    std::vector<int> parents{-1, 0};
    std::vector<int> local_of(whole.num_vertices(), -1);
    std::vector<EdgeId> to_instance{whole.parent_edge[top]};
    local_of[top] = 1;
    std::vector<int> stack{top};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : whole.children[v]) {
        local_of[w] = static_cast<int>(parents.size());
        parents.push_back(local_of[v]);
        to_instance.push_back(whole.parent_edge[w]);
        stack.push_back(w);
      }
    }
    const RootedTree branch = RootedTree::FromParents(parents);
    CuttingOptions options;
    for (EdgeId local = 0; local < branch.num_edges(); ++local) {
      options.edge_multiplicity.push_back(EdgeFrequency(params, to_instance[local]));
    }
    const int trips = std::min(options.edge_multiplicity[0], branch.num_edges());
    if (trips > options.max_k) {
      throw InputError("more than " + std::to_string(options.max_k) + " trips per branch");
    }
    if (part_cap > branch.num_edges()) {
      options.part_cap = -1;
    } else {
      options.part_cap = static_cast<int>(part_cap);
    }
    const CuttingTable table(branch, trips, options);
    const auto vectors = table.RootVectors();
    if (vectors.empty()) return std::nullopt;
    const SizeVector best = *std::min_element(vectors.begin(), vectors.end(), LexLessBySum);
    total += 2 * std::accumulate(best.begin(), best.end(), 0);
    for (auto& part : table.Expand(best).parts) {
      if (part.empty()) continue;
      for (EdgeId& e : part) e = to_instance[e];
      parts.push_back(std::move(part));
    }
  }
  if (total > length) return std::nullopt;
  return Concatenate(instance, parts);
}

// ceil(1/c) subtrees of the whole tree; trips bounded by 2 t_i <= cL
// (traversed) or t_i <= cL (serviced). Candidates in order of sum, then
// lexicographically; the first one whose route validates wins.
std::optional<VehicleRoute> WholeTreeCover(const RoadInstance& instance,
                                           const ExternalParams& params, std::int64_t length,
                                           const Rational& capacity) {
  const RootedTree whole = RootedTree::FromInstance(instance, instance.depot());
  const Rational inverse = 1 / capacity;
  const int trips = static_cast<int>((inverse.numerator() + inverse.denominator() - 1) /
                                     inverse.denominator());
  const CuttingTable table(whole, trips);
  auto vectors = table.RootVectors();
  std::sort(vectors.begin(), vectors.end(), LexLessBySum);
  const bool traversed = params.capacity_semantics == CapacitySemantics::kTraversed;
  for (const auto& sizes : vectors) {
    const std::int64_t sum = std::accumulate(sizes.begin(), sizes.end(), std::int64_t{0});
    if (2 * sum > length) break;
    bool fits = true;
    for (int size : sizes) {
      fits = fits && AtMostTimes(traversed ? 2 * size : size, capacity, length);
    }
    if (!fits) continue;
    std::vector<std::vector<EdgeId>> parts;
    for (auto& part : table.Expand(sizes).parts) {
      if (!part.empty()) parts.push_back(std::move(part));
    }
    VehicleRoute route = Concatenate(instance, parts);
    if (ValidateRoute(instance, params, route).valid) return route;
  }
  return std::nullopt;
}

}  // namespace

VehicleRoute DfsRoute(const RoadInstance& instance) {
  return TourOf(instance, std::vector<bool>(instance.num_edges(), true));
}

ConstPriorityResult DecideRouteConstPriority(const RoadInstance& instance,
                                             const ExternalParams& params,
                                             const ConstPriorityOptions& options) {
  params.Check(instance);
  if (!instance.is_tree()) throw InputError("constant-priority solver needs a tree");
  if (!instance.unweighted()) throw InputError("constant-priority solver needs unit lengths");
  const auto constant = params.t.constant_value();
  if (!constant) throw InputError("gap coefficients are not constant");
  const Rational t = *constant;
  const Rational c = params.c;
  const std::int64_t L = params.L;
  const std::int64_t doubled = 2 * instance.num_edges();
  const bool traversed = params.capacity_semantics == CapacitySemantics::kTraversed;

  ConstPriorityResult result;
  result.tag = ClassifyCase(t, c);
  auto accept = [&](std::optional<VehicleRoute> route) {
    if (!route || !ValidateRoute(instance, params, *route).valid) return false;
    result.feasible = true;
    result.route = std::move(route);
    return true;
  };
  // Case 2 on (length, capacity); the route is checked against the real params.
  auto case2 = [&](std::int64_t length, const Rational& capacity) {
    if (options.literal) return accept(WholeTreeCover(instance, params, length, capacity));
    if (accept(BranchCovers(instance, params, length, capacity))) return true;
    return !traversed && accept(WholeTreeCover(instance, params, length, capacity));
  };

  switch (result.tag) {
    case CaseTag::kCase1:
      if (doubled <= L) accept(DfsRoute(instance));
      return result;
    case CaseTag::kCase2:
      case2(L, c);
      return result;
    case CaseTag::kCase3:
      if (AtMostTimes(doubled, t, L) && accept(DfsRoute(instance))) return result;
      break;
    case CaseTag::kCase4:
      if (case2(FloorTimes(t, L), c / t)) return result;
      break;
  }
  if (options.literal) return result;
  // t < 1: gaps bind. Without them the branch covers are exact, so their
  // failure settles infeasibility; otherwise the tree DP decides.
  if (traversed && !BranchCovers(instance, params, L, c)) return result;
  result.exact_search = true;
  FgOptions fg_options;
  fg_options.bounds = FgBounds{instance.max_degree(), params.max_f()};
  ExternalParams traversed_params = params;
  traversed_params.capacity_semantics = CapacitySemantics::kTraversed;
  auto decision = DecideVehicleRouteTree(instance, traversed_params, fg_options);
  if (decision.exists && !accept(std::move(decision.witness))) {
    throw std::logic_error("tree DP returned a route that does not validate");
  }
  return result;
}

}  // namespace winroute
