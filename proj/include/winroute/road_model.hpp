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
#include <string>
#include <string_view>
#include <vector>

#include "winroute/rational.hpp"

namespace winroute {

using VertexId = int;
using EdgeId = int;
// Arc 2e runs edge(e).u -> edge(e).v, arc 2e+1 runs back.
using ArcId = int;

enum class Material { kChemical, kInert, kSnowPlow };

std::string_view MaterialName(Material m);
Material ParseMaterial(std::string_view name);

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  std::int64_t alpha = 1;
  int priority = 1;
  Material material = Material::kChemical;
};

struct Arc {
  VertexId tail = 0;
  VertexId head = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
};

inline EdgeId EdgeOfArc(ArcId a) { return a / 2; }
inline ArcId ReverseArc(ArcId a) { return a ^ 1; }

// Road network of one maintaining plan: every edge is maintained (P = E).
// Immutable once built; Create() checks all invariants.
class RoadInstance {
 public:
  // Empty network; only useful as a placeholder before assignment.
  RoadInstance() = default;
  static RoadInstance Create(std::vector<std::string> vertex_names,
                             std::vector<Edge> edges, VertexId depot, int z);

  int num_vertices() const { return static_cast<int>(names_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_arcs() const { return 2 * num_edges(); }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }
  Arc arc(ArcId a) const;
  std::int64_t alpha(ArcId a) const { return edges_[EdgeOfArc(a)].alpha; }
  std::optional<ArcId> FindArc(VertexId tail, VertexId head) const;

  // Arcs leaving v, in edge-insertion order.
  std::span<const ArcId> out_arcs(VertexId v) const { return out_[v]; }
  int degree(VertexId v) const { return static_cast<int>(out_[v].size()); }
  int max_degree() const;

  VertexId depot() const { return depot_; }
  int z() const { return z_; }
  const std::string& name(VertexId v) const { return names_[v]; }
  std::span<const std::string> names() const { return names_; }
  std::optional<VertexId> FindVertex(std::string_view name) const;

  bool unweighted() const { return unweighted_; }
  bool is_tree() const { return num_edges() == num_vertices() - 1; }
  std::int64_t total_alpha() const;

  // Same graph with a different depot.
  RoadInstance WithDepot(VertexId depot) const;

 private:

  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<ArcId>> out_;
  VertexId depot_ = 0;
  int z_ = 1;
  bool unweighted_ = true;
};

// Both arcs of every edge, ordered by arc id.
std::vector<Arc> SymmetricOrientation(const RoadInstance& instance);

enum class CapacitySemantics { kTraversed, kServiced };

std::string_view CapacitySemanticsName(CapacitySemantics s);
CapacitySemantics ParseCapacitySemantics(std::string_view name);

// t(level, i): gap coefficient for the i-th gap of an edge of the given
// priority level. Indices past the end of a level's list reuse its last entry.
class PriorityTable {
 public:
  PriorityTable() = default;
  explicit PriorityTable(std::vector<std::vector<Rational>> by_level);
  static PriorityTable Constant(int z, Rational value);

  Rational at(int level, int index) const;
  int levels() const { return static_cast<int>(by_level_.size()); }
  const std::vector<Rational>& level(int level) const { return by_level_[level - 1]; }
  // The single value if every entry of every level is equal.
  std::optional<Rational> constant_value() const;

 private:
  std::vector<std::vector<Rational>> by_level_;
};

struct ExternalParams {
  std::int64_t L = 0;
  Rational c{1};
  PriorityTable t;
  std::vector<int> f;  // indexed by ArcId
  CapacitySemantics capacity_semantics = CapacitySemantics::kTraversed;

  // Uniform f for every arc of the instance.
  static ExternalParams Uniform(const RoadInstance& instance, std::int64_t L,
                                Rational c, Rational t, int f);
  int max_f() const;
  // Throws InputError if the params do not fit the instance.
  void Check(const RoadInstance& instance) const;
};

struct VehicleRoute {
  std::vector<ArcId> arcs;
  friend bool operator==(const VehicleRoute&, const VehicleRoute&) = default;
};

std::int64_t RouteLength(const VehicleRoute& route, const RoadInstance& instance);

// Throws InputError unless every arc exists, consecutive arcs are incident,
// the walk is closed and starts at the depot.
void CheckRouteStructure(const RoadInstance& instance, const VehicleRoute& route);

enum class ViolationKind { kLength, kCoverage, kFrequency, kPriorityGap, kCapacity };

std::string_view ViolationKindName(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  EdgeId edge = -1;    // kPriorityGap
  ArcId arc = -1;      // kCoverage, kFrequency
  int index = 0;       // gap index (kPriorityGap) or trip index (kCapacity)
  std::int64_t measured = 0;
  Rational allowed{0};
};

struct ValidationReport {
  bool valid = true;
  std::vector<Violation> violations;
};

ValidationReport ValidateRoute(const RoadInstance& instance,
                               const ExternalParams& params,
                               const VehicleRoute& route);

// Start offsets of the depot-to-depot trips of a structurally valid route,
// followed by route.arcs.size().
std::vector<int> TripBoundaries(const RoadInstance& instance, const VehicleRoute& route);

}  // namespace winroute
