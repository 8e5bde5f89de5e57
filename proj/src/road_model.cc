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

#include "winroute/road_model.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <utility>

#include "winroute/errors.hpp"

namespace winroute {

Rational ParseRational(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw InputError("bad rational '" + std::string(text) + "'");
    }
    return value;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const std::int64_t num = parse_int(text.substr(0, slash));
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string FormatRational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string_view MaterialName(Material m) {
  switch (m) {
    case Material::kChemical: return "chemical";
    case Material::kInert: return "inert";
    case Material::kSnowPlow: return "snow-plow";
  }
  return "chemical";
}

Material ParseMaterial(std::string_view name) {
  if (name == "chemical") return Material::kChemical;
  if (name == "inert") return Material::kInert;
  if (name == "snow-plow") return Material::kSnowPlow;
  throw InputError("unknown material '" + std::string(name) + "'");
}

RoadInstance RoadInstance::Create(std::vector<std::string> vertex_names,
                                  std::vector<Edge> edges, VertexId depot, int z) {
  RoadInstance inst;
  const int n = static_cast<int>(vertex_names.size());
  if (n == 0) throw InputError("instance has no vertices");
  if (z < 1) throw InputError("z must be positive");
  if (depot < 0 || depot >= n) throw InputError("depot is not a vertex");
  {
    std::set<std::string_view> seen;
    for (const auto& name : vertex_names) {
      if (!seen.insert(name).second) throw InputError("duplicate vertex '" + name + "'");
    }
  }
  std::set<std::pair<VertexId, VertexId>> pairs;
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) throw InputError("edge endpoint out of range");
    if (e.u == e.v) throw InputError("self-loop at '" + vertex_names[e.u] + "'");
    if (!pairs.insert(std::minmax(e.u, e.v)).second) {
      throw InputError("parallel edge " + vertex_names[e.u] + "-" + vertex_names[e.v]);
    }
    if (e.alpha < 1) throw InputError("edge length must be >= 1");
    if (e.priority < 1 || e.priority > z) throw InputError("edge priority outside 1..z");
  }
  inst.names_ = std::move(vertex_names);
  inst.edges_ = std::move(edges);
  inst.depot_ = depot;
  inst.z_ = z;
  inst.out_.assign(n, {});
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    inst.out_[inst.edges_[e].u].push_back(2 * e);
    inst.out_[inst.edges_[e].v].push_back(2 * e + 1);
    if (inst.edges_[e].alpha != 1) inst.unweighted_ = false;
  }
  // Connectivity.
  std::vector<char> seen(n, 0);
  std::vector<VertexId> stack{depot};
  seen[depot] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (ArcId a : inst.out_[v]) {
      const VertexId w = inst.arc(a).head;
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != n) throw InputError("graph is not connected");
  return inst;
}

Arc RoadInstance::arc(ArcId a) const {
  const Edge& e = edges_[EdgeOfArc(a)];
  return (a & 1) ? Arc{e.v, e.u} : Arc{e.u, e.v};
}

std::optional<ArcId> RoadInstance::FindArc(VertexId tail, VertexId head) const {
  if (tail < 0 || tail >= num_vertices()) return std::nullopt;
  for (ArcId a : out_[tail]) {
    if (arc(a).head == head) return a;
  }
  return std::nullopt;
}

int RoadInstance::max_degree() const {
  int best = 0;
  for (const auto& arcs : out_) best = std::max(best, static_cast<int>(arcs.size()));
  return best;
}

std::optional<VertexId> RoadInstance::FindVertex(std::string_view name) const {
  for (VertexId v = 0; v < num_vertices(); ++v) {
    if (names_[v] == name) return v;
  }
  return std::nullopt;
}

std::int64_t RoadInstance::total_alpha() const {
  std::int64_t sum = 0;
  for (const Edge& e : edges_) sum += e.alpha;
  return sum;
}

RoadInstance RoadInstance::WithDepot(VertexId depot) const {
  if (depot < 0 || depot >= num_vertices()) throw InputError("depot is not a vertex");
  RoadInstance copy = *this;
  copy.depot_ = depot;
  return copy;
}

std::vector<Arc> SymmetricOrientation(const RoadInstance& instance) {
  std::vector<Arc> arcs;
  arcs.reserve(instance.num_arcs());
  for (ArcId a = 0; a < instance.num_arcs(); ++a) arcs.push_back(instance.arc(a));
  return arcs;
}

std::string_view CapacitySemanticsName(CapacitySemantics s) {
  return s == CapacitySemantics::kTraversed ? "traversed" : "serviced";
}

CapacitySemantics ParseCapacitySemantics(std::string_view name) {
  if (name == "traversed" || name == "TRAVERSED") return CapacitySemantics::kTraversed;
  if (name == "serviced" || name == "SERVICED") return CapacitySemantics::kServiced;
  throw InputError("unknown capacity semantics '" + std::string(name) + "'");
}

PriorityTable::PriorityTable(std::vector<std::vector<Rational>> by_level)
    : by_level_(std::move(by_level)) {
  for (const auto& level : by_level_) {
    if (level.empty()) throw InputError("priority level with no gap coefficients");
    for (const Rational& r : level) {
      if (r <= Rational(0)) throw InputError("gap coefficients must be positive");
    }
  }
}

PriorityTable PriorityTable::Constant(int z, Rational value) {
  return PriorityTable(std::vector<std::vector<Rational>>(z, {value}));
}

Rational PriorityTable::at(int level, int index) const {
  const auto& row = by_level_.at(level - 1);
  const int i = std::clamp(index, 1, static_cast<int>(row.size()));
  return row[i - 1];
}

std::optional<Rational> PriorityTable::constant_value() const {
  if (by_level_.empty()) return std::nullopt;
  const Rational first = by_level_.front().front();
  for (const auto& level : by_level_) {
    for (const Rational& r : level) {
      if (r != first) return std::nullopt;
    }
  }
  return first;
}

ExternalParams ExternalParams::Uniform(const RoadInstance& instance, std::int64_t L,
                                       Rational c, Rational t, int f) {
  ExternalParams p;
  p.L = L;
  p.c = c;
  p.t = PriorityTable::Constant(instance.z(), t);
  p.f.assign(instance.num_arcs(), f);
  return p;
}

int ExternalParams::max_f() const {
  return f.empty() ? 0 : *std::max_element(f.begin(), f.end());
}

void ExternalParams::Check(const RoadInstance& instance) const {
  if (L < 0) throw InputError("L must be nonnegative");
  if (c <= Rational(0) || c > Rational(1)) throw InputError("capacity c must lie in (0,1]");
  if (t.levels() < instance.z()) throw InputError("priority table misses a level");
  if (static_cast<int>(f.size()) != instance.num_arcs()) {
    throw InputError("frequency bound missing for some arc");
  }
  for (int x : f) {
    if (x < 1) throw InputError("frequency bounds must be positive");
  }
}

std::int64_t RouteLength(const VehicleRoute& route, const RoadInstance& instance) {
  std::int64_t total = 0;
  for (ArcId a : route.arcs) {
    if (a < 0 || a >= instance.num_arcs()) throw InputError("route arc not in instance");
    total += instance.alpha(a);
  }
  return total;
}

void CheckRouteStructure(const RoadInstance& instance, const VehicleRoute& route) {
  const auto& arcs = route.arcs;
  for (ArcId a : arcs) {
    if (a < 0 || a >= instance.num_arcs()) throw InputError("route arc not in instance");
  }
  if (arcs.empty()) {
    if (instance.num_edges() != 0) throw InputError("empty route on a nonempty network");
    return;
  }
  if (instance.arc(arcs.front()).tail != instance.depot()) {
    throw InputError("route does not start at the depot");
  }
  for (std::size_t i = 0; i + 1 < arcs.size(); ++i) {
    if (instance.arc(arcs[i]).head != instance.arc(arcs[i + 1]).tail) {
      throw InputError("arcs " + std::to_string(i + 1) + " and " + std::to_string(i + 2) +
                       " are not incident");
    }
  }
  if (instance.arc(arcs.back()).head != instance.depot()) {
    throw InputError("route is not closed at the depot");
  }
}

std::string_view ViolationKindName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kLength: return "LENGTH";
    case ViolationKind::kCoverage: return "COVERAGE";
    case ViolationKind::kFrequency: return "FREQUENCY";
    case ViolationKind::kPriorityGap: return "PRIORITY_GAP";
    case ViolationKind::kCapacity: return "CAPACITY";
  }
  return "?";
}

std::vector<int> TripBoundaries(const RoadInstance& instance, const VehicleRoute& route) {
  std::vector<int> bounds{0};
  const int n = static_cast<int>(route.arcs.size());
  for (int j = 0; j < n; ++j) {
    if (instance.arc(route.arcs[j]).head == instance.depot()) bounds.push_back(j + 1);
  }
  if (bounds.back() != n) bounds.push_back(n);
  return bounds;
}

ValidationReport ValidateRoute(const RoadInstance& instance, const ExternalParams& params,
                               const VehicleRoute& route) {
  params.Check(instance);
  CheckRouteStructure(instance, route);

  ValidationReport report;
  const auto& arcs = route.arcs;
  const int n = static_cast<int>(arcs.size());
  const std::int64_t L = params.L;

  // prefix[j] = alpha-length of arcs[0..j-1]
  std::vector<std::int64_t> prefix(n + 1, 0);
  for (int j = 0; j < n; ++j) prefix[j + 1] = prefix[j] + instance.alpha(arcs[j]);
  const std::int64_t length = prefix[n];

  if (length > L) {
    report.violations.push_back({ViolationKind::kLength, -1, -1, 0, length, Rational(L)});
  }

  std::vector<int> count(instance.num_arcs(), 0);
  for (ArcId a : arcs) ++count[a];
  for (ArcId a = 0; a < instance.num_arcs(); ++a) {
    if (count[a] == 0) {
      report.violations.push_back({ViolationKind::kCoverage, -1, a, 0, 0, Rational(1)});
    }
  }
  for (ArcId a = 0; a < instance.num_arcs(); ++a) {
    if (count[a] > params.f[a]) {
      report.violations.push_back(
          {ViolationKind::kFrequency, -1, a, 0, count[a], Rational(params.f[a])});
    }
  }

  std::vector<std::vector<int>> positions(instance.num_edges());
  for (int j = 0; j < n; ++j) positions[EdgeOfArc(arcs[j])].push_back(j);
  for (EdgeId e = 0; e < instance.num_edges(); ++e) {
    const auto& pos = positions[e];
    const int m = static_cast<int>(pos.size());
    for (int i = 1; i <= m; ++i) {
      const int x = pos[i - 1];
      std::int64_t gap;
      if (i < m) {
        gap = prefix[pos[i]] - prefix[x + 1];
      } else {
        gap = (prefix[n] - prefix[x + 1]) + prefix[pos[0]];
      }
      const Rational coeff = params.t.at(instance.edge(e).priority, i);
      if (!AtMostTimes(gap, coeff, L)) {
        report.violations.push_back(
            {ViolationKind::kPriorityGap, e, -1, i, gap, coeff * Rational(L)});
      }
    }
  }

  const std::vector<int> bounds = TripBoundaries(instance, route);
  std::vector<char> serviced(instance.num_edges(), 0);
  for (std::size_t trip = 0; trip + 1 < bounds.size(); ++trip) {
    std::int64_t load = 0;
    for (int j = bounds[trip]; j < bounds[trip + 1]; ++j) {
      const EdgeId e = EdgeOfArc(arcs[j]);
      if (params.capacity_semantics == CapacitySemantics::kTraversed) {
        load += instance.alpha(arcs[j]);
      } else if (!serviced[e]) {
        serviced[e] = 1;
        load += instance.edge(e).alpha;
      }
    }
    if (!AtMostTimes(load, params.c, L)) {
      report.violations.push_back({ViolationKind::kCapacity, -1, -1,
                                   static_cast<int>(trip) + 1, load, params.c * Rational(L)});
    }
  }

  report.valid = report.violations.empty();
  return report;
}

}  // namespace winroute
