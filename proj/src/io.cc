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

#include "winroute/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "winroute/errors.hpp"
#include "winroute/rational.hpp"

namespace winroute::io {
namespace {

// nlohmann throws its own types on missing keys and wrong types; callers
// only know InputError.
template <typename T>
T Field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw InputError(std::string("missing field '") + key + "'");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw InputError(std::string("field '") + key + "': " + e.what());
  }
}

VertexId VertexNamed(const RoadInstance& instance, const std::string& name) {
  auto v = instance.FindVertex(name);
  if (!v) throw InputError("unknown vertex '" + name + "'");
  return *v;
}

Rational RationalField(const Json& value) {
  if (value.is_string()) return ParseRational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  throw InputError("rationals must be \"p/q\" strings or integers");
}

PriorityTable ParsePriorities(const Json& doc, int z) {
  if (!doc.is_object()) throw InputError("params.t must map levels to arrays");
  std::vector<std::vector<Rational>> levels(z);
  for (const auto& [key, row] : doc.items()) {
    int level = 0;
    try {
      level = std::stoi(key);
    } catch (const std::exception&) {
      throw InputError("params.t: bad level '" + key + "'");
    }
    if (level < 1 || level > z) throw InputError("params.t: level " + key + " outside 1..z");
    if (!row.is_array()) throw InputError("params.t: level " + key + " needs an array");
    for (const auto& entry : row) levels[level - 1].push_back(RationalField(entry));
  }
  for (int level = 1; level <= z; ++level) {
    if (levels[level - 1].empty()) {
      throw InputError("params.t: level " + std::to_string(level) + " missing");
    }
  }
  return PriorityTable(std::move(levels));
}

std::vector<int> ParseArcBounds(const RoadInstance& instance, const Json& doc) {
  if (doc.is_number_integer()) return std::vector<int>(instance.num_arcs(), doc.get<int>());
  if (!doc.is_object()) throw InputError("params.f must be an integer or a map");
  std::vector<int> bounds(instance.num_arcs(), -1);
  int fallback = -1;
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_number_integer()) throw InputError("params.f['" + key + "'] must be an integer");
    if (key == "*") {
      fallback = value.get<int>();
    } else {
      bounds[ParseArcKey(instance, key)] = value.get<int>();
    }
  }
  for (ArcId a = 0; a < instance.num_arcs(); ++a) {
    if (bounds[a] >= 0) continue;
    if (fallback < 0) throw InputError("params.f misses arc " + ArcKey(instance, a));
    bounds[a] = fallback;
  }
  return bounds;
}

std::vector<std::vector<std::int64_t>> ParseGaps(const RoadInstance& instance, const Json& doc) {
  if (!doc.is_object()) throw InputError("g must map \"u>v#y\" to integers");
  std::vector<std::map<int, std::int64_t>> by_edge(instance.num_edges());
  for (const auto& [key, value] : doc.items()) {
    const auto hash = key.find('#');
    if (hash == std::string::npos) throw InputError("g key '" + key + "' lacks '#y'");
    const ArcId arc = ParseArcKey(instance, key.substr(0, hash));
    int index = 0;
    try {
      index = std::stoi(key.substr(hash + 1));
    } catch (const std::exception&) {
      throw InputError("g key '" + key + "' has a bad index");
    }
    if (index < 1) throw InputError("g key '" + key + "': index starts at 1");
    if (!value.is_number_integer()) throw InputError("g['" + key + "'] must be an integer");
    if (!by_edge[EdgeOfArc(arc)].emplace(index, value.get<std::int64_t>()).second) {
      throw InputError("g lists edge of '" + key + "' twice at that index");
    }
  }
  std::vector<std::vector<std::int64_t>> gaps(instance.num_edges());
  for (EdgeId e = 0; e < instance.num_edges(); ++e) {
    int expected = 1;
    for (const auto& [index, value] : by_edge[e]) {
      if (index != expected++) {
        throw InputError("g indices of " + ArcKey(instance, 2 * e) + " are not 1..m");
      }
      gaps[e].push_back(value);
    }
  }
  return gaps;
}

WalkMode ParseMode(const std::string& name) {
  if (name == "exact") return WalkMode::kExact;
  if (name == "atmost") return WalkMode::kAtMost;
  throw InputError("mode must be exact or atmost, not '" + name + "'");
}

}  // namespace

std::string ArcKey(const RoadInstance& instance, ArcId arc) {
  const Arc a = instance.arc(arc);
  return instance.name(a.tail) + ">" + instance.name(a.head);
}

ArcId ParseArcKey(const RoadInstance& instance, const std::string& key) {
  const auto arrow = key.find('>');
  if (arrow == std::string::npos) throw InputError("arc '" + key + "' is not 'u>v'");
  const VertexId tail = VertexNamed(instance, key.substr(0, arrow));
  const VertexId head = VertexNamed(instance, key.substr(arrow + 1));
  const auto arc = instance.FindArc(tail, head);
  if (!arc) throw InputError("no edge for arc '" + key + "'");
  return *arc;
}

FgInstance LoadedInstance::ToFg(std::optional<WalkMode> override_mode) const {
  if (arc_f.empty()) throw InputError("f/g instance needs params.f");
  if (std::any_of(g.begin(), g.end(), [](const auto& list) { return list.empty(); })) {
    throw InputError("f/g instance needs g for every edge");
  }
  FgInstance fg;
  fg.graph = instance;
  for (EdgeId e = 0; e < instance.num_edges(); ++e) {
    fg.f.push_back(std::min(arc_f[2 * e], arc_f[2 * e + 1]));
  }
  fg.g = g;
  fg.mode = override_mode.value_or(mode.value_or(WalkMode::kExact));
  fg.max_length = max_length.value_or(params ? params->L : -1);
  for (const auto& list : fg.g) {
    for (std::int64_t bound : list) {
      if (bound < 0) throw InputError("g values must be nonnegative");
    }
  }
  return fg;
}

LoadedInstance ParseInstance(const Json& doc) {
  const auto names = Field<std::vector<std::string>>(doc, "vertices");
  std::map<std::string, VertexId> index;
  for (std::size_t v = 0; v < names.size(); ++v) {
    if (!index.emplace(names[v], static_cast<VertexId>(v)).second) {
      throw InputError("duplicate vertex '" + names[v] + "'");
    }
  }
  const auto lookup = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) throw InputError("unknown vertex '" + name + "'");
    return it->second;
  };
  const Json edge_list = Field<Json>(doc, "edges");
  if (!edge_list.is_array()) throw InputError("edges must be an array");
  std::vector<Edge> edges;
  for (const auto& item : edge_list) {
    Edge edge;
    edge.u = lookup(Field<std::string>(item, "u"));
    edge.v = lookup(Field<std::string>(item, "v"));
    if (item.contains("alpha")) edge.alpha = Field<std::int64_t>(item, "alpha");
    if (item.contains("priority")) edge.priority = Field<int>(item, "priority");
    if (item.contains("material")) edge.material = ParseMaterial(Field<std::string>(item, "material"));
    edges.push_back(edge);
  }
  const int z = doc.contains("z") ? Field<int>(doc, "z") : 1;
  LoadedInstance loaded;
  loaded.instance =
      RoadInstance::Create(names, std::move(edges), lookup(Field<std::string>(doc, "depot")), z);
  const std::string kind = doc.contains("kind") ? Field<std::string>(doc, "kind") : "graph";
  if (kind == "tree") {
    if (!loaded.instance.is_tree()) throw InputError("kind is tree but the graph is not a tree");
  } else if (kind != "graph") {
    throw InputError("kind must be tree or graph");
  }

  if (doc.contains("params")) {
    const Json& params = doc.at("params");
    if (params.contains("f")) loaded.arc_f = ParseArcBounds(loaded.instance, params.at("f"));
    if (params.contains("L")) {
      ExternalParams p;
      p.L = Field<std::int64_t>(params, "L");
      p.c = params.contains("c") ? RationalField(params.at("c")) : Rational(1);
      p.t = params.contains("t") ? ParsePriorities(params.at("t"), z)
                                 : PriorityTable::Constant(z, Rational(1));
      p.f = loaded.arc_f.empty() ? std::vector<int>(loaded.instance.num_arcs(), 1) : loaded.arc_f;
      if (params.contains("capacity_semantics")) {
        p.capacity_semantics = ParseCapacitySemantics(Field<std::string>(params, "capacity_semantics"));
      }
      p.Check(loaded.instance);
      loaded.params = std::move(p);
    }
  }
  if (doc.contains("g")) {
    loaded.g = ParseGaps(loaded.instance, doc.at("g"));
  } else {
    loaded.g.assign(loaded.instance.num_edges(), {});
  }
  if (doc.contains("orders")) {
    const Json& orders = doc.at("orders");
    if (!orders.is_object()) throw InputError("orders must map vertices to neighbor lists");
    CyclicOrders parsed = CyclicOrders::FromInstance(loaded.instance);
    for (const auto& [name, ring] : orders.items()) {
      auto& slot = parsed.around[VertexNamed(loaded.instance, name)];
      slot.clear();
      for (const auto& neighbor : ring.get<std::vector<std::string>>()) {
        slot.push_back(VertexNamed(loaded.instance, neighbor));
      }
    }
    parsed.Check(loaded.instance);
    loaded.orders = std::move(parsed);
  }
  if (doc.contains("mode")) loaded.mode = ParseMode(Field<std::string>(doc, "mode"));
  if (doc.contains("max_length")) loaded.max_length = Field<std::int64_t>(doc, "max_length");
  return loaded;
}

LoadedInstance ReadInstance(const std::filesystem::path& path) { return ParseInstance(ReadJson(path)); }

Json InstanceToJson(const RoadInstance& instance, const ExternalParams* params) {
  Json doc;
  doc["kind"] = instance.is_tree() ? "tree" : "graph";
  doc["vertices"] = std::vector<std::string>(instance.names().begin(), instance.names().end());
  Json edges = Json::array();
  for (const Edge& edge : instance.edges()) {
    edges.push_back({{"u", instance.name(edge.u)},
                     {"v", instance.name(edge.v)},
                     {"alpha", edge.alpha},
                     {"priority", edge.priority},
                     {"material", std::string(MaterialName(edge.material))}});
  }
  doc["edges"] = std::move(edges);
  doc["depot"] = instance.name(instance.depot());
  doc["z"] = instance.z();
  if (params) {
    Json p;
    p["L"] = params->L;
    p["c"] = FormatRational(params->c);
    Json t = Json::object();
    for (int level = 1; level <= params->t.levels(); ++level) {
      Json row = Json::array();
      for (const Rational& r : params->t.level(level)) row.push_back(FormatRational(r));
      t[std::to_string(level)] = std::move(row);
    }
    p["t"] = std::move(t);
    Json f = Json::object();
    for (ArcId a = 0; a < instance.num_arcs(); ++a) f[ArcKey(instance, a)] = params->f[a];
    p["f"] = std::move(f);
    p["capacity_semantics"] = std::string(CapacitySemanticsName(params->capacity_semantics));
    doc["params"] = std::move(p);
  }
  return doc;
}

Json FgToJson(const FgInstance& fg) {
  Json doc = InstanceToJson(fg.graph);
  Json f = Json::object();
  Json g = Json::object();
  for (EdgeId e = 0; e < fg.graph.num_edges(); ++e) {
    f[ArcKey(fg.graph, 2 * e)] = fg.f[e];
    f[ArcKey(fg.graph, 2 * e + 1)] = fg.f[e];
    for (std::size_t y = 0; y < fg.g[e].size(); ++y) {
      g[ArcKey(fg.graph, 2 * e) + "#" + std::to_string(y + 1)] = fg.g[e][y];
    }
  }
  doc["params"] = {{"f", std::move(f)}};
  doc["g"] = std::move(g);
  doc["mode"] = fg.mode == WalkMode::kExact ? "exact" : "atmost";
  if (fg.max_length >= 0) doc["max_length"] = fg.max_length;
  return doc;
}

Json OrdersToJson(const RoadInstance& instance, const CyclicOrders& orders) {
  Json doc = Json::object();
  for (VertexId v = 0; v < instance.num_vertices(); ++v) {
    Json ring = Json::array();
    for (VertexId w : orders.around[v]) ring.push_back(instance.name(w));
    doc[instance.name(v)] = std::move(ring);
  }
  return doc;
}

VehicleRoute ParseRoute(const RoadInstance& instance, const std::string& text) {
  VehicleRoute route;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    route.arcs.push_back(ParseArcKey(instance, line.substr(first, last - first + 1)));
  }
  return route;
}

VehicleRoute ReadRoute(const RoadInstance& instance, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseRoute(instance, buffer.str());
}

std::string FormatRoute(const RoadInstance& instance, const VehicleRoute& route) {
  std::string out;
  for (ArcId a : route.arcs) out += ArcKey(instance, a) + "\n";
  return out;
}

TreeDecomposition ParseDecomposition(const RoadInstance& instance, const Json& doc) {
  const Json nodes = Field<Json>(doc, "nodes");
  if (!nodes.is_array() || nodes.empty()) throw InputError("decomposition needs a nonempty nodes array");
  std::map<std::int64_t, int> slot;
  for (const auto& node : nodes) {
    const auto id = Field<std::int64_t>(node, "id");
    if (!slot.emplace(id, static_cast<int>(slot.size())).second) {
      throw InputError("decomposition: duplicate node id " + std::to_string(id));
    }
  }
  TreeDecomposition dec;
  dec.bags.resize(nodes.size());
  dec.children.resize(nodes.size());
  std::set<int> listed;
  for (const auto& node : nodes) {
    const int here = slot.at(Field<std::int64_t>(node, "id"));
    for (const auto& name : Field<std::vector<std::string>>(node, "bag")) {
      dec.bags[here].push_back(VertexNamed(instance, name));
    }
    if (!node.contains("children")) continue;
    for (auto child : Field<std::vector<std::int64_t>>(node, "children")) {
      auto it = slot.find(child);
      if (it == slot.end()) throw InputError("decomposition: unknown child " + std::to_string(child));
      dec.children[here].push_back(it->second);
      listed.insert(it->second);
    }
  }
  std::vector<int> roots;
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
    if (!listed.contains(i)) roots.push_back(i);
  }
  if (roots.size() != 1) throw InputError("decomposition: expected exactly one root");
  dec.root = roots.front();
  return dec;
}

Json DecompositionToJson(const RoadInstance& instance, const CanonicalDecomposition& dec) {
  Json nodes = Json::array();
  for (std::size_t i = 0; i < dec.nodes.size(); ++i) {
    const auto& node = dec.nodes[i];
    Json bag = Json::array();
    for (VertexId v : node.bag) bag.push_back(instance.name(v));
    Json item = {{"id", i}, {"kind", std::string(NodeKindName(node.kind))}, {"bag", std::move(bag)},
                 {"children", node.children}};
    if (node.vertex >= 0) item["vertex"] = instance.name(node.vertex);
    nodes.push_back(std::move(item));
  }
  return {{"nodes", std::move(nodes)}, {"root", dec.root}};
}

Necklace ParseNecklace(const Json& doc) {
  Necklace necklace{Field<int>(doc, "k"), Field<std::vector<int>>(doc, "colors")};
  necklace.Check();
  return necklace;
}

Json NecklaceToJson(const Necklace& necklace) {
  return {{"k", necklace.thieves}, {"colors", necklace.beads}};
}

Json SplittingToJson(const Splitting& splitting) {
  return {{"size", splitting.size()}, {"cuts", splitting.cuts}, {"owner", splitting.owner}};
}

Json ReadJson(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

}  // namespace winroute::io
