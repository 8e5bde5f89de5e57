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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "winroute/fairness_necklace.hpp"
#include "winroute/fg_tree_dp.hpp"
#include "winroute/road_model.hpp"
#include "winroute/treewidth_dp.hpp"

namespace winroute::io {

using Json = nlohmann::json;

// Instance document: kind, vertices, edges, depot, z, params, optional
// cyclic orders, and for f/g walks g ("u>v#y" -> int), mode ("exact" | "atmost") and max_length.
// Arc keys are "tail>head"; rationals are "p/q" strings.
struct LoadedInstance {
  RoadInstance instance;
  std::vector<int> arc_f;                     // per ArcId; empty if params.f absent
  std::optional<ExternalParams> params;       // present when params.L is given
  std::vector<std::vector<std::int64_t>> g;   // per EdgeId; all empty if absent
  std::optional<WalkMode> mode;
  std::optional<std::int64_t> max_length;
  std::optional<CyclicOrders> orders;         // "orders": {"v": [neighbors...]}

  // f(e) is the smaller bound of the two arcs. Throws InputError without f or g.
  FgInstance ToFg(std::optional<WalkMode> override_mode = std::nullopt) const;
};

LoadedInstance ParseInstance(const Json& doc);
LoadedInstance ReadInstance(const std::filesystem::path& path);

Json InstanceToJson(const RoadInstance& instance, const ExternalParams* params = nullptr);
Json FgToJson(const FgInstance& fg);
Json OrdersToJson(const RoadInstance& instance, const CyclicOrders& orders);

std::string ArcKey(const RoadInstance& instance, ArcId arc);
ArcId ParseArcKey(const RoadInstance& instance, const std::string& key);

// One "u>v" per line; blank lines and lines starting with '#' are skipped.
VehicleRoute ParseRoute(const RoadInstance& instance, const std::string& text);
VehicleRoute ReadRoute(const RoadInstance& instance, const std::filesystem::path& path);
std::string FormatRoute(const RoadInstance& instance, const VehicleRoute& route);

// {"nodes": [{"id", "kind"?, "bag": [names], "children": [ids]}]}; the root is
// the one node nobody lists as a child.
TreeDecomposition ParseDecomposition(const RoadInstance& instance, const Json& doc);
Json DecompositionToJson(const RoadInstance& instance, const CanonicalDecomposition& dec);

// {"k": int, "colors": [int, ...]}
Necklace ParseNecklace(const Json& doc);
Json NecklaceToJson(const Necklace& necklace);
Json SplittingToJson(const Splitting& splitting);

Json ReadJson(const std::filesystem::path& path);
void WriteText(const std::filesystem::path& path, const std::string& text);

}  // namespace winroute::io
