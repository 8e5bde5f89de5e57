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

#include <string>
#include <utility>
#include <vector>

#include "winroute/io.hpp"
#include "winroute/road_model.hpp"

namespace winroute::test {

struct EdgeSpec {
  std::string u;
  std::string v;
  std::int64_t alpha = 1;
};

inline RoadInstance Build(std::vector<std::string> names, const std::vector<EdgeSpec>& specs,
                          const std::string& depot = "d") {
  const auto index = [&](const std::string& name) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) return static_cast<VertexId>(i);
    }
    throw std::logic_error("unknown vertex " + name);
  };
  std::vector<Edge> edges;
  for (const auto& spec : specs) {
    Edge edge;
    edge.u = index(spec.u);
    edge.v = index(spec.v);
    edge.alpha = spec.alpha;
    edges.push_back(edge);
  }
  const VertexId root = index(depot);
  return RoadInstance::Create(std::move(names), std::move(edges), root, 1);
}

// "d>a a>d ..." separated by spaces.
inline VehicleRoute Walk(const RoadInstance& instance, std::string arcs) {
  for (char& ch : arcs) {
    if (ch == ' ') ch = '\n';
  }
  return io::ParseRoute(instance, arcs);
}

}  // namespace winroute::test
