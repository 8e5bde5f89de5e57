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

#include "winroute/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <random>
#include <sstream>
#include <utility>

#include <CLI11.hpp>

#include "winroute/const_priority.hpp"
#include "winroute/errors.hpp"
#include "winroute/fairness_necklace.hpp"
#include "winroute/fg_tree_dp.hpp"
#include "winroute/rational.hpp"
#include "winroute/testkit.hpp"
#include "winroute/tree_cutting.hpp"
#include "winroute/treewidth_dp.hpp"

namespace winroute::cli {
namespace {

using io::Json;
using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Options {
  std::string input;
  std::string route;
  std::string algo = "const-priority";
  std::string decomposition;
  std::string mode;
  std::string capacity_semantics;
  std::string json_report;
  std::string route_out;
  std::string output;
  std::string dir;
  std::string csv;
  std::string sizes;
  std::string weights;
  std::string values;
  std::string terminals;
  std::uint64_t seed = 1;
  std::int64_t guard = testkit::kDefaultGuard;
  int target = 0;
  int x = 0;
  int edges = 6;
  int count = 20;
  bool parallel = false;
  bool literal = false;
};

template <typename T>
std::vector<T> SplitList(const std::string& text, const char* flag) {
  std::vector<T> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const long long value = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<T>(value));
    } catch (const std::exception&) {
      throw InputError(std::string(flag) + ": '" + item + "' is not an integer");
    }
  }
  if (out.empty()) throw InputError(std::string(flag) + " needs a comma-separated list");
  return out;
}

std::vector<std::string> SplitNames(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

std::optional<WalkMode> ModeFlag(const Options& o) {
  if (o.mode.empty()) return std::nullopt;
  if (o.mode == "exact") return WalkMode::kExact;
  if (o.mode == "atmost") return WalkMode::kAtMost;
  throw InputError("--mode must be exact or atmost");
}

ExternalParams RequireParams(const io::LoadedInstance& loaded, const Options& o) {
  if (!loaded.params) throw InputError("instance has no params.L");
  ExternalParams params = *loaded.params;
  if (!o.capacity_semantics.empty()) {
    params.capacity_semantics = ParseCapacitySemantics(o.capacity_semantics);
  }
  return params;
}

bool HasGaps(const io::LoadedInstance& loaded) {
  return loaded.instance.num_edges() > 0 &&
         std::all_of(loaded.g.begin(), loaded.g.end(), [](const auto& list) { return !list.empty(); });
}

Json RouteJson(const RoadInstance& instance, const VehicleRoute& route) {
  Json arcs = Json::array();
  for (ArcId a : route.arcs) arcs.push_back(io::ArcKey(instance, a));
  return arcs;
}

struct Outcome {
  bool feasible = false;
  std::optional<VehicleRoute> route;
  std::int64_t states = 0;
  Json extra = Json::object();
};

// Every emitted route is checked before it leaves the solver layer.
void Audit(const io::LoadedInstance& loaded, const std::optional<ExternalParams>& params,
           const std::optional<FgInstance>& fg, const VehicleRoute& route) {
  if (fg) {
    CheckRouteStructure(fg->graph, route);
    if (!SatisfiesGaps(*fg, route) || !SatisfiesCounts(*fg, route)) {
      throw std::logic_error("emitted walk breaks its f/g bounds");
    }
  } else if (params && !ValidateRoute(loaded.instance, *params, route).valid) {
    throw std::logic_error("emitted route fails validation");
  }
}

Outcome Solve(const io::LoadedInstance& loaded, const Options& o,
              const std::optional<TreeDecomposition>& decomposition) {
  Outcome out;
  const RoadInstance& instance = loaded.instance;
  std::optional<FgInstance> fg;
  std::optional<ExternalParams> params;
  if (HasGaps(loaded)) {
    fg = loaded.ToFg(ModeFlag(o));
  } else {
    params = RequireParams(loaded, o);
  }
  if (o.algo == "const-priority") {
    if (!params) throw InputError("const-priority needs params.L, not an f/g instance");
    ConstPriorityOptions options;
    options.literal = o.literal;
    const auto result = DecideRouteConstPriority(instance, *params, options);
    out.feasible = result.feasible;
    out.route = result.route;
    out.extra["case"] = std::string(CaseTagName(result.tag));
    out.extra["exact_search"] = result.exact_search;
  } else if (o.algo == "fg-dp") {
    if (fg) {
      const auto result = DecideFgWalk(*fg);
      out.feasible = result.exists;
      out.route = result.witness;
      for (auto size : result.stats.primed_sets) {
        out.states = std::max<std::int64_t>(out.states, static_cast<std::int64_t>(size));
      }
    } else {
      const auto result = DecideVehicleRouteTree(instance, *params);
      out.feasible = result.exists;
      out.route = result.witness;
    }
  } else if (o.algo == "tw-dp") {
    if (!fg) fg = EncodeVehicleRouteAsFg(instance, *params);
    if (!decomposition) throw InputError("tw-dp needs --decomposition");
    const auto canonical = Canonicalize(fg->graph, *decomposition, fg->graph.depot());
    const auto result = DecideFgWalkTw(*fg, canonical);
    out.feasible = result.exists;
    out.states = static_cast<std::int64_t>(result.stats.max_states);
    out.extra["width"] = canonical.width();
    if (params) {
      out.extra["note"] = "decision only";
      fg.reset();
    }
  } else if (o.algo == "brute") {
    const auto result = fg ? testkit::BruteForceFgWalk(*fg, o.guard)
                           : testkit::BruteForceRoute(instance, *params, o.guard);
    out.feasible = result.exists;
    out.route = result.witness;
    out.states = result.nodes;
  } else {
    throw InputError("unknown --algo '" + o.algo + "'");
  }
  if (out.route) Audit(loaded, params, fg, *out.route);
  return out;
}

std::optional<TreeDecomposition> LoadDecomposition(const RoadInstance& instance,
                                                   const std::string& path) {
  if (path.empty()) return std::nullopt;
  return io::ParseDecomposition(instance, io::ReadJson(path));
}

CommandResult Decide(const Options& o) {
  const auto loaded = io::ReadInstance(o.input);
  const auto start = Clock::now();
  const Outcome out = Solve(loaded, o, LoadDecomposition(loaded.instance, o.decomposition));
  const double elapsed = MillisSince(start);

  CommandResult result;
  result.exit_code = out.feasible ? kOk : kNo;
  result.json = {{"command", "decide"}, {"algo", o.algo},      {"feasible", out.feasible},
                 {"wall_ms", elapsed},  {"states", out.states}};
  result.json.update(out.extra);
  std::ostringstream text;
  text << "algo: " << o.algo << "\n";
  for (const auto& [key, value] : out.extra.items()) text << key << ": " << value << "\n";
  text << "feasible: " << (out.feasible ? "yes" : "no") << "\n";
  if (out.route) {
    result.json["route"] = RouteJson(loaded.instance, *out.route);
    const std::string lines = io::FormatRoute(loaded.instance, *out.route);
    text << "route: " << out.route->arcs.size() << " arcs, length "
         << RouteLength(*out.route, loaded.instance) << "\n";
    if (o.route_out.empty()) {
      text << lines;
    } else {
      io::WriteText(o.route_out, lines);
      text << "route written to " << o.route_out << "\n";
    }
  }
  result.report = text.str();
  return result;
}

CommandResult Validate(const Options& o) {
  const auto loaded = io::ReadInstance(o.input);
  if (o.route.empty()) throw InputError("validate needs --route");
  const VehicleRoute route = io::ReadRoute(loaded.instance, o.route);
  CommandResult result;
  std::ostringstream text;
  Json violations = Json::array();
  bool valid = true;
  if (loaded.params) {
    const ExternalParams params = RequireParams(loaded, o);
    const ValidationReport report = ValidateRoute(loaded.instance, params, route);
    valid = report.valid;
    for (const Violation& v : report.violations) {
      Json item = {{"kind", std::string(ViolationKindName(v.kind))},
                   {"measured", v.measured},
                   {"allowed", FormatRational(v.allowed)}};
      text << ViolationKindName(v.kind);
      if (v.edge >= 0) {
        item["edge"] = io::ArcKey(loaded.instance, 2 * v.edge);
        text << " edge " << item["edge"].get<std::string>();
      }
      if (v.arc >= 0) {
        item["arc"] = io::ArcKey(loaded.instance, v.arc);
        text << " arc " << item["arc"].get<std::string>();
      }
      if (v.index > 0) {
        item["index"] = v.index;
        text << " index " << v.index;
      }
      text << " measured " << v.measured << " allowed " << FormatRational(v.allowed) << "\n";
      violations.push_back(std::move(item));
    }
  } else if (HasGaps(loaded)) {
    const FgInstance fg = loaded.ToFg(ModeFlag(o));
    CheckRouteStructure(fg.graph, route);
    valid = SatisfiesCounts(fg, route) && SatisfiesGaps(fg, route);
    if (!SatisfiesCounts(fg, route)) violations.push_back({{"kind", "FREQUENCY"}});
    if (!SatisfiesGaps(fg, route)) violations.push_back({{"kind", "PRIORITY_GAP"}});
    for (const auto& v : violations) text << v["kind"].get<std::string>() << "\n";
  } else {
    throw InputError("instance has neither params.L nor g");
  }
  text << (valid ? "valid" : "invalid") << "\n";
  result.exit_code = valid ? kOk : kNo;
  result.json = {{"command", "validate"}, {"valid", valid}, {"violations", std::move(violations)}};
  result.report = text.str();
  return result;
}

CommandResult Cut(const Options& o) {
  const auto loaded = io::ReadInstance(o.input);
  const SizeVector sizes = SplitList<int>(o.sizes, "--sizes");
  const RoadInstance& instance = loaded.instance;
  std::optional<std::vector<std::vector<EdgeId>>> parts;
  if (o.algo == "brute") {
    if (ModeFlag(o) == WalkMode::kAtMost) throw InputError("brute cut supports exact sizes only");
    parts = testkit::BruteForceCut(instance, instance.depot(), sizes);
  } else if (o.algo == "dp" || o.algo == "const-priority") {
    if (!instance.is_tree()) throw InputError("cut dp needs a tree");
    const RootedTree tree = RootedTree::FromInstance(instance, instance.depot());
    const CutMode mode = ModeFlag(o) == WalkMode::kAtMost ? CutMode::kAtMost : CutMode::kExact;
    if (auto cover = CutTree(tree, sizes, mode)) parts = cover->parts;
  } else {
    throw InputError("cut --algo must be dp or brute");
  }
  CommandResult result;
  std::ostringstream text;
  text << "feasible: " << (parts ? "yes" : "no") << "\n";
  result.json = {{"command", "cut"}, {"feasible", parts.has_value()}};
  if (parts) {
    Json listing = Json::array();
    for (std::size_t j = 0; j < parts->size(); ++j) {
      Json part = Json::array();
      text << "part " << j + 1 << ":";
      for (EdgeId e : (*parts)[j]) {
        const Edge& edge = instance.edge(e);
        const std::string name = instance.name(edge.u) + "-" + instance.name(edge.v);
        part.push_back(name);
        text << " " << name;
      }
      text << "\n";
      listing.push_back(std::move(part));
    }
    result.json["parts"] = std::move(listing);
  }
  result.exit_code = parts ? kOk : kNo;
  result.report = text.str();
  return result;
}

CommandResult Unfairness(const Options& o, bool minimize) {
  const auto loaded = io::ReadInstance(o.input);
  const RoadInstance& instance = loaded.instance;
  const CyclicOrders orders = loaded.orders.value_or(CyclicOrders::FromInstance(instance));
  CommandResult result;
  std::ostringstream text;
  if (!minimize) {
    if (o.route.empty()) throw InputError("unfairness eval needs --route");
    const auto value = UnfairnessIndex(instance, orders, io::ReadRoute(instance, o.route));
    text << "unfairness: " << value << "\n";
    result.json = {{"command", "unfairness eval"}, {"unfairness", value}};
    result.report = text.str();
    return result;
  }
  const ExternalParams params = RequireParams(loaded, o);
  const auto start = Clock::now();
  const auto best = MinimizeUnfairness(instance, orders, params, o.guard,
                                       o.parallel ? Parallelism::kOpenMp : Parallelism::kSerial);
  result.json = {{"command", "unfairness min"}, {"feasible", best.has_value()},
                 {"wall_ms", MillisSince(start)}};
  if (!best) {
    result.exit_code = kNo;
    result.report = "feasible: no\n";
    return result;
  }
  result.json["unfairness"] = best->unfairness;
  result.json["states"] = best->nodes;
  result.json["route"] = RouteJson(instance, best->route);
  text << "unfairness: " << best->unfairness << "\n";
  const std::string lines = io::FormatRoute(instance, best->route);
  if (o.route_out.empty()) {
    text << lines;
  } else {
    io::WriteText(o.route_out, lines);
  }
  result.report = text.str();
  return result;
}

CommandResult Emit(const Options& o, Json doc, const std::string& summary) {
  CommandResult result;
  if (o.output.empty()) {
    result.report = doc.dump(2) + "\n";
  } else {
    io::WriteText(o.output, doc.dump(2) + "\n");
    result.report = summary + " written to " + o.output + "\n";
  }
  result.json = std::move(doc);
  return result;
}

CommandResult Necklaces(const Options& o, bool reduce) {
  const Necklace necklace = io::ParseNecklace(io::ReadJson(o.input));
  if (reduce) {
    const NecklaceStar star = NecklaceToStar(necklace);
    Json doc = io::InstanceToJson(star.instance, &star.params);
    doc["orders"] = io::OrdersToJson(star.instance, star.orders);
    return Emit(o, std::move(doc), "star instance");
  }
  const Splitting splitting = SplitNecklaceMin(necklace);
  CommandResult result;
  std::ostringstream text;
  text << "cuts: " << splitting.size() << "\n";
  for (int cut : splitting.cuts) text << "cut after bead " << cut << "\n";
  result.json = io::SplittingToJson(splitting);
  result.json["command"] = "necklace split";
  result.report = text.str();
  return result;
}

testkit::ThreePartitionInstance ThreePartitionFlags(const Options& o) {
  testkit::ThreePartitionInstance instance{SplitList<int>(o.values, "--values"), o.target};
  instance.Check(true);
  return instance;
}

Json ReductionJson(const testkit::ReductionWalk& walk) {
  Json doc = io::FgToJson(walk.fg);
  doc["reduction"] = {{"B", walk.scale},
                      {"short_bound", walk.short_bound},
                      {"long_bound", walk.long_bound},
                      {"depth", walk.depth},
                      {"within_default_bounds", walk.within_default_bounds}};
  return doc;
}

CommandResult Generate(const Options& o, const std::string& what) {
  if (what == "partition-star") {
    const auto problem = testkit::GenPartitionStar(SplitList<std::int64_t>(o.weights, "--weights"));
    return Emit(o, io::InstanceToJson(problem.instance, &problem.params), "partition star");
  }
  if (what == "3p-tree") return Emit(o, ReductionJson(testkit::Gen3PartitionTree(ThreePartitionFlags(o))), "3-partition tree");
  if (what == "spider") return Emit(o, ReductionJson(testkit::GenSpider(ThreePartitionFlags(o))), "spider");
  if (what == "steiner-cut") {
    const auto loaded = io::ReadInstance(o.input);
    std::vector<VertexId> terminals;
    for (const auto& name : SplitNames(o.terminals)) {
      auto v = loaded.instance.FindVertex(name);
      if (!v) throw InputError("unknown terminal '" + name + "'");
      terminals.push_back(*v);
    }
    const auto cut = testkit::GenSteinerCut(loaded.instance, terminals, o.x);
    Json doc = io::InstanceToJson(cut.graph);
    doc["sizes"] = cut.sizes;
    return Emit(o, std::move(doc), "steiner cut instance");
  }
  std::mt19937_64 rng(o.seed);
  const WalkMode mode = ModeFlag(o).value_or(WalkMode::kExact);
  if (what == "random-tree") {
    return Emit(o, io::FgToJson(testkit::RandomFgInstance(rng, o.edges, {}, mode)), "random f/g tree");
  }
  if (what == "random-graph") {
    auto graph = testkit::RandomWidth2Graph(rng, o.edges, 3);
    const FgInstance fg = testkit::RandomFgOnGraph(rng, graph.graph, 2, mode);
    if (!o.decomposition.empty()) {
      const auto canonical = Canonicalize(fg.graph, graph.decomposition, fg.graph.depot());
      io::WriteText(o.decomposition, io::DecompositionToJson(fg.graph, canonical).dump(2) + "\n");
    }
    return Emit(o, io::FgToJson(fg), "random f/g graph");
  }
  throw InputError("unknown generator '" + what + "'");
}

struct BenchRow {
  std::string instance;
  std::string algo;
  std::string feasible;
  double wall_ms = 0;
  std::int64_t states = 0;
};

BenchRow BenchOne(const std::string& name, const io::LoadedInstance& loaded, Options o,
                  const std::string& algo, const std::optional<TreeDecomposition>& dec) {
  o.algo = algo;
  BenchRow row{name, algo, "", 0, 0};
  const auto start = Clock::now();
  try {
    const Outcome out = Solve(loaded, o, dec);
    row.feasible = out.feasible ? "yes" : "no";
    row.states = out.states;
  } catch (const GuardExceeded&) {
    row.feasible = "guard";
  } catch (const InputError&) {
    row.feasible = "n/a";
  }
  row.wall_ms = MillisSince(start);
  return row;
}

CommandResult Bench(const Options& o) {
  const auto algos = SplitNames(o.algo == "const-priority" ? "fg-dp,tw-dp,brute" : o.algo);
  std::vector<BenchRow> rows;
  if (!o.dir.empty()) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(o.dir)) {
      const std::string name = entry.path().filename().string();
      if (entry.path().extension() == ".json" && !name.ends_with(".dec.json")) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
      const auto loaded = io::ReadInstance(path);
      auto dec_path = path;
      dec_path.replace_extension(".dec.json");
      std::optional<TreeDecomposition> dec;
      if (std::filesystem::exists(dec_path)) {
        dec = io::ParseDecomposition(loaded.instance, io::ReadJson(dec_path));
      } else if (loaded.instance.is_tree()) {
        dec = DecompositionOfTree(loaded.instance);
      }
      for (const auto& algo : algos) rows.push_back(BenchOne(path.filename().string(), loaded, o, algo, dec));
    }
  } else {
    std::mt19937_64 rng(o.seed);
    for (int i = 0; i < o.count; ++i) {
      const WalkMode mode = ModeFlag(o).value_or(i % 2 ? WalkMode::kAtMost : WalkMode::kExact);
      io::LoadedInstance loaded = io::ParseInstance(io::FgToJson(testkit::RandomFgInstance(rng, o.edges, {}, mode)));
      const auto dec = DecompositionOfTree(loaded.instance);
      for (const auto& algo : algos) {
        rows.push_back(BenchOne("random-" + std::to_string(i), loaded, o, algo, dec));
      }
    }
  }
  std::ostringstream csv;
  csv << "instance,algo,feasible,wall_ms,states\n";
  Json listing = Json::array();
  for (const auto& row : rows) {
    csv << row.instance << "," << row.algo << "," << row.feasible << "," << row.wall_ms << ","
        << row.states << "\n";
    listing.push_back({{"instance", row.instance}, {"algo", row.algo}, {"feasible", row.feasible},
                       {"wall_ms", row.wall_ms}, {"states", row.states}});
  }
  CommandResult result;
  result.json = {{"command", "bench"}, {"seed", o.seed}, {"rows", std::move(listing)}};
  if (o.csv.empty()) {
    result.report = csv.str();
  } else {
    io::WriteText(o.csv, csv.str());
    result.report = std::to_string(rows.size()) + " rows written to " + o.csv + "\n";
  }
  return result;
}

}  // namespace

CommandResult Run(const std::vector<std::string>& args) {
  CLI::App app{"Vehicle routes for road maintenance on trees and low-width graphs", "winroute"};
  app.require_subcommand(1);
  Options o;
  const auto add_input = [&](CLI::App* sub) { sub->add_option("--input", o.input, "Instance JSON")->required(); };
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--json-report", o.json_report, "Write a JSON report here");
    sub->add_option("--guard", o.guard, "Node guard for exhaustive searches");
    sub->add_option("--seed", o.seed, "Seed for randomized parts");
  };

  auto* decide = app.add_subcommand("decide", "Decide feasibility and print a route");
  add_input(decide);
  add_common(decide);
  decide->add_option("--algo", o.algo, "const-priority | fg-dp | tw-dp | brute")
      ->check(CLI::IsMember({"const-priority", "fg-dp", "tw-dp", "brute"}));
  decide->add_option("--decomposition", o.decomposition, "Tree decomposition JSON (tw-dp)");
  decide->add_option("--mode", o.mode, "exact | atmost");
  decide->add_option("--capacity-semantics", o.capacity_semantics, "traversed | serviced");
  decide->add_option("--route-out", o.route_out, "Write the route here");
  decide->add_flag("--literal", o.literal, "const-priority: four-case construction only");

  auto* validate = app.add_subcommand("validate", "Check a route against an instance");
  add_input(validate);
  add_common(validate);
  validate->add_option("--route", o.route, "Route file, one u>v per line")->required();
  validate->add_option("--capacity-semantics", o.capacity_semantics, "traversed | serviced");
  validate->add_option("--mode", o.mode, "exact | atmost (f/g instances)");

  auto* cut = app.add_subcommand("cut", "Cover a rooted tree by subtrees of given sizes");
  add_input(cut);
  add_common(cut);
  cut->add_option("--sizes", o.sizes, "Comma-separated part sizes")->required();
  cut->add_option("--mode", o.mode, "exact | atmost");
  std::string cut_algo = "dp";
  cut->add_option("--algo", cut_algo, "dp | brute");

  auto* unfairness = app.add_subcommand("unfairness", "Unfairness index");
  unfairness->require_subcommand(1);
  auto* eval = unfairness->add_subcommand("eval", "Unfairness of a route");
  add_input(eval);
  add_common(eval);
  eval->add_option("--route", o.route, "Route file")->required();
  auto* minimum = unfairness->add_subcommand("min", "Route of least unfairness");
  add_input(minimum);
  add_common(minimum);
  minimum->add_option("--capacity-semantics", o.capacity_semantics, "traversed | serviced");
  minimum->add_option("--route-out", o.route_out, "Write the route here");
  minimum->add_flag("--parallel", o.parallel, "Use OpenMP workers");

  auto* necklace = app.add_subcommand("necklace", "Necklace splitting");
  necklace->require_subcommand(1);
  auto* reduce = necklace->add_subcommand("reduce", "Necklace to weighted star instance");
  add_input(reduce);
  add_common(reduce);
  reduce->add_option("--output", o.output, "Write the instance here");
  auto* split = necklace->add_subcommand("split", "Fewest-cut splitting");
  add_input(split);
  add_common(split);

  auto* gen = app.add_subcommand("gen", "Instance generators");
  gen->require_subcommand(1);
  std::vector<CLI::App*> generators;
  const std::pair<const char*, const char*> kGenerators[] = {
      {"partition-star", "Weighted star from a partition multiset"},
      {"3p-tree", "Tree from a 3-partition instance"},
      {"spider", "Spider from a 3-partition instance"},
      {"steiner-cut", "Instance from a Steiner tree question"},
      {"random-tree", "Random tree with f/g requirements"},
      {"random-graph", "Random width <= 2 graph with f/g requirements"}};
  for (const auto& [name, about] : kGenerators) {
    auto* sub = gen->add_subcommand(name, about);
    add_common(sub);
    sub->add_option("--output", o.output, "Write the instance here");
    generators.push_back(sub);
  }
  generators[0]->add_option("--weights", o.weights, "Comma-separated leaf weights")->required();
  for (int i : {1, 2}) {
    generators[i]->add_option("--values", o.values, "Comma-separated a_i")->required();
    generators[i]->add_option("--target", o.target, "Group sum S")->required();
  }
  generators[3]->add_option("--input", o.input, "Graph JSON")->required();
  generators[3]->add_option("--terminals", o.terminals, "Comma-separated terminal names")->required();
  generators[3]->add_option("--x", o.x, "Steiner tree edge budget")->required();
  for (int i : {4, 5}) {
    generators[i]->add_option("--edges", o.edges, "Largest edge count");
    generators[i]->add_option("--mode", o.mode, "exact | atmost");
  }
  generators[5]->add_option("--decomposition", o.decomposition, "Write its decomposition here");

  auto* bench = app.add_subcommand("bench", "Time solvers over a directory or random instances");
  add_common(bench);
  bench->add_option("--dir", o.dir, "Directory of instance JSON files");
  bench->add_option("--algo", o.algo, "Comma-separated algorithms");
  bench->add_option("--csv", o.csv, "Write the CSV here");
  bench->add_option("--random", o.count, "Random instances when no --dir");
  bench->add_option("--edges", o.edges, "Largest edge count for random instances");
  bench->add_option("--mode", o.mode, "exact | atmost");
  bench->add_option("--capacity-semantics", o.capacity_semantics, "traversed | serviced");

  CommandResult result;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    result.report = app.help();
    return result;
  } catch (const CLI::CallForAllHelp&) {
    result.report = app.help("", CLI::AppFormatMode::All);
    return result;
  } catch (const CLI::ParseError& e) {
    result.exit_code = kInputError;
    result.report = std::string("error: ") + e.what() + "\n" + app.help();
    return result;
  }

  try {
    if (decide->parsed()) {
      result = Decide(o);
    } else if (validate->parsed()) {
      result = Validate(o);
    } else if (cut->parsed()) {
      o.algo = cut_algo;
      result = Cut(o);
    } else if (unfairness->parsed()) {
      result = Unfairness(o, minimum->parsed());
    } else if (necklace->parsed()) {
      result = Necklaces(o, reduce->parsed());
    } else if (gen->parsed()) {
      for (auto* sub : generators) {
        if (sub->parsed()) result = Generate(o, sub->get_name());
      }
    } else if (bench->parsed()) {
      result = Bench(o);
    }
  } catch (const InputError& e) {
    result = {kInputError, std::string("error: ") + e.what() + "\n", {{"error", e.what()}}};
  } catch (const GuardExceeded& e) {
    result = {kGuardExceeded, std::string("guard: ") + e.what() + "\n", {{"guard", e.what()}}};
  }
  if (!o.json_report.empty()) {
    result.json["exit_code"] = result.exit_code;
    io::WriteText(o.json_report, result.json.dump(2) + "\n");
  }
  return result;
}

}  // namespace winroute::cli
