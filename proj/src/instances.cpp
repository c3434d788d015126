// Copyright 2026 The Authors.
//
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

#include "subsetmax/instances.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "subsetmax/errors.hpp"
#include "subsetmax/rng.hpp"

namespace subsetmax {

using nlohmann::json;
using nlohmann::ordered_json;

FunctionKind function_kind(const FunctionSpec& spec) {
  return static_cast<FunctionKind>(spec.index());
}

std::string_view function_kind_name(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::kModular:
      return "modular";
    case FunctionKind::kCoverage:
      return "coverage";
    case FunctionKind::kCut:
      return "cut";
  }
  return "unknown";
}

FunctionKind parse_function_kind(std::string_view name) {
  if (name == "modular") return FunctionKind::kModular;
  if (name == "coverage") return FunctionKind::kCoverage;
  if (name == "cut") return FunctionKind::kCut;
  throw std::invalid_argument("unknown function type '" + std::string(name) + "'");
}

Instance::Instance(std::optional<OrderedGraph> ordered, std::optional<OrientedGraph> oriented,
                   FunctionSpec function, std::string generator, std::uint64_t seed)
    : ordered_(std::move(ordered)),
      oriented_(std::move(oriented)),
      function_(std::move(function)),
      generator_(std::move(generator)),
      seed_(seed) {
  if (!ordered_ && !oriented_) {
    throw ValidationError("instance needs an ordering or an orientation");
  }
  if (ordered_ && oriented_) {
    if (ordered_->k() != oriented_->k()) {
      throw ValidationError("ordering and orientation disagree on k");
    }
    if (ordered_->graph().n() != oriented_->graph().n() ||
        ordered_->graph().edges() != oriented_->graph().edges()) {
      throw ValidationError("ordering and orientation refer to different graphs");
    }
  }
  if (oracle().ground_size() != n()) {
    throw ValidationError("function ground set size " + std::to_string(oracle().ground_size()) +
                          " differs from n=" + std::to_string(n()));
  }
}

const SubmodularOracle& Instance::oracle() const {
  return std::visit([](const auto& f) -> const SubmodularOracle& { return f; }, function_);
}

const Graph& Instance::graph() const {
  return ordered_ ? ordered_->graph() : oriented_->graph();
}

int Instance::k() const { return ordered_ ? ordered_->k() : oriented_->k(); }

OrientedGraph Instance::oriented_or_derived() const {
  return oriented_ ? *oriented_ : orient_by_order(*ordered_);
}

Instance Instance::with_function(FunctionSpec function) const {
  return Instance(ordered_, oriented_, std::move(function), generator_, seed_);
}

Instance interval_instance(std::span<const Interval> intervals, std::string generator,
                           std::uint64_t seed) {
  const int n = static_cast<int>(intervals.size());
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (intervals[i].left <= intervals[j].right && intervals[j].left <= intervals[i].right) {
        edges.push_back({i, j});
      }
    }
  }
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    const Interval& x = intervals[a];
    const Interval& y = intervals[b];
    if (x.right != y.right) return x.right < y.right;
    if (x.left != y.left) return x.left < y.left;
    return a < b;
  });
  OrderedGraph og(Graph(n, edges), std::move(order), 1);
  return Instance(std::move(og), std::nullopt,
                  ModularFunction(Eigen::VectorXd::Ones(n)), std::move(generator), seed);
}

Instance line_graph_instance(int base_n, std::span<const Edge> base_edges,
                             std::vector<Vertex> order, std::string generator,
                             std::uint64_t seed) {
  const Graph base(base_n, base_edges);
  const int m = static_cast<int>(base_edges.size());
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const Edge& a = base_edges[i];
      const Edge& b = base_edges[j];
      if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) edges.push_back({i, j});
    }
  }
  OrderedGraph og(Graph(m, edges), std::move(order), 2);
  return Instance(std::move(og), std::nullopt,
                  ModularFunction(Eigen::VectorXd::Ones(m)), std::move(generator), seed);
}

Instance gen_interval_graph(int n, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  Rng rng(seed);
  std::vector<Interval> intervals(n);
  for (auto& iv : intervals) {
    const double a = rng.uniform();
    const double b = rng.uniform();
    iv = {std::min(a, b), std::max(a, b)};
  }
  const Instance inst = interval_instance(intervals, "interval", seed);
  return attach_function(inst, FunctionKind::kModular, derive_seed(seed, {hash_name("f")}));
}

Instance gen_line_graph_matching(int m_edges, int base_n, std::uint64_t seed) {
  if (base_n < 0 || m_edges < 0) throw std::invalid_argument("sizes must be non-negative");
  std::vector<Edge> pairs;
  for (int u = 0; u < base_n; ++u) {
    for (int v = u + 1; v < base_n; ++v) pairs.push_back({u, v});
  }
  if (m_edges > static_cast<int>(pairs.size())) {
    throw std::invalid_argument("base graph cannot hold that many edges");
  }
  Rng rng(seed);
  rng.shuffle(pairs);
  pairs.resize(m_edges);
  std::vector<Vertex> order(m_edges);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  const Instance inst = line_graph_instance(base_n, pairs, std::move(order), "line", seed);
  return attach_function(inst, FunctionKind::kModular, derive_seed(seed, {hash_name("f")}));
}

Instance gen_degenerate(int n, double edge_prob, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
    throw std::invalid_argument("edge probability must lie in [0,1]");
  }
  Rng rng(seed);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.bernoulli(edge_prob)) edges.push_back({u, v});
    }
  }
  const Instance inst(degeneracy_ordering(Graph(n, edges)), std::nullopt,
                      ModularFunction(Eigen::VectorXd::Ones(n)), "degenerate", seed);
  return attach_function(inst, FunctionKind::kModular, derive_seed(seed, {hash_name("f")}));
}

Instance gen_oriented_cycle(int n, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("a cycle needs at least 3 vertices");
  Rng rng(seed);
  std::vector<Vertex> label(n);
  std::iota(label.begin(), label.end(), 0);
  rng.shuffle(label);
  std::vector<Edge> edges;
  std::vector<Edge> arcs;
  for (int i = 0; i < n; ++i) {
    const Vertex u = label[i];
    const Vertex v = label[(i + 1) % n];
    edges.push_back({std::min(u, v), std::max(u, v)});
    arcs.push_back({u, v});
  }
  const Instance inst(std::nullopt, OrientedGraph(Graph(n, edges), arcs, 1),
                      ModularFunction(Eigen::VectorXd::Ones(n)), "cycle", seed);
  return attach_function(inst, FunctionKind::kModular, derive_seed(seed, {hash_name("f")}));
}

Instance attach_function(const Instance& inst, FunctionKind kind, std::uint64_t seed) {
  const int n = inst.n();
  Rng rng(seed);
  switch (kind) {
    case FunctionKind::kModular: {
      Eigen::VectorXd w(n);
      for (int v = 0; v < n; ++v) w[v] = rng.uniform();
      if (n > 0 && w.maxCoeff() > 0.0) w /= w.maxCoeff();
      return inst.with_function(ModularFunction(std::move(w)));
    }
    case FunctionKind::kCoverage: {
      const int universe = std::max(1, 2 * n);
      const double p = std::min(1.0, 3.0 / universe);
      std::vector<std::vector<int>> covers(n);
      std::size_t largest = 0;
      for (int v = 0; v < n; ++v) {
        for (int e = 0; e < universe; ++e) {
          if (rng.bernoulli(p)) covers[v].push_back(e);
        }
        largest = std::max(largest, covers[v].size());
      }
      Eigen::VectorXd weights = Eigen::VectorXd::Ones(universe);
      if (largest > 0) weights /= static_cast<double>(largest);
      return inst.with_function(CoverageFunction(std::move(weights), std::move(covers)));
    }
    case FunctionKind::kCut: {
      const double p = n > 1 ? std::min(1.0, 4.0 / n) : 0.0;
      std::vector<WeightedEdge> edges;
      std::vector<double> degree(n, 0.0);
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          if (rng.bernoulli(p)) {
            const double w = 1.0 - rng.uniform();  // (0, 1]
            edges.push_back({u, v, w});
            degree[u] += w;
            degree[v] += w;
          }
        }
      }
      const double largest = n > 0 ? *std::max_element(degree.begin(), degree.end()) : 0.0;
      if (largest > 0.0) {
        for (auto& e : edges) e.weight /= largest;
      }
      return inst.with_function(CutFunction(n, std::move(edges)));
    }
  }
  throw std::invalid_argument("unknown function kind");
}

namespace {

ordered_json function_to_json(const FunctionSpec& spec) {
  ordered_json out;
  out["type"] = function_kind_name(function_kind(spec));
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ModularFunction>) {
          out["weights"] = std::vector<double>(f.weights().begin(), f.weights().end());
        } else if constexpr (std::is_same_v<T, CoverageFunction>) {
          out["universe_weights"] =
              std::vector<double>(f.universe_weights().begin(), f.universe_weights().end());
          out["covers"] = f.covers();
        } else {
          ordered_json edges = ordered_json::array();
          for (const auto& e : f.edges()) edges.push_back({e.u, e.v, e.weight});
          out["edges"] = std::move(edges);
        }
      },
      spec);
  return out;
}

// Field access with diagnostics that name the field path.
const json& field(const json& obj, const std::string& name, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + ": expected an object");
  const auto it = obj.find(name);
  if (it == obj.end()) throw SchemaError(where + ": missing field '" + name + "'");
  return *it;
}

template <typename T>
T as(const json& value, const std::string& where) {
  try {
    return value.get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

std::vector<Edge> edge_list(const json& value, const std::string& where) {
  if (!value.is_array()) throw SchemaError(where + ": expected an array of pairs");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const auto pair = as<std::vector<int>>(value[i], where + "[" + std::to_string(i) + "]");
    if (pair.size() != 2) {
      throw SchemaError(where + "[" + std::to_string(i) + "]: expected [u, v]");
    }
    edges.push_back({pair[0], pair[1]});
  }
  return edges;
}

Eigen::VectorXd vector_of(const json& value, const std::string& where) {
  const auto values = as<std::vector<double>>(value, where);
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

FunctionSpec function_from_json(const json& obj, int n) {
  const std::string type = as<std::string>(field(obj, "type", "function"), "function.type");
  FunctionKind kind;
  try {
    kind = parse_function_kind(type);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("function.type: ") + e.what());
  }
  switch (kind) {
    case FunctionKind::kModular:
      return ModularFunction(vector_of(field(obj, "weights", "function"), "function.weights"));
    case FunctionKind::kCoverage:
      return CoverageFunction(
          vector_of(field(obj, "universe_weights", "function"), "function.universe_weights"),
          as<std::vector<std::vector<int>>>(field(obj, "covers", "function"), "function.covers"));
    case FunctionKind::kCut: {
      const json& list = field(obj, "edges", "function");
      if (!list.is_array()) throw SchemaError("function.edges: expected an array");
      std::vector<WeightedEdge> edges;
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string where = "function.edges[" + std::to_string(i) + "]";
        const json& e = list[i];
        if (!e.is_array() || e.size() != 3) throw SchemaError(where + ": expected [u, v, w]");
        edges.push_back({as<int>(e[0], where), as<int>(e[1], where), as<double>(e[2], where)});
      }
      return CutFunction(n, std::move(edges));
    }
  }
  throw SchemaError("function.type: unsupported");
}

}  // namespace

ordered_json to_json(const Instance& inst) {
  ordered_json doc;
  doc["n"] = inst.n();
  doc["k"] = inst.k();
  ordered_json edges = ordered_json::array();
  for (const Edge& e : inst.graph().edges()) edges.push_back({e.u, e.v});
  doc["edges"] = std::move(edges);
  if (inst.ordered()) {
    const auto order = inst.ordered()->order();
    doc["ordering"] = std::vector<Vertex>(order.begin(), order.end());
  }
  if (inst.oriented()) {
    ordered_json arcs = ordered_json::array();
    for (const Edge& a : inst.oriented()->arcs()) arcs.push_back({a.u, a.v});
    doc["orientation"] = std::move(arcs);
  }
  doc["function"] = function_to_json(inst.function());
  doc["metadata"] = {{"generator", inst.generator()}, {"seed", inst.seed()}};
  return doc;
}

Instance instance_from_json(const json& doc) {
  const int n = as<int>(field(doc, "n", "instance"), "n");
  const int k = as<int>(field(doc, "k", "instance"), "k");
  if (n < 0) throw ValidationError("n: must be non-negative");
  if (k < 1) throw ValidationError("k: must be at least 1");
  const auto edges = edge_list(field(doc, "edges", "instance"), "edges");
  const bool has_order = doc.contains("ordering");
  const bool has_orientation = doc.contains("orientation");
  if (!has_order && !has_orientation) {
    throw SchemaError("instance: needs 'ordering' or 'orientation'");
  }
  std::string generator = "unknown";
  std::uint64_t seed = 0;
  if (doc.contains("metadata")) {
    const json& meta = doc["metadata"];
    if (meta.contains("generator")) generator = as<std::string>(meta["generator"], "metadata.generator");
    if (meta.contains("seed")) seed = as<std::uint64_t>(meta["seed"], "metadata.seed");
  }

  try {
    Graph graph(n, edges);
    std::optional<OrderedGraph> ordered;
    std::optional<OrientedGraph> oriented;
    if (has_order) {
      ordered.emplace(graph, as<std::vector<Vertex>>(doc["ordering"], "ordering"), k);
    }
    if (has_orientation) {
      oriented.emplace(graph, edge_list(doc["orientation"], "orientation"), k);
    }
    FunctionSpec function = function_from_json(field(doc, "function", "instance"), n);
    return Instance(std::move(ordered), std::move(oriented), std::move(function),
                    std::move(generator), seed);
  } catch (const SchemaError&) {
    throw;
  } catch (const std::logic_error& e) {
    throw ValidationError(std::string("validation: ") + e.what());
  }
}

void write_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << to_json(inst).dump(1) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t offset = std::min(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + offset, '\n');
    throw SchemaError(path.string() + ":" + std::to_string(line) + ": " + e.what());
  }
  try {
    return instance_from_json(doc);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

namespace {

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename T>
std::string optional_field(const std::optional<T>& value) {
  if (!value) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return format_number(*value);
  } else {
    return std::to_string(*value);
  }
}

}  // namespace

void write_results_csv(std::ostream& out, std::span<const ResultRow> rows) {
  out << kResultsHeader << '\n';
  for (const ResultRow& r : rows) {
    out << csv_field(r.instance) << ',' << csv_field(r.algorithm) << ',' << csv_field(r.params)
        << ',' << optional_field(r.seed) << ',' << optional_field(r.value) << ','
        << optional_field(r.opt) << ',' << optional_field(r.ratio) << ','
        << optional_field(r.guarantee) << ',' << optional_field(r.oracle_calls) << ','
        << optional_field(r.wall_ms) << '\n';
  }
}

ordered_json to_json(const ResultRow& row) {
  ordered_json out;
  out["instance"] = row.instance;
  out["algorithm"] = row.algorithm;
  out["params"] = row.params;
  auto put = [&](const char* name, const auto& value) {
    if (value) {
      out[name] = *value;
    } else {
      out[name] = nullptr;
    }
  };
  put("seed", row.seed);
  put("value", row.value);
  put("opt", row.opt);
  put("ratio", row.ratio);
  put("guarantee", row.guarantee);
  put("oracle_calls", row.oracle_calls);
  put("wall_ms", row.wall_ms);
  return out;
}

}  // namespace subsetmax
