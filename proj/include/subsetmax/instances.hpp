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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "subsetmax/graph.hpp"
#include "subsetmax/submodular.hpp"

namespace subsetmax {

enum class FunctionKind { kModular, kCoverage, kCut };

using FunctionSpec = std::variant<ModularFunction, CoverageFunction, CutFunction>;

FunctionKind function_kind(const FunctionSpec& spec);
std::string_view function_kind_name(FunctionKind kind);
// Throws std::invalid_argument for unknown names.
FunctionKind parse_function_kind(std::string_view name);

// A graph with at least one certificate (ordering and/or orientation) plus
// the objective. When both certificates are present they share the graph
// and k.
class Instance {
 public:
  Instance(std::optional<OrderedGraph> ordered, std::optional<OrientedGraph> oriented,
           FunctionSpec function, std::string generator = "manual", std::uint64_t seed = 0);

  const std::optional<OrderedGraph>& ordered() const { return ordered_; }
  const std::optional<OrientedGraph>& oriented() const { return oriented_; }
  const FunctionSpec& function() const { return function_; }
  const SubmodularOracle& oracle() const;
  const Graph& graph() const;
  int n() const { return graph().n(); }
  int k() const;
  const std::string& generator() const { return generator_; }
  std::uint64_t seed() const { return seed_; }

  // The stored orientation, or the ordering oriented earlier -> later.
  OrientedGraph oriented_or_derived() const;

  Instance with_function(FunctionSpec function) const;

 private:
  std::optional<OrderedGraph> ordered_;
  std::optional<OrientedGraph> oriented_;
  FunctionSpec function_;
  std::string generator_;
  std::uint64_t seed_;
};

struct Interval {
  double left;
  double right;
};

// Interval graph on closed intervals, ordered by right endpoint (ties by left
// endpoint, then index), k = 1.
Instance interval_instance(std::span<const Interval> intervals,
                           std::string generator = "interval", std::uint64_t seed = 0);

// Line graph of a base graph; base edge i becomes vertex i. k = 2.
Instance line_graph_instance(int base_n, std::span<const Edge> base_edges,
                             std::vector<Vertex> order, std::string generator = "line",
                             std::uint64_t seed = 0);

// Generators attach a modular objective drawn from the same seed; use
// attach_function to swap it.
Instance gen_interval_graph(int n, std::uint64_t seed);
Instance gen_line_graph_matching(int m_edges, int base_n, std::uint64_t seed);
Instance gen_degenerate(int n, double edge_prob, std::uint64_t seed);
Instance gen_oriented_cycle(int n, std::uint64_t seed);

// modular: i.i.d. uniform weights; coverage: universe of 2n unit elements,
// each vertex covering each with probability 3/(2n); cut: random weighted
// auxiliary graph. Every family is rescaled so the largest singleton value
// is 1.
Instance attach_function(const Instance& inst, FunctionKind kind, std::uint64_t seed);

nlohmann::ordered_json to_json(const Instance& inst);
// Throws SchemaError naming the offending field, ValidationError for
// inconsistent contents.
Instance instance_from_json(const nlohmann::json& doc);

void write_instance(const Instance& inst, const std::filesystem::path& path);
Instance read_instance(const std::filesystem::path& path);

// One row of the results table.
struct ResultRow {
  std::string instance;
  std::string algorithm;
  std::string params;
  std::optional<std::uint64_t> seed;
  std::optional<double> value;
  std::optional<double> opt;
  std::optional<double> ratio;
  std::optional<double> guarantee;
  std::optional<std::int64_t> oracle_calls;
  std::optional<double> wall_ms;
};

inline constexpr std::string_view kResultsHeader =
    "instance,algorithm,params,seed,value,opt,ratio,guarantee,oracle_calls,wall_ms";

void write_results_csv(std::ostream& out, std::span<const ResultRow> rows);
nlohmann::ordered_json to_json(const ResultRow& row);

}  // namespace subsetmax
