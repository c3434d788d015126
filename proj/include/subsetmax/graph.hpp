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

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace subsetmax {

// Vertices are dense indices 0..n-1.
using Vertex = int;

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Sorted, duplicate-free list of vertex indices.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> members);
  explicit VertexSet(std::vector<Vertex> members);

  // Bit i of `mask` set <=> vertex i is a member.
  static VertexSet from_mask(std::uint64_t mask);

  std::span<const Vertex> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool contains(Vertex v) const;
  VertexSet with(Vertex v) const;
  VertexSet without(Vertex v) const;
  bool is_subset_of(const VertexSet& other) const;
  std::uint64_t to_mask() const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  // Lexicographic on the sorted member lists.
  friend auto operator<=>(const VertexSet& a, const VertexSet& b) {
    return a.members_ <=> b.members_;
  }

 private:
  std::vector<Vertex> members_;
};

// Simple undirected graph with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  // Throws std::out_of_range for endpoints outside [0, n) and
  // std::invalid_argument for self-loops or repeated edges.
  Graph(int n, std::span<const Edge> edges);

  int n() const { return static_cast<int>(adjacency_.size()); }
  std::size_t edge_count() const { return edge_count_; }
  std::span<const Vertex> neighbors(Vertex v) const;
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
  bool adjacent(Vertex u, Vertex v) const;
  // Each edge once with u < v, sorted.
  std::vector<Edge> edges() const;
  void check_vertex(Vertex v) const;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t edge_count_ = 0;
};

// Subgraph induced on `keep`, relabelled so keep.members()[i] becomes i.
Graph induced_subgraph(const Graph& g, const VertexSet& keep);

// A graph together with a vertex ordering that is claimed to certify
// inductive k-independence: every forward neighbourhood has independence
// number at most k.
class OrderedGraph {
 public:
  OrderedGraph(Graph graph, std::vector<Vertex> order, int k);

  const Graph& graph() const { return graph_; }
  int n() const { return graph_.n(); }
  int k() const { return k_; }
  std::span<const Vertex> order() const { return order_; }
  // positions()[v] is the order position of vertex v.
  std::span<const int> positions() const { return position_; }
  Vertex vertex_at(int position) const { return order_.at(position); }
  int position_of(Vertex v) const { return position_.at(v); }
  bool before(Vertex u, Vertex v) const { return position_[u] < position_[v]; }

 private:
  Graph graph_;
  std::vector<Vertex> order_;
  std::vector<int> position_;
  int k_;
};

// A graph with every edge oriented exactly once, claimed to certify that
// each out-neighbourhood has independence number at most k.
class OrientedGraph {
 public:
  // Each arc (u, v) orients the edge {u, v} as u -> v.
  OrientedGraph(Graph graph, std::span<const Edge> arcs, int k);

  const Graph& graph() const { return graph_; }
  int n() const { return graph_.n(); }
  int k() const { return k_; }
  std::span<const Vertex> out_neighbors(Vertex v) const;
  bool has_arc(Vertex u, Vertex v) const;
  std::vector<Edge> arcs() const;

 private:
  Graph graph_;
  std::vector<std::vector<Vertex>> out_;
  int k_;
};

// Orients every edge from the earlier to the later endpoint.
OrientedGraph orient_by_order(const OrderedGraph& og);

inline constexpr int kDefaultNeighborhoodCap = 25;
inline constexpr int kDefaultAlphaCap = 30;

bool is_independent(const Graph& g, const VertexSet& s);

// Neighbours of v placed strictly later (forward) / earlier (backward) in the
// ordering.
VertexSet forward_neighbors(const OrderedGraph& og, Vertex v);
VertexSet backward_neighbors(const OrderedGraph& og, Vertex v);

// Maximum independent set size by branch-and-bound on the max-degree vertex
// with a greedy clique-cover bound. Throws ResourceLimitError if n > cap.
int alpha_exact(const Graph& g, int cap = kDefaultAlphaCap);

// Exhaustive subset enumeration. Cross-check for alpha_exact, n <= 20.
int alpha_by_enumeration(const Graph& g);

// True iff alpha(G[forward_neighbors(v)]) <= k for every v. Throws
// ResourceLimitError when a neighbourhood that needs checking exceeds
// neighborhood_cap vertices.
bool verify_inductive_k_independence(
    const OrderedGraph& og, int neighborhood_cap = kDefaultNeighborhoodCap);

// Same check on the out-neighbourhoods of an orientation.
bool verify_k_perfect_orientation(
    const OrientedGraph& dg, int neighborhood_cap = kDefaultNeighborhoodCap);

// Repeated min-degree peeling (ties to the smaller index). The reported k is
// the degeneracy, floored at 1.
OrderedGraph degeneracy_ordering(const Graph& g);

}  // namespace subsetmax
