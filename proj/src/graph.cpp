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

#include "subsetmax/graph.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "subsetmax/errors.hpp"

namespace subsetmax {

namespace {

std::vector<Vertex> sorted_unique(std::vector<Vertex> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

// Adjacency as bitmasks; requires n <= 64.
std::vector<std::uint64_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint64_t> masks(g.n(), 0);
  for (Vertex v = 0; v < g.n(); ++v) {
    for (Vertex u : g.neighbors(v)) masks[v] |= bit(u);
  }
  return masks;
}

class AlphaSearch {
 public:
  explicit AlphaSearch(std::vector<std::uint64_t> adj) : adj_(std::move(adj)) {}

  int run() {
    const std::uint64_t all =
        adj_.size() == 64 ? ~std::uint64_t{0} : bit(static_cast<int>(adj_.size())) - 1;
    search(all, 0);
    return best_;
  }

 private:
  // Greedy partition of `cand` into cliques; alpha(G[cand]) <= #cliques.
  int clique_cover_bound(std::uint64_t cand) const {
    int cliques = 0;
    while (cand != 0) {
      const int u = std::countr_zero(cand);
      std::uint64_t clique = bit(u);
      std::uint64_t extend = cand & adj_[u];
      while (extend != 0) {
        const int w = std::countr_zero(extend);
        clique |= bit(w);
        extend &= adj_[w];
      }
      cand &= ~clique;
      ++cliques;
    }
    return cliques;
  }

  void search(std::uint64_t cand, int current) {
    if (cand == 0) {
      best_ = std::max(best_, current);
      return;
    }
    if (current + clique_cover_bound(cand) <= best_) return;
    int pivot = -1;
    int pivot_degree = -1;
    for (std::uint64_t rest = cand; rest != 0; rest &= rest - 1) {
      const int u = std::countr_zero(rest);
      const int d = std::popcount(adj_[u] & cand);
      if (d > pivot_degree) {
        pivot = u;
        pivot_degree = d;
      }
    }
    if (pivot_degree == 0) {
      best_ = std::max(best_, current + std::popcount(cand));
      return;
    }
    search(cand & ~adj_[pivot] & ~bit(pivot), current + 1);
    search(cand & ~bit(pivot), current);
  }

  std::vector<std::uint64_t> adj_;
  int best_ = 0;
};

}  // namespace

VertexSet::VertexSet(std::initializer_list<Vertex> members)
    : members_(sorted_unique(std::vector<Vertex>(members))) {}

VertexSet::VertexSet(std::vector<Vertex> members)
    : members_(sorted_unique(std::move(members))) {}

VertexSet VertexSet::from_mask(std::uint64_t mask) {
  VertexSet s;
  for (; mask != 0; mask &= mask - 1) s.members_.push_back(std::countr_zero(mask));
  return s;
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

VertexSet VertexSet::with(Vertex v) const {
  VertexSet out = *this;
  auto it = std::lower_bound(out.members_.begin(), out.members_.end(), v);
  if (it == out.members_.end() || *it != v) out.members_.insert(it, v);
  return out;
}

VertexSet VertexSet::without(Vertex v) const {
  VertexSet out = *this;
  auto it = std::lower_bound(out.members_.begin(), out.members_.end(), v);
  if (it != out.members_.end() && *it == v) out.members_.erase(it);
  return out;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

std::uint64_t VertexSet::to_mask() const {
  std::uint64_t mask = 0;
  for (Vertex v : members_) {
    if (v < 0 || v >= 64) throw std::out_of_range("vertex does not fit in a 64-bit mask");
    mask |= bit(v);
  }
  return mask;
}

Graph::Graph(int n, std::span<const Edge> edges) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  adjacency_.resize(n);
  for (const Edge& e : edges) {
    check_vertex(e.u);
    check_vertex(e.v);
    if (e.u == e.v) {
      throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    }
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw std::invalid_argument("repeated edge");
    }
  }
  edge_count_ = edges.size();
}

void Graph::check_vertex(Vertex v) const {
  if (v < 0 || v >= n()) {
    throw std::out_of_range("vertex " + std::to_string(v) + " out of range for n=" +
                            std::to_string(n()));
  }
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  check_vertex(v);
  return adjacency_[v];
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto nbrs = neighbors(u);
  check_vertex(v);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < n(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

Graph induced_subgraph(const Graph& g, const VertexSet& keep) {
  std::vector<int> relabel(g.n(), -1);
  int next = 0;
  for (Vertex v : keep) {
    g.check_vertex(v);
    relabel[v] = next++;
  }
  std::vector<Edge> edges;
  for (Vertex u : keep) {
    for (Vertex v : g.neighbors(u)) {
      if (u < v && relabel[v] >= 0) edges.push_back({relabel[u], relabel[v]});
    }
  }
  return Graph(next, edges);
}

OrderedGraph::OrderedGraph(Graph graph, std::vector<Vertex> order, int k)
    : graph_(std::move(graph)), order_(std::move(order)), k_(k) {
  if (k_ < 1) throw std::invalid_argument("k must be at least 1");
  const int n = graph_.n();
  if (static_cast<int>(order_.size()) != n) {
    throw std::invalid_argument("ordering length differs from vertex count");
  }
  position_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    const Vertex v = order_[i];
    graph_.check_vertex(v);
    if (position_[v] != -1) {
      throw std::invalid_argument("ordering repeats vertex " + std::to_string(v));
    }
    position_[v] = i;
  }
}

OrientedGraph::OrientedGraph(Graph graph, std::span<const Edge> arcs, int k)
    : graph_(std::move(graph)), out_(graph_.n()), k_(k) {
  if (k_ < 1) throw std::invalid_argument("k must be at least 1");
  for (const Edge& a : arcs) {
    if (!graph_.adjacent(a.u, a.v)) {
      throw std::invalid_argument("arc (" + std::to_string(a.u) + "," +
                                  std::to_string(a.v) + ") is not an edge");
    }
    out_[a.u].push_back(a.v);
  }
  for (auto& list : out_) std::sort(list.begin(), list.end());
  for (Vertex u = 0; u < graph_.n(); ++u) {
    if (std::adjacent_find(out_[u].begin(), out_[u].end()) != out_[u].end()) {
      throw std::invalid_argument("repeated arc");
    }
  }
  if (arcs.size() != graph_.edge_count()) {
    throw std::invalid_argument("orientation must cover every edge exactly once");
  }
  for (const Edge& a : arcs) {
    if (has_arc(a.v, a.u)) {
      throw std::invalid_argument("edge oriented in both directions");
    }
  }
}

std::span<const Vertex> OrientedGraph::out_neighbors(Vertex v) const {
  graph_.check_vertex(v);
  return out_[v];
}

bool OrientedGraph::has_arc(Vertex u, Vertex v) const {
  const auto out = out_neighbors(u);
  return std::binary_search(out.begin(), out.end(), v);
}

std::vector<Edge> OrientedGraph::arcs() const {
  std::vector<Edge> out;
  for (Vertex u = 0; u < n(); ++u) {
    for (Vertex v : out_[u]) out.push_back({u, v});
  }
  return out;
}

OrientedGraph orient_by_order(const OrderedGraph& og) {
  std::vector<Edge> arcs;
  for (const Edge& e : og.graph().edges()) {
    arcs.push_back(og.before(e.u, e.v) ? e : Edge{e.v, e.u});
  }
  return OrientedGraph(og.graph(), arcs, og.k());
}

bool is_independent(const Graph& g, const VertexSet& s) {
  for (Vertex v : s) g.check_vertex(v);
  for (Vertex v : s) {
    for (Vertex u : g.neighbors(v)) {
      if (u > v && s.contains(u)) return false;
    }
  }
  return true;
}

VertexSet forward_neighbors(const OrderedGraph& og, Vertex v) {
  std::vector<Vertex> out;
  for (Vertex u : og.graph().neighbors(v)) {
    if (og.before(v, u)) out.push_back(u);
  }
  return VertexSet(std::move(out));
}

VertexSet backward_neighbors(const OrderedGraph& og, Vertex v) {
  std::vector<Vertex> out;
  for (Vertex u : og.graph().neighbors(v)) {
    if (og.before(u, v)) out.push_back(u);
  }
  return VertexSet(std::move(out));
}

int alpha_exact(const Graph& g, int cap) {
  if (g.n() > cap || g.n() > 64) {
    throw ResourceLimitError("alpha_exact: n=" + std::to_string(g.n()) +
                             " exceeds cap " + std::to_string(std::min(cap, 64)));
  }
  if (g.n() == 0) return 0;
  return AlphaSearch(adjacency_masks(g)).run();
}

int alpha_by_enumeration(const Graph& g) {
  if (g.n() > 20) throw ResourceLimitError("alpha_by_enumeration: n exceeds 20");
  const auto adj = adjacency_masks(g);
  int best = 0;
  for (std::uint64_t mask = 0; mask < bit(g.n()); ++mask) {
    bool independent = true;
    for (std::uint64_t rest = mask; rest != 0 && independent; rest &= rest - 1) {
      independent = (adj[std::countr_zero(rest)] & mask) == 0;
    }
    if (independent) best = std::max(best, std::popcount(mask));
  }
  return best;
}

namespace {

bool neighborhood_within(const Graph& g, const VertexSet& hood, int k, int cap) {
  if (static_cast<int>(hood.size()) <= k) return true;
  if (static_cast<int>(hood.size()) > cap) {
    throw ResourceLimitError("neighbourhood of size " + std::to_string(hood.size()) +
                             " exceeds cap " + std::to_string(cap));
  }
  return alpha_exact(induced_subgraph(g, hood), cap) <= k;
}

}  // namespace

bool verify_inductive_k_independence(const OrderedGraph& og, int neighborhood_cap) {
  for (Vertex v = 0; v < og.n(); ++v) {
    if (!neighborhood_within(og.graph(), forward_neighbors(og, v), og.k(),
                             neighborhood_cap)) {
      return false;
    }
  }
  return true;
}

bool verify_k_perfect_orientation(const OrientedGraph& dg, int neighborhood_cap) {
  for (Vertex v = 0; v < dg.n(); ++v) {
    const auto out = dg.out_neighbors(v);
    const VertexSet hood(std::vector<Vertex>(out.begin(), out.end()));
    if (!neighborhood_within(dg.graph(), hood, dg.k(), neighborhood_cap)) return false;
  }
  return true;
}

OrderedGraph degeneracy_ordering(const Graph& g) {
  const int n = g.n();
  std::vector<int> degree(n);
  std::vector<char> removed(n, 0);
  for (Vertex v = 0; v < n; ++v) degree[v] = g.degree(v);
  std::vector<Vertex> order;
  order.reserve(n);
  int degeneracy = 0;
  for (int step = 0; step < n; ++step) {
    Vertex pick = -1;
    for (Vertex v = 0; v < n; ++v) {
      if (!removed[v] && (pick < 0 || degree[v] < degree[pick])) pick = v;
    }
    degeneracy = std::max(degeneracy, degree[pick]);
    removed[pick] = 1;
    order.push_back(pick);
    for (Vertex u : g.neighbors(pick)) {
      if (!removed[u]) --degree[u];
    }
  }
  return OrderedGraph(g, std::move(order), std::max(1, degeneracy));
}

}  // namespace subsetmax
