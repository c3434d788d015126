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

// Test-only helpers: random graphs and exhaustive reference computations that
// are deliberately independent of the library's search code.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "subsetmax/graph.hpp"
#include "subsetmax/rng.hpp"
#include "subsetmax/submodular.hpp"

namespace subsetmax::testing {

inline Graph random_graph(int n, double p, Rng& rng) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) edges.push_back({u, v});
    }
  }
  return Graph(n, edges);
}

inline Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Graph(n, edges);
}

inline Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph(n, edges);
}

inline std::vector<Vertex> identity_order(int n) {
  std::vector<Vertex> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  return order;
}

// Independence test by checking every pair.
inline bool pairwise_independent(const Graph& g, std::uint64_t mask) {
  for (Vertex u = 0; u < g.n(); ++u) {
    if (!(mask >> u & 1)) continue;
    for (Vertex v = u + 1; v < g.n(); ++v) {
      if ((mask >> v & 1) && g.adjacent(u, v)) return false;
    }
  }
  return true;
}

inline int alpha_reference(const Graph& g) {
  int best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.n()); ++mask) {
    if (pairwise_independent(g, mask)) best = std::max(best, std::popcount(mask));
  }
  return best;
}

struct Optimum {
  VertexSet set;
  double value = 0.0;
  std::int64_t independent_sets = 0;
};

// max f over independent sets by scanning every subset; ties keep the
// lexicographically smallest member list.
inline Optimum optimum_reference(const Graph& g, const SubmodularOracle& f) {
  Optimum best;
  bool have = false;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.n()); ++mask) {
    if (!pairwise_independent(g, mask)) continue;
    ++best.independent_sets;
    const VertexSet s = VertexSet::from_mask(mask);
    const double value = f.value(s);
    if (!have || value > best.value || (value == best.value && s < best.set)) {
      best.set = s;
      best.value = value;
      have = true;
    }
  }
  return best;
}

}  // namespace subsetmax::testing
