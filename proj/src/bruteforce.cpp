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

#include "subsetmax/bruteforce.hpp"

#include <bit>
#include <stdexcept>
#include <string>
#include <vector>

#include "subsetmax/errors.hpp"

namespace subsetmax {

namespace {

std::vector<std::uint64_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint64_t> masks(g.n(), 0);
  for (Vertex v = 0; v < g.n(); ++v) {
    for (Vertex u : g.neighbors(v)) masks[v] |= std::uint64_t{1} << u;
  }
  return masks;
}

// Backtracking over vertices 0..n-1: at depth v decide whether v joins.
// `free` holds the vertices > v that are not adjacent to the current set.
class Enumerator {
 public:
  Enumerator(const Graph& g, std::function<bool(std::uint64_t, std::uint64_t)> visit)
      : adj_(adjacency_masks(g)), n_(g.n()), visit_(std::move(visit)) {}

  std::int64_t run() {
    const std::uint64_t all = n_ == 0 ? 0 : (~std::uint64_t{0} >> (64 - n_));
    recurse(0, 0, all);
    return count_;
  }

 private:
  // Sets are visited in increasing-lexicographic order of their sorted
  // member lists: a set precedes its extensions, and extensions by smaller
  // vertices come first.
  void recurse(std::uint64_t set, int from, std::uint64_t free) {
    ++count_;
    if (!visit_(set, free)) return;
    for (int v = from; v < n_; ++v) {
      if (!(free >> v & 1)) continue;
      const std::uint64_t after = ~std::uint64_t{0} << (v + 1);
      recurse(set | std::uint64_t{1} << v, v + 1, free & ~adj_[v] & after);
    }
  }

  std::vector<std::uint64_t> adj_;
  int n_;
  std::function<bool(std::uint64_t, std::uint64_t)> visit_;
  std::int64_t count_ = 0;
};

}  // namespace

std::int64_t enumerate_independent_sets(const Graph& g,
                                        const std::function<void(const VertexSet&)>& visit,
                                        int cap) {
  if (g.n() > cap || g.n() > 63) {
    throw ResourceLimitError("enumerate_independent_sets: n=" + std::to_string(g.n()) +
                             " exceeds cap " + std::to_string(cap));
  }
  Enumerator e(g, [&](std::uint64_t set, std::uint64_t) {
    visit(VertexSet::from_mask(set));
    return true;
  });
  return e.run();
}

BruteForceResult brute_force_opt(const Graph& g, const SubmodularOracle& f, int cap) {
  if (g.n() > cap || g.n() > 63) {
    throw ResourceLimitError("brute_force_opt: n=" + std::to_string(g.n()) + " exceeds cap " +
                             std::to_string(cap));
  }
  if (f.ground_size() != g.n()) {
    throw std::invalid_argument("function ground set does not match graph");
  }
  const bool prune = f.monotone_hint();
  BruteForceResult best;
  bool have_best = false;
  Enumerator e(g, [&](std::uint64_t set, std::uint64_t free) {
    const VertexSet s = VertexSet::from_mask(set);
    const double value = f.value(s);
    // Visiting order is lexicographic, so a tie never displaces the incumbent.
    if (!have_best || value > best.best_value) {
      best.best_set = s;
      best.best_value = value;
      have_best = true;
    }
    if (prune && free != 0) {
      const double bound = f.value(VertexSet::from_mask(set | free));
      if (bound < best.best_value) return false;
    }
    return true;
  });
  best.sets_enumerated = e.run();
  return best;
}

}  // namespace subsetmax
