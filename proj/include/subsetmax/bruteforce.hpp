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
#include <functional>

#include "subsetmax/graph.hpp"
#include "subsetmax/submodular.hpp"

namespace subsetmax {

struct BruteForceResult {
  VertexSet best_set;
  double best_value = 0.0;
  std::int64_t sets_enumerated = 0;
};

inline constexpr int kEnumerationCap = 24;
inline constexpr int kBruteForceCap = 20;

// Calls visit once per independent set (including the empty set) and
// returns the number of sets visited.
std::int64_t enumerate_independent_sets(const Graph& g,
                                        const std::function<void(const VertexSet&)>& visit,
                                        int cap = kEnumerationCap);

// Exact max of f over independent sets; ties go to the lexicographically
// smallest set. When f declares itself monotone, branches whose best case
// f(S ∪ remaining candidates) is strictly below the incumbent are skipped,
// so sets_enumerated then counts only the visited sets.
BruteForceResult brute_force_opt(const Graph& g, const SubmodularOracle& f,
                                 int cap = kBruteForceCap);

}  // namespace subsetmax
