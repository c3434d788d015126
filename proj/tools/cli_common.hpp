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

// Pieces shared by the run and verify commands.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subsetmax/algorithms.hpp"
#include "subsetmax/instances.hpp"

namespace subsetmax::cli {

enum class Algo { kGreedy, kRandomizedGreedy, kPrimalDual, kPrimalDualNonneg, kMwis, kCrsDet, kCrsRand };

inline constexpr Algo kAllAlgos[] = {Algo::kGreedy,       Algo::kRandomizedGreedy,
                                     Algo::kPrimalDual,   Algo::kPrimalDualNonneg,
                                     Algo::kMwis,         Algo::kCrsDet,
                                     Algo::kCrsRand};

std::string_view algo_name(Algo algo);
Algo parse_algo(std::string_view name);
std::vector<std::string> algo_names();
bool is_randomized(Algo algo);

struct Overrides {
  std::optional<double> beta;
  std::optional<double> p;
  std::optional<double> b;
  std::optional<int> k;
  int rounds = 200;  // best-of count inside the rounding pipeline
  int steps = 100;   // continuous greedy steps
};

struct AlgoRun {
  RunResult run;
  std::string params;
  // Proved bound on OPT / f(output) when one applies to this instance.
  std::optional<double> guarantee;
};

// The instance graph with its ordering / orientation re-labelled with the
// effective k (the override when given).
int effective_k(const Instance& inst, const Overrides& o);
std::optional<OrderedGraph> effective_ordered(const Instance& inst, const Overrides& o);
OrientedGraph effective_oriented(const Instance& inst, const Overrides& o);

// Weights handed to the MWIS algorithm: the modular weights, or the singleton
// values f({v}) for other functions.
Eigen::VectorXd mwis_weights(const Instance& inst, const SubmodularOracle& f);

// Runs one algorithm. Throws std::invalid_argument when the algorithm does
// not apply to the instance or the parameters are inconsistent.
AlgoRun run_algorithm(const Instance& inst, Algo algo, const Overrides& o, std::uint64_t seed);

std::uint64_t trial_seed(std::uint64_t master, std::string_view instance, std::string_view algo,
                         std::uint64_t trial);

// Worker count: SUBSETMAX_THREADS when set to a positive integer, otherwise
// the hardware concurrency.
int worker_count();

// Calls fn(i) for i in [0, count) on up to worker_count() threads. The first
// exception thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

std::string format_number(double x);

}  // namespace subsetmax::cli
