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

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "subsetmax/graph.hpp"
#include "subsetmax/submodular.hpp"

namespace subsetmax {

// Dual variables built by the primal-dual algorithms: w are the auxiliary
// weights, y the packing duals, z the closure duals and mu = f(stack_final).
// The MWIS variant only fills y.
struct DualCertificate {
  Eigen::VectorXd w;
  Eigen::VectorXd y;
  Eigen::VectorXd z;
  double mu = 0.0;
};

// Bookkeeping of one preemptive greedy sweep. accepted lists every vertex
// that ever entered the solution, in processing order; conflicts[i] is the
// set it evicted on entry.
struct GreedyTrace {
  std::vector<Vertex> accepted;
  std::vector<VertexSet> conflicts;
};

struct RunResult {
  VertexSet output;
  double value = 0.0;
  // Survivors of the first phase (equal to output for the greedy variants).
  VertexSet stack_final;
  std::optional<DualCertificate> duals;
  std::optional<GreedyTrace> trace;
  std::int64_t oracle_calls = 0;
  std::optional<std::uint64_t> rng_seed;
};

enum class Regime {
  kMonotonePrimalDual,
  kNonnegPrimalDual,
  kGreedy,
  kRandomizedGreedy,
};

std::string_view regime_name(Regime regime);

struct AlgoParams {
  double beta = 1.0;
  double p = 0.5;  // push probability, non-monotone primal-dual only
  std::uint64_t seed = 0;
};

struct GreedyOptions {
  // Recompute every cached incremental value from its definition (with
  // uncounted oracle calls) and throw std::logic_error on disagreement.
  bool check_incremental_values = false;
};

// Single forward sweep; v is accepted when f_S(v) >= (1+beta) times the sum
// of the incremental values of its conflicts C = N(v) ∩ S, which are then
// evicted. Incremental values are taken with respect to og's ordering.
RunResult preemptive_greedy(const OrderedGraph& og, const SubmodularOracle& f, double beta,
                            const GreedyOptions& options = {});

// Keeps each vertex with probability 1/2 (coins in vertex-index order) and
// runs preemptive_greedy on the induced ordered subgraph.
RunResult randomized_preemptive_greedy(const OrderedGraph& og, const SubmodularOracle& f,
                                       double beta, std::uint64_t seed,
                                       const GreedyOptions& options = {});

// As above with the subsample given explicitly.
RunResult preemptive_greedy_on(const OrderedGraph& og, const SubmodularOracle& f,
                               double beta, const VertexSet& active,
                               const GreedyOptions& options = {});

// Two-phase stack algorithm for monotone f. Phase one pushes v when
// f_S(v) > (1+beta) w(C); phase two pops into a maximal independent set.
RunResult primal_dual_monotone(const OrderedGraph& og, const SubmodularOracle& f,
                               double beta);

// Non-monotone variant: a vertex passing the threshold is pushed only with
// probability p. One coin per vertex is drawn up front, in vertex-index order.
RunResult primal_dual_nonneg(const OrderedGraph& og, const SubmodularOracle& f, double beta,
                             double p, std::uint64_t seed);

// Stack algorithm for maximum weight independent set. Returns y in duals.
RunResult primal_dual_mwis(const OrderedGraph& og, const Eigen::VectorXd& weights);

AlgoParams default_params(int k, Regime regime);

// Proved worst-case ratio OPT / f(output) (or OPT / E f(output)).
double guarantee_factor(int k, const AlgoParams& params, Regime regime);

// Checks every dual constraint of the concave-closure LP (2^n subset rows and
// n backward-neighbour rows), nonnegativity, and mu = f(stack_final).
// Throws ResourceLimitError for n > cap.
bool verify_dual_feasibility_monotone(const RunResult& result, const OrderedGraph& og,
                                      const SubmodularOracle& f, double tol = 1e-9,
                                      int cap = 16);

}  // namespace subsetmax
