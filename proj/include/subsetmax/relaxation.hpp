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
#include <vector>

#include "subsetmax/algorithms.hpp"
#include "subsetmax/graph.hpp"
#include "subsetmax/rng.hpp"
#include "subsetmax/submodular.hpp"

namespace subsetmax {

// { x in [0,1]^n : sum_{u in rows[v]} x_u <= k for every v }. Row v holds v
// itself plus its forward neighbours (ordered form) or out-neighbours
// (oriented form).
struct PackingPolytope {
  int n = 0;
  double k = 1.0;
  std::vector<VertexSet> rows;

  // n x n 0/1 constraint matrix.
  Eigen::MatrixXd matrix() const;
};

PackingPolytope build_polytope(const OrderedGraph& og);
PackingPolytope build_polytope(const OrientedGraph& dg);

// x in scale*Q: x >= 0, x <= scale, and every row total <= scale*k.
bool membership(const PackingPolytope& q, const FractionalPoint& x, double scale,
                double tol = 1e-12);

struct LpSolution {
  FractionalPoint x;
  double value = 0.0;
  // Objective of the dual solution read off the final tableau, after that
  // dual was checked for feasibility independently of the primal.
  double dual_bound = 0.0;
  Eigen::VectorXd duals;  // one per constraint: n packing rows, then n box rows
};

// max { c.x : x in scale*Q } by dense primal simplex with Bland's rule.
// Throws NumericalError when the primal/dual pair fails its own check.
LpSolution linear_maximize(const PackingPolytope& q, const Eigen::VectorXd& c, double scale);

struct MultilinearEval {
  enum class Mode { kAuto, kExact, kSampled };
  Mode mode = Mode::kAuto;
  int samples = 200;
  std::uint64_t seed = 0;

  static MultilinearEval exact() { return {Mode::kExact, 0, 0}; }
  static MultilinearEval sampled(int samples, std::uint64_t seed) {
    return {Mode::kSampled, samples, seed};
  }
};

// Exact evaluation is picked automatically up to this ground size.
inline constexpr int kAutoExactCap = 16;
inline constexpr int kDefaultGreedySteps = 100;

// Discretised continuous greedy: `steps` moves of size b/(k*steps) toward
// the maximiser over Q of the current gradient of F. Returns x in (b/k)Q.
FractionalPoint continuous_greedy(const SubmodularOracle& f, const PackingPolytope& q,
                                  double b, int steps = kDefaultGreedySteps,
                                  const MultilinearEval& eval = {});

// Measured variant: weights E[f_R(v)], and each coordinate moves by
// delta * y_v * (1 - x_v).
FractionalPoint measured_continuous_greedy(const SubmodularOracle& f,
                                           const PackingPolytope& q, double b,
                                           int steps = kDefaultGreedySteps,
                                           const MultilinearEval& eval = {});

// Keeps the members of R with no out-neighbour in R.
VertexSet crs_deterministic(const OrientedGraph& dg, const VertexSet& r);

// (1 - e^{-x}) / x, extended by continuity to 1 at x = 0.
double crs_keep_probability(double x);

// Thins R by keeping v with probability crs_keep_probability(x_v), then
// applies crs_deterministic. Throws std::invalid_argument if R is not inside
// support(x).
VertexSet crs_randomized(const OrientedGraph& dg, const FractionalPoint& x,
                         const VertexSet& r, Rng& rng);

enum class CrsScheme { kDeterministic, kRandomized };

struct PipelineOptions {
  std::optional<double> b;  // defaults to default_pipeline_b
  CrsScheme scheme = CrsScheme::kRandomized;
  int trials = 200;
  int steps = kDefaultGreedySteps;
  MultilinearEval eval;
  std::uint64_t seed = 0;
  // Defaults to f.monotone_hint(); picks continuous vs measured greedy.
  std::optional<bool> monotone;
};

// k ln(1 + 1/k) for monotone f, k/(k+1) otherwise.
double default_pipeline_b(int k, bool monotone);

// Ratio f(S') / OPT promised by the relaxation + rounding combination.
double pipeline_guarantee(int k, double b, CrsScheme scheme, bool monotone);

// Solves the relaxation over (b/k)Q, then rounds `trials` independent samples
// R(x) through the chosen scheme and keeps the best. The fractional point is
// returned in `fractional`.
struct PipelineResult {
  RunResult run;
  FractionalPoint fractional;
  double b = 0.0;
};

PipelineResult round_pipeline(const SubmodularOracle& f, const OrientedGraph& dg,
                              const PipelineOptions& options = {});
PipelineResult round_pipeline(const SubmodularOracle& f, const OrderedGraph& og,
                              const PipelineOptions& options = {});

}  // namespace subsetmax
