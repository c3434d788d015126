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
#include <atomic>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "subsetmax/graph.hpp"
#include "subsetmax/rng.hpp"

namespace subsetmax {

// x in [0,1]^V.
using FractionalPoint = Eigen::VectorXd;

// Value oracle for a set function f : 2^V -> R+ with f(empty) = 0.
// Implementations are immutable and may be queried concurrently.
class SubmodularOracle {
 public:
  virtual ~SubmodularOracle() = default;
  virtual int ground_size() const = 0;
  virtual double value(const VertexSet& s) const = 0;
  // Declared by the constructor, never checked.
  virtual bool monotone_hint() const { return false; }
};

// f(S) = sum of w_v over S.
class ModularFunction final : public SubmodularOracle {
 public:
  explicit ModularFunction(Eigen::VectorXd weights);

  int ground_size() const override { return static_cast<int>(weights_.size()); }
  double value(const VertexSet& s) const override;
  bool monotone_hint() const override { return true; }
  const Eigen::VectorXd& weights() const { return weights_; }

 private:
  Eigen::VectorXd weights_;
};

// f(S) = total weight of the universe elements covered by S.
class CoverageFunction final : public SubmodularOracle {
 public:
  CoverageFunction(Eigen::VectorXd universe_weights, std::vector<std::vector<int>> covers);

  int ground_size() const override { return static_cast<int>(covers_.size()); }
  double value(const VertexSet& s) const override;
  bool monotone_hint() const override { return true; }
  const Eigen::VectorXd& universe_weights() const { return universe_weights_; }
  const std::vector<std::vector<int>>& covers() const { return covers_; }

 private:
  Eigen::VectorXd universe_weights_;
  std::vector<std::vector<int>> covers_;
};

struct WeightedEdge {
  Vertex u;
  Vertex v;
  double weight;
};

// f(S) = weight of edges with exactly one endpoint in S. Non-monotone and
// symmetric.
class CutFunction final : public SubmodularOracle {
 public:
  CutFunction(int n, std::vector<WeightedEdge> edges);

  int ground_size() const override { return n_; }
  double value(const VertexSet& s) const override;
  const std::vector<WeightedEdge>& edges() const { return edges_; }

 private:
  int n_;
  std::vector<WeightedEdge> edges_;
};

// Wraps an arbitrary callable; mostly useful in tests.
class LambdaOracle final : public SubmodularOracle {
 public:
  LambdaOracle(int n, std::function<double(const VertexSet&)> fn, bool monotone = false)
      : n_(n), fn_(std::move(fn)), monotone_(monotone) {}

  int ground_size() const override { return n_; }
  double value(const VertexSet& s) const override { return fn_(s); }
  bool monotone_hint() const override { return monotone_; }

 private:
  int n_;
  std::function<double(const VertexSet&)> fn_;
  bool monotone_;
};

// Counts value queries; one instance per algorithm run.
class CountingOracle final : public SubmodularOracle {
 public:
  explicit CountingOracle(const SubmodularOracle& inner) : inner_(inner) {}

  int ground_size() const override { return inner_.ground_size(); }
  double value(const VertexSet& s) const override {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return inner_.value(s);
  }
  bool monotone_hint() const override { return inner_.monotone_hint(); }
  std::int64_t calls() const { return calls_.load(std::memory_order_relaxed); }
  const SubmodularOracle& inner() const { return inner_; }

 private:
  const SubmodularOracle& inner_;
  mutable std::atomic<std::int64_t> calls_{0};
};

inline constexpr int kMultilinearExactCap = 20;
inline constexpr int kSubmodularityCheckCap = 12;

// f(s + v) - f(s). Throws std::invalid_argument if v is already in s.
double marginal(const SubmodularOracle& f, const VertexSet& s, Vertex v);

// Marginal of v against the members of s that precede it, where positions[u]
// is u's rank in the ground-set ordering. Requires v in s.
double incremental_value(const SubmodularOracle& f, const VertexSet& s, Vertex v,
                         std::span<const int> positions);

// F(x) by enumerating all 2^n subsets.
double multilinear_exact(const SubmodularOracle& f, const FractionalPoint& x,
                         int cap = kMultilinearExactCap);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_dev = 0.0;  // sample standard deviation of f(R)
  int samples = 0;
  double std_error() const;
};

// Sample mean of f(R(x)).
MonteCarloEstimate multilinear_estimate(const SubmodularOracle& f, const FractionalPoint& x,
                                        int samples, Rng& rng);

// R(x): each v independently with probability x_v, drawn in vertex order.
VertexSet sample_set(const FractionalPoint& x, Rng& rng);

// Checks f(A+v) - f(A) >= f(B+v) - f(B) - tol over every A subset of B and
// v outside B.
bool is_submodular_brute(const SubmodularOracle& f, double tol = 1e-9,
                         int cap = kSubmodularityCheckCap);

// f evaluated on every subset, indexed by bitmask. Costs 2^n oracle calls.
std::vector<double> tabulate_values(const SubmodularOracle& f, int cap);

void check_fractional_point(const FractionalPoint& x, int n);

}  // namespace subsetmax
