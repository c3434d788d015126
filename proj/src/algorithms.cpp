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

#include "subsetmax/algorithms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "subsetmax/errors.hpp"
#include "subsetmax/exact_sum.hpp"

namespace subsetmax {

namespace {

void check_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("beta must be a positive finite number");
  }
}

void check_ground(const OrderedGraph& og, const SubmodularOracle& f) {
  if (f.ground_size() != og.n()) {
    throw std::invalid_argument("function ground set size " + std::to_string(f.ground_size()) +
                                " differs from graph size " + std::to_string(og.n()));
  }
}

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// The current greedy solution. Members are kept in processing order, which is
// also their order in the instance ordering because every newcomer comes
// after all current members. prefix_[j] caches f(first j+1 members); an
// eviction invalidates the prefixes at and beyond its position and they are
// re-queried only when an incremental value there is needed. The last prefix,
// f(S), is always valid.
class GreedySolution {
 public:
  GreedySolution(const SubmodularOracle& f, int n) : f_(f), index_(n, -1) {}

  double value() const { return members_.empty() ? 0.0 : *prefix_.back(); }
  bool contains(Vertex v) const { return index_[v] >= 0; }
  const std::vector<Vertex>& members() const { return members_; }

  VertexSet as_set() const { return VertexSet(members_); }

  // Incremental value of a member with respect to the members before it.
  double incremental(Vertex v) {
    const std::size_t j = static_cast<std::size_t>(index_[v]);
    return prefix(j) - (j == 0 ? 0.0 : prefix(j - 1));
  }

  // S <- (S \ evicted) + v, where f of the result is already known.
  void replace(const VertexSet& evicted, Vertex v, double new_value) {
    if (!evicted.empty()) {
      std::size_t first = members_.size();
      for (Vertex u : evicted) first = std::min(first, static_cast<std::size_t>(index_[u]));
      std::vector<Vertex> kept;
      std::vector<std::optional<double>> kept_prefix;
      for (std::size_t j = 0; j < members_.size(); ++j) {
        const Vertex u = members_[j];
        if (evicted.contains(u)) {
          index_[u] = -1;
          continue;
        }
        index_[u] = static_cast<int>(kept.size());
        kept.push_back(u);
        kept_prefix.push_back(j < first ? prefix_[j] : std::nullopt);
      }
      members_ = std::move(kept);
      prefix_ = std::move(kept_prefix);
    }
    index_[v] = static_cast<int>(members_.size());
    members_.push_back(v);
    prefix_.push_back(new_value);
  }

 private:
  double prefix(std::size_t j) {
    if (!prefix_[j]) {
      prefix_[j] = f_.value(VertexSet(std::vector<Vertex>(
          members_.begin(), members_.begin() + static_cast<std::ptrdiff_t>(j) + 1)));
    }
    return *prefix_[j];
  }

  const SubmodularOracle& f_;
  std::vector<Vertex> members_;
  std::vector<std::optional<double>> prefix_;
  std::vector<int> index_;
};

RunResult greedy_sweep(const OrderedGraph& og, const SubmodularOracle& f, double beta,
                       const std::vector<char>& active, const GreedyOptions& options) {
  check_beta(beta);
  check_ground(og, f);
  CountingOracle counted(f);
  GreedySolution solution(counted, og.n());
  GreedyTrace trace;

  for (Vertex v : og.order()) {
    if (!active[v]) continue;
    std::vector<Vertex> conflict_list;
    for (Vertex u : og.graph().neighbors(v)) {
      if (solution.contains(u)) conflict_list.push_back(u);
    }
    const VertexSet conflicts(std::move(conflict_list));

    const double with_v = counted.value(solution.as_set().with(v));
    const double gain = with_v - solution.value();
    double conflict_value = 0.0;
    for (Vertex u : conflicts) {
      const double nu = solution.incremental(u);
      if (options.check_incremental_values) {
        const double expected = incremental_value(f, solution.as_set(), u, og.positions());
        if (!close(nu, expected, 1e-9)) {
          throw std::logic_error("cached incremental value of vertex " + std::to_string(u) +
                                 " disagrees with its definition");
        }
      }
      conflict_value += nu;
    }
    if (gain >= (1.0 + beta) * conflict_value) {
      double new_value = with_v;
      if (!conflicts.empty()) {
        std::vector<Vertex> rest;
        for (Vertex u : solution.members()) {
          if (!conflicts.contains(u)) rest.push_back(u);
        }
        new_value = counted.value(VertexSet(std::move(rest)).with(v));
      }
      solution.replace(conflicts, v, new_value);
      trace.accepted.push_back(v);
      trace.conflicts.push_back(conflicts);
    }
  }

  RunResult result;
  result.output = solution.as_set();
  result.stack_final = result.output;
  result.value = counted.value(result.output);
  result.trace = std::move(trace);
  result.oracle_calls = counted.calls();
  return result;
}

RunResult primal_dual_core(const OrderedGraph& og, const SubmodularOracle& f, double beta,
                           const std::vector<char>* coins) {
  check_beta(beta);
  check_ground(og, f);
  const int n = og.n();
  CountingOracle counted(f);
  DualCertificate duals;
  duals.w = Eigen::VectorXd::Zero(n);
  duals.y = Eigen::VectorXd::Zero(n);
  duals.z = Eigen::VectorXd::Zero(n);

  std::vector<Vertex> stack;
  std::vector<char> in_stack(n, 0);
  VertexSet stacked;
  double stack_value = 0.0;

  for (Vertex v : og.order()) {
    double conflict_weight = 0.0;
    for (Vertex u : og.graph().neighbors(v)) {
      if (in_stack[u]) conflict_weight += duals.w[u];
    }
    const VertexSet grown = stacked.with(v);
    const double grown_value = counted.value(grown);
    const double gain = grown_value - stack_value;
    const bool passes = gain > (1.0 + beta) * conflict_weight;
    if (passes && (coins == nullptr || (*coins)[v])) {
      stack.push_back(v);
      in_stack[v] = 1;
      stacked = grown;
      stack_value = grown_value;
      duals.w[v] = gain - conflict_weight;
      duals.y[v] = (1.0 + beta) * duals.w[v];
    } else {
      duals.z[v] = gain;
    }
  }
  duals.mu = stack_value;

  std::vector<char> taken(n, 0);
  std::vector<Vertex> output;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    const auto nbrs = og.graph().neighbors(v);
    if (std::none_of(nbrs.begin(), nbrs.end(), [&](Vertex u) { return taken[u] != 0; })) {
      taken[v] = 1;
      output.push_back(v);
    }
  }

  RunResult result;
  result.output = VertexSet(std::move(output));
  result.stack_final = stacked;
  result.value = counted.value(result.output);
  result.duals = std::move(duals);
  result.oracle_calls = counted.calls();
  return result;
}

}  // namespace

std::string_view regime_name(Regime regime) {
  switch (regime) {
    case Regime::kMonotonePrimalDual:
      return "monotone-primal-dual";
    case Regime::kNonnegPrimalDual:
      return "nonneg-primal-dual";
    case Regime::kGreedy:
      return "greedy";
    case Regime::kRandomizedGreedy:
      return "randomized-greedy";
  }
  return "unknown";
}

RunResult preemptive_greedy(const OrderedGraph& og, const SubmodularOracle& f, double beta,
                            const GreedyOptions& options) {
  return greedy_sweep(og, f, beta, std::vector<char>(og.n(), 1), options);
}

RunResult preemptive_greedy_on(const OrderedGraph& og, const SubmodularOracle& f,
                               double beta, const VertexSet& active,
                               const GreedyOptions& options) {
  std::vector<char> mask(og.n(), 0);
  for (Vertex v : active) {
    og.graph().check_vertex(v);
    mask[v] = 1;
  }
  return greedy_sweep(og, f, beta, mask, options);
}

RunResult randomized_preemptive_greedy(const OrderedGraph& og, const SubmodularOracle& f,
                                       double beta, std::uint64_t seed,
                                       const GreedyOptions& options) {
  Rng rng(seed);
  std::vector<char> mask(og.n(), 0);
  for (Vertex v = 0; v < og.n(); ++v) mask[v] = rng.bernoulli(0.5) ? 1 : 0;
  RunResult result = greedy_sweep(og, f, beta, mask, options);
  result.rng_seed = seed;
  return result;
}

RunResult primal_dual_monotone(const OrderedGraph& og, const SubmodularOracle& f,
                               double beta) {
  return primal_dual_core(og, f, beta, nullptr);
}

RunResult primal_dual_nonneg(const OrderedGraph& og, const SubmodularOracle& f, double beta,
                             double p, std::uint64_t seed) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in (0,1)");
  Rng rng(seed);
  std::vector<char> coins(og.n(), 0);
  for (Vertex v = 0; v < og.n(); ++v) coins[v] = rng.bernoulli(p) ? 1 : 0;
  RunResult result = primal_dual_core(og, f, beta, &coins);
  result.rng_seed = seed;
  return result;
}

RunResult primal_dual_mwis(const OrderedGraph& og, const Eigen::VectorXd& weights) {
  const int n = og.n();
  if (weights.size() != n) throw std::invalid_argument("weight vector has wrong length");
  if ((weights.array() < 0.0).any()) throw std::invalid_argument("negative vertex weight");

  DualCertificate duals;
  duals.w = Eigen::VectorXd::Zero(n);
  duals.y = Eigen::VectorXd::Zero(n);
  duals.z = Eigen::VectorXd::Zero(n);
  std::vector<Vertex> stack;
  std::vector<double> terms;
  for (Vertex v : og.order()) {
    terms.clear();
    for (Vertex u : og.graph().neighbors(v)) {
      if (og.before(u, v)) terms.push_back(duals.y[u]);
    }
    const double w = weights[v];
    if (compare_sums({&w, 1}, terms) <= 0) continue;
    // Round y_v down so that y_v plus the earlier duals never exceeds w_v.
    const double y = difference_rounded_down({&w, 1}, terms);
    if (y <= 0.0) continue;
    duals.y[v] = y;
    stack.push_back(v);
  }

  RunResult result;
  result.stack_final = VertexSet(stack);
  std::vector<char> taken(n, 0);
  std::vector<Vertex> output;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    const auto nbrs = og.graph().neighbors(v);
    if (std::none_of(nbrs.begin(), nbrs.end(), [&](Vertex u) { return taken[u] != 0; })) {
      taken[v] = 1;
      output.push_back(v);
    }
  }
  result.output = VertexSet(std::move(output));
  for (Vertex v : result.output) result.value += weights[v];
  result.duals = std::move(duals);
  return result;
}

AlgoParams default_params(int k, Regime regime) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  AlgoParams params;
  switch (regime) {
    case Regime::kMonotonePrimalDual:
      params.beta = 1.0 / std::sqrt(static_cast<double>(k));
      break;
    case Regime::kGreedy:
    case Regime::kRandomizedGreedy:
      params.beta = std::sqrt(1.0 + 1.0 / k);
      break;
    case Regime::kNonnegPrimalDual:
      // Minimiser of k/p + 1/(1-2p); beta couples through (1-p)/p = 1+beta.
      params.p = 1.0 / (std::sqrt(2.0 / k) + 2.0);
      params.beta = (1.0 - 2.0 * params.p) / params.p;
      break;
  }
  return params;
}

double guarantee_factor(int k, const AlgoParams& params, Regime regime) {
  const double b = params.beta;
  switch (regime) {
    case Regime::kMonotonePrimalDual:
      return (1.0 + b) * (1.0 / b + k);
    case Regime::kGreedy:
      return (k * (1.0 + b) + 1.0) * (1.0 + 1.0 / b);
    case Regime::kRandomizedGreedy:
      return 4.0 * (k * (1.0 + b) + 1.0) * (1.0 + 1.0 / b);
    case Regime::kNonnegPrimalDual: {
      const double p = params.p;
      const double inflation = std::max((1.0 - p) / p, 1.0 + b);
      return (k * inflation + (1.0 + b) / b) / (1.0 - p);
    }
  }
  return std::numeric_limits<double>::infinity();
}

bool verify_dual_feasibility_monotone(const RunResult& result, const OrderedGraph& og,
                                      const SubmodularOracle& f, double tol, int cap) {
  const int n = og.n();
  if (n > cap) {
    throw ResourceLimitError("verify_dual_feasibility_monotone: n=" + std::to_string(n) +
                             " exceeds cap " + std::to_string(cap));
  }
  if (!result.duals) return false;
  const DualCertificate& d = *result.duals;
  if (d.w.size() != n || d.y.size() != n || d.z.size() != n) return false;
  if ((d.w.array() < -tol).any() || (d.y.array() < -tol).any() ||
      (d.z.array() < -tol).any()) {
    return false;
  }
  if (!close(d.mu, f.value(result.stack_final), tol)) return false;

  for (Vertex v = 0; v < n; ++v) {
    double lhs = d.y[v];
    for (Vertex u : og.graph().neighbors(v)) {
      if (og.before(u, v)) lhs += d.y[u];
    }
    if (lhs < d.z[v] - tol * std::max(1.0, std::abs(d.z[v]))) return false;
  }

  const auto table = tabulate_values(f, cap);
  std::vector<double> z_sum(table.size(), 0.0);
  for (std::uint64_t mask = 1; mask < table.size(); ++mask) {
    z_sum[mask] = z_sum[mask & (mask - 1)] + d.z[std::countr_zero(mask)];
  }
  for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
    if (d.mu + z_sum[mask] < table[mask] - tol * std::max(1.0, std::abs(table[mask]))) {
      return false;
    }
  }
  return true;
}

}  // namespace subsetmax
