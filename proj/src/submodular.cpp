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

#include "subsetmax/submodular.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "subsetmax/errors.hpp"

namespace subsetmax {

namespace {

void check_members(const VertexSet& s, int n) {
  if (!s.empty() && (s.members().front() < 0 || s.members().back() >= n)) {
    throw std::out_of_range("set member outside ground set of size " + std::to_string(n));
  }
}

void check_cap(int n, int cap, const char* what) {
  if (n > cap || n > 62) {
    throw ResourceLimitError(std::string(what) + ": ground size " + std::to_string(n) +
                             " exceeds cap " + std::to_string(cap));
  }
}

}  // namespace

ModularFunction::ModularFunction(Eigen::VectorXd weights) : weights_(std::move(weights)) {
  if ((weights_.array() < 0.0).any()) throw std::invalid_argument("negative modular weight");
}

double ModularFunction::value(const VertexSet& s) const {
  check_members(s, ground_size());
  double total = 0.0;
  for (Vertex v : s) total += weights_[v];
  return total;
}

CoverageFunction::CoverageFunction(Eigen::VectorXd universe_weights,
                                   std::vector<std::vector<int>> covers)
    : universe_weights_(std::move(universe_weights)), covers_(std::move(covers)) {
  if ((universe_weights_.array() < 0.0).any()) {
    throw std::invalid_argument("negative universe weight");
  }
  for (const auto& cover : covers_) {
    for (int e : cover) {
      if (e < 0 || e >= universe_weights_.size()) {
        throw std::out_of_range("cover references unknown universe element " +
                                std::to_string(e));
      }
    }
  }
}

double CoverageFunction::value(const VertexSet& s) const {
  check_members(s, ground_size());
  std::vector<char> covered(universe_weights_.size(), 0);
  double total = 0.0;
  for (Vertex v : s) {
    for (int e : covers_[v]) {
      if (!covered[e]) {
        covered[e] = 1;
        total += universe_weights_[e];
      }
    }
  }
  return total;
}

CutFunction::CutFunction(int n, std::vector<WeightedEdge> edges)
    : n_(n), edges_(std::move(edges)) {
  for (const auto& e : edges_) {
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_) {
      throw std::out_of_range("cut edge endpoint out of range");
    }
    if (e.u == e.v) throw std::invalid_argument("cut edge is a self-loop");
    if (!(e.weight >= 0.0)) throw std::invalid_argument("negative cut edge weight");
  }
}

double CutFunction::value(const VertexSet& s) const {
  check_members(s, n_);
  double total = 0.0;
  for (const auto& e : edges_) {
    if (s.contains(e.u) != s.contains(e.v)) total += e.weight;
  }
  return total;
}

double marginal(const SubmodularOracle& f, const VertexSet& s, Vertex v) {
  if (s.contains(v)) throw std::invalid_argument("marginal: vertex already in set");
  return f.value(s.with(v)) - f.value(s);
}

double incremental_value(const SubmodularOracle& f, const VertexSet& s, Vertex v,
                         std::span<const int> positions) {
  if (!s.contains(v)) throw std::invalid_argument("incremental_value: vertex not in set");
  std::vector<Vertex> earlier;
  for (Vertex u : s) {
    if (positions[u] < positions[v]) earlier.push_back(u);
  }
  return marginal(f, VertexSet(std::move(earlier)), v);
}

void check_fractional_point(const FractionalPoint& x, int n) {
  if (x.size() != n) throw std::invalid_argument("fractional point has wrong dimension");
  if (!((x.array() >= 0.0) && (x.array() <= 1.0)).all()) {
    throw std::invalid_argument("fractional point outside [0,1]^n");
  }
}

double multilinear_exact(const SubmodularOracle& f, const FractionalPoint& x, int cap) {
  const int n = f.ground_size();
  check_cap(n, cap, "multilinear_exact");
  check_fractional_point(x, n);
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double prob = 1.0;
    for (int i = 0; i < n; ++i) prob *= (mask >> i & 1) ? x[i] : 1.0 - x[i];
    if (prob == 0.0) continue;
    total += prob * f.value(VertexSet::from_mask(mask));
  }
  return total;
}

double MonteCarloEstimate::std_error() const {
  return samples > 0 ? std_dev / std::sqrt(static_cast<double>(samples)) : 0.0;
}

VertexSet sample_set(const FractionalPoint& x, Rng& rng) {
  std::vector<Vertex> picked;
  for (Eigen::Index v = 0; v < x.size(); ++v) {
    if (rng.uniform() < x[v]) picked.push_back(static_cast<Vertex>(v));
  }
  return VertexSet(std::move(picked));
}

MonteCarloEstimate multilinear_estimate(const SubmodularOracle& f, const FractionalPoint& x,
                                        int samples, Rng& rng) {
  if (samples < 1) throw std::invalid_argument("multilinear_estimate: samples must be >= 1");
  check_fractional_point(x, f.ground_size());
  // Welford.
  double mean = 0.0;
  double m2 = 0.0;
  for (int t = 1; t <= samples; ++t) {
    const double value = f.value(sample_set(x, rng));
    const double delta = value - mean;
    mean += delta / t;
    m2 += delta * (value - mean);
  }
  MonteCarloEstimate est;
  est.mean = mean;
  est.samples = samples;
  est.std_dev = samples > 1 ? std::sqrt(m2 / (samples - 1)) : 0.0;
  return est;
}

std::vector<double> tabulate_values(const SubmodularOracle& f, int cap) {
  const int n = f.ground_size();
  check_cap(n, cap, "tabulate_values");
  std::vector<double> table(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
    table[mask] = f.value(VertexSet::from_mask(mask));
  }
  return table;
}

bool is_submodular_brute(const SubmodularOracle& f, double tol, int cap) {
  const int n = f.ground_size();
  check_cap(n, cap, "is_submodular_brute");
  const auto table = tabulate_values(f, cap);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t b = 0; b <= full; ++b) {
    for (std::uint64_t outside = full & ~b; outside != 0; outside &= outside - 1) {
      const std::uint64_t v = std::uint64_t{1} << std::countr_zero(outside);
      const double gain_b = table[b | v] - table[b];
      // Every submask a of b, including b itself and 0.
      for (std::uint64_t a = b;; a = (a - 1) & b) {
        if (table[a | v] - table[a] < gain_b - tol) return false;
        if (a == 0) break;
      }
    }
  }
  return true;
}

}  // namespace subsetmax
