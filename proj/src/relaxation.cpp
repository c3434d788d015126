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

#include "subsetmax/relaxation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "subsetmax/errors.hpp"

namespace subsetmax {

namespace {

constexpr double kPivotEps = 1e-11;

PackingPolytope polytope_from_rows(int n, int k, std::vector<VertexSet> rows) {
  PackingPolytope q;
  q.n = n;
  q.k = static_cast<double>(k);
  q.rows = std::move(rows);
  return q;
}

// Computes the weights continuous greedy maximises over Q at the current x:
// the partial derivatives of F (plain) or E[f(R+v) - f(R)] (measured).
class MarginalWeights {
 public:
  MarginalWeights(const SubmodularOracle& f, const MultilinearEval& eval)
      : f_(f), rng_(eval.seed), samples_(eval.samples) {
    const int n = f.ground_size();
    exact_ = eval.mode == MultilinearEval::Mode::kExact ||
             (eval.mode == MultilinearEval::Mode::kAuto && n <= kAutoExactCap);
    if (exact_) {
      table_ = tabulate_values(f, kMultilinearExactCap);
    } else if (samples_ < 1) {
      throw std::invalid_argument("sampled evaluation needs at least one sample");
    }
  }

  Eigen::VectorXd operator()(const FractionalPoint& x, bool measured) {
    return exact_ ? exact(x, measured) : sampled(x, measured);
  }

 private:
  Eigen::VectorXd exact(const FractionalPoint& x, bool measured) const {
    const int n = static_cast<int>(x.size());
    const std::size_t count = table_.size();
    std::vector<double> prob(count, 1.0);
    // prob[S] = prod_{i in S} x_i prod_{i not in S} (1 - x_i).
    for (std::size_t mask = 0; mask < count; ++mask) {
      double p = 1.0;
      for (int i = 0; i < n; ++i) p *= (mask >> i & 1) ? x[i] : 1.0 - x[i];
      prob[mask] = p;
    }
    Eigen::VectorXd weights = Eigen::VectorXd::Zero(n);
    for (std::size_t mask = 0; mask < count; ++mask) {
      for (int v = 0; v < n; ++v) {
        const std::size_t bit = std::size_t{1} << v;
        if (mask & bit) continue;
        const double gain = table_[mask | bit] - table_[mask];
        const double weight = measured ? prob[mask] : prob[mask] + prob[mask | bit];
        weights[v] += weight * gain;
      }
    }
    return weights;
  }

  Eigen::VectorXd sampled(const FractionalPoint& x, bool measured) {
    const int n = static_cast<int>(x.size());
    Eigen::VectorXd weights = Eigen::VectorXd::Zero(n);
    for (int t = 0; t < samples_; ++t) {
      const VertexSet r = sample_set(x, rng_);
      const double base = f_.value(r);
      for (Vertex v = 0; v < n; ++v) {
        if (r.contains(v)) {
          if (!measured) weights[v] += base - f_.value(r.without(v));
        } else {
          weights[v] += f_.value(r.with(v)) - base;
        }
      }
    }
    return weights / samples_;
  }

  const SubmodularOracle& f_;
  Rng rng_;
  int samples_;
  bool exact_ = false;
  std::vector<double> table_;
};

// Largest factor t <= 1 with t*x in scale*Q.
double feasibility_factor(const PackingPolytope& q, const FractionalPoint& x, double scale) {
  double factor = 1.0;
  const double box = scale;
  const double rhs = scale * q.k;
  for (int v = 0; v < q.n; ++v) {
    if (x[v] > box) factor = std::min(factor, box / x[v]);
    double row = 0.0;
    for (Vertex u : q.rows[v]) row += x[u];
    if (row > rhs) factor = std::min(factor, rhs / row);
  }
  return factor;
}

FractionalPoint run_greedy(const SubmodularOracle& f, const PackingPolytope& q, double b,
                           int steps, const MultilinearEval& eval, bool measured) {
  if (f.ground_size() != q.n) throw std::invalid_argument("polytope / function size mismatch");
  if (steps < 1) throw std::invalid_argument("continuous greedy needs at least one step");
  if (b < 0.0 || b > q.k) throw std::invalid_argument("b must lie in [0, k]");
  const double scale = b / q.k;
  FractionalPoint x = FractionalPoint::Zero(q.n);
  if (b == 0.0 || q.n == 0) return x;

  MarginalWeights weights(f, eval);
  const double delta = scale / steps;
  for (int t = 0; t < steps; ++t) {
    const Eigen::VectorXd grad = weights(x, measured);
    const FractionalPoint direction = linear_maximize(q, grad, 1.0).x;
    if (measured) {
      x.array() += delta * direction.array() * (1.0 - x.array());
    } else {
      x += delta * direction;
    }
  }
  x = x.cwiseMax(0.0).cwiseMin(1.0);
  if (!membership(q, x, scale, 1e-9)) x *= feasibility_factor(q, x, scale);
  return x;
}

}  // namespace

Eigen::MatrixXd PackingPolytope::matrix() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int v = 0; v < n; ++v) {
    for (Vertex u : rows[v]) a(v, u) = 1.0;
  }
  return a;
}

PackingPolytope build_polytope(const OrderedGraph& og) {
  std::vector<VertexSet> rows;
  rows.reserve(og.n());
  for (Vertex v = 0; v < og.n(); ++v) rows.push_back(forward_neighbors(og, v).with(v));
  return polytope_from_rows(og.n(), og.k(), std::move(rows));
}

PackingPolytope build_polytope(const OrientedGraph& dg) {
  std::vector<VertexSet> rows;
  rows.reserve(dg.n());
  for (Vertex v = 0; v < dg.n(); ++v) {
    const auto out = dg.out_neighbors(v);
    rows.push_back(VertexSet(std::vector<Vertex>(out.begin(), out.end())).with(v));
  }
  return polytope_from_rows(dg.n(), dg.k(), std::move(rows));
}

bool membership(const PackingPolytope& q, const FractionalPoint& x, double scale, double tol) {
  if (x.size() != q.n) throw std::invalid_argument("membership: dimension mismatch");
  for (int v = 0; v < q.n; ++v) {
    if (x[v] < -tol || x[v] > scale + tol) return false;
  }
  for (int v = 0; v < q.n; ++v) {
    double row = 0.0;
    for (Vertex u : q.rows[v]) row += x[u];
    if (row > scale * q.k + tol) return false;
  }
  return true;
}

LpSolution linear_maximize(const PackingPolytope& q, const Eigen::VectorXd& c, double scale) {
  const int n = q.n;
  if (c.size() != n) throw std::invalid_argument("linear_maximize: objective has wrong size");
  if (scale < 0.0) throw std::invalid_argument("linear_maximize: negative scale");
  const int m = 2 * n;  // packing rows, then box rows

  Eigen::MatrixXd constraints(m, n);
  constraints << q.matrix(), Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd rhs(m);
  rhs << Eigen::VectorXd::Constant(n, scale * q.k), Eigen::VectorXd::Constant(n, scale);

  // Tableau [A | I | h] over the objective row [-c | 0 | 0].
  const int cols = n + m + 1;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, cols);
  t.topLeftCorner(m, n) = constraints;
  t.block(0, n, m, m).setIdentity();
  t.col(cols - 1).head(m) = rhs;
  t.row(m).head(n) = -c.transpose();
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  const double scale_c = std::max(1.0, n > 0 ? c.cwiseAbs().maxCoeff() : 0.0);
  const double eps = kPivotEps * scale_c;
  const int max_iterations = 50 * (m + n) + 100;
  for (int iter = 0;; ++iter) {
    if (iter > max_iterations) throw NumericalError("simplex iteration limit reached");
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (t(m, j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (t(i, enter) > kPivotEps) {
        const double ratio = t(i, cols - 1) / t(i, enter);
        const bool tie = leave >= 0 && std::abs(ratio - best_ratio) <= 1e-14;
        if (leave < 0 || (!tie && ratio < best_ratio) || (tie && basis[i] < basis[leave])) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) throw NumericalError("linear_maximize: unbounded direction");
    t.row(leave) /= t(leave, enter);
    for (int i = 0; i <= m; ++i) {
      if (i != leave && t(i, enter) != 0.0) t.row(i) -= t(i, enter) * t.row(leave);
    }
    basis[leave] = enter;
  }

  LpSolution sol;
  sol.x = FractionalPoint::Zero(n);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) sol.x[basis[i]] = std::max(0.0, t(i, cols - 1));
  }
  sol.value = c.dot(sol.x);
  sol.duals = t.row(m).segment(n, m).transpose().cwiseMax(0.0);
  sol.dual_bound = rhs.dot(sol.duals);

  // Independent certificate: the dual must cover c, the primal must be
  // feasible, and the two objectives must agree.
  const double tol = 1e-7 * std::max(1.0, std::abs(sol.dual_bound));
  const Eigen::VectorXd slack = constraints.transpose() * sol.duals - c;
  if (n > 0 && slack.minCoeff() < -tol) {
    throw NumericalError("linear_maximize: dual certificate infeasible");
  }
  if (!membership(q, sol.x, scale, 1e-9)) {
    throw NumericalError("linear_maximize: primal solution infeasible");
  }
  if (std::abs(sol.value - sol.dual_bound) > tol) {
    throw NumericalError("linear_maximize: duality gap " +
                         std::to_string(sol.dual_bound - sol.value));
  }
  return sol;
}

FractionalPoint continuous_greedy(const SubmodularOracle& f, const PackingPolytope& q,
                                  double b, int steps, const MultilinearEval& eval) {
  return run_greedy(f, q, b, steps, eval, /*measured=*/false);
}

FractionalPoint measured_continuous_greedy(const SubmodularOracle& f,
                                           const PackingPolytope& q, double b, int steps,
                                           const MultilinearEval& eval) {
  return run_greedy(f, q, b, steps, eval, /*measured=*/true);
}

VertexSet crs_deterministic(const OrientedGraph& dg, const VertexSet& r) {
  std::vector<Vertex> kept;
  for (Vertex v : r) {
    const auto out = dg.out_neighbors(v);
    if (std::none_of(out.begin(), out.end(), [&](Vertex u) { return r.contains(u); })) {
      kept.push_back(v);
    }
  }
  return VertexSet(std::move(kept));
}

double crs_keep_probability(double x) {
  if (x <= 0.0) return 1.0;
  return -std::expm1(-x) / x;
}

VertexSet crs_randomized(const OrientedGraph& dg, const FractionalPoint& x,
                         const VertexSet& r, Rng& rng) {
  if (x.size() != dg.n()) throw std::invalid_argument("crs_randomized: dimension mismatch");
  std::vector<Vertex> thinned;
  for (Vertex v : r) {
    if (!(x[v] > 0.0)) {
      throw std::invalid_argument("crs_randomized: vertex " + std::to_string(v) +
                                  " lies outside support(x)");
    }
    if (rng.uniform() < crs_keep_probability(x[v])) thinned.push_back(v);
  }
  return crs_deterministic(dg, VertexSet(std::move(thinned)));
}

double default_pipeline_b(int k, bool monotone) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  return monotone ? k * std::log1p(1.0 / k) : static_cast<double>(k) / (k + 1);
}

double pipeline_guarantee(int k, double b, CrsScheme scheme, bool monotone) {
  const double r = b / k;
  const double fractional = monotone ? -std::expm1(-r) : r * std::exp(-r);
  const double retention = scheme == CrsScheme::kDeterministic ? 1.0 - b : std::exp(-b);
  return fractional * retention;
}

PipelineResult round_pipeline(const SubmodularOracle& f, const OrientedGraph& dg,
                              const PipelineOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("round_pipeline: trials must be >= 1");
  const bool monotone = options.monotone.value_or(f.monotone_hint());
  const double b = options.b.value_or(default_pipeline_b(dg.k(), monotone));
  if (b < 0.0 || b > 1.0) throw std::invalid_argument("round_pipeline: b must lie in [0,1]");

  CountingOracle counted(f);
  const PackingPolytope q = build_polytope(dg);
  PipelineResult out;
  out.b = b;
  out.fractional = monotone ? continuous_greedy(counted, q, b, options.steps, options.eval)
                            : measured_continuous_greedy(counted, q, b, options.steps,
                                                         options.eval);

  Rng rng(options.seed);
  VertexSet best;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < options.trials; ++t) {
    const VertexSet r = sample_set(out.fractional, rng);
    const VertexSet s = options.scheme == CrsScheme::kDeterministic
                            ? crs_deterministic(dg, r)
                            : crs_randomized(dg, out.fractional, r, rng);
    const double value = counted.value(s);
    if (value > best_value) {
      best_value = value;
      best = s;
    }
  }

  out.run.output = best;
  out.run.stack_final = best;
  out.run.value = counted.value(best);
  out.run.oracle_calls = counted.calls();
  out.run.rng_seed = options.seed;
  return out;
}

PipelineResult round_pipeline(const SubmodularOracle& f, const OrderedGraph& og,
                              const PipelineOptions& options) {
  return round_pipeline(f, orient_by_order(og), options);
}

}  // namespace subsetmax
