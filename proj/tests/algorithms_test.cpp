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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "subsetmax/algorithms.hpp"
#include "subsetmax/errors.hpp"
#include "subsetmax/exact_sum.hpp"
#include "subsetmax/instances.hpp"
#include "test_support.hpp"

using namespace subsetmax;
using subsetmax::testing::identity_order;
using subsetmax::testing::optimum_reference;
using subsetmax::testing::path_graph;

namespace {

OrderedGraph path3() { return OrderedGraph(path_graph(3), identity_order(3), 1); }

const ModularFunction& path_weights() {
  static const ModularFunction f(Eigen::Vector3d(1, 3, 1));
  return f;
}

// Small instances from every generator with every function family.
std::vector<Instance> small_corpus(int count, int n) {
  std::vector<Instance> out;
  for (int i = 0; i < count; ++i) {
    const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(i);
    const Instance bases[] = {gen_interval_graph(n, seed),
                              gen_line_graph_matching(n, std::max(4, n / 2 + 2), seed),
                              gen_degenerate(n, 0.35, seed)};
    for (const Instance& base : bases) {
      for (FunctionKind kind : {FunctionKind::kModular, FunctionKind::kCoverage,
                                FunctionKind::kCut}) {
        out.push_back(attach_function(base, kind, seed));
      }
    }
  }
  return out;
}

double weight_sum(const RunResult& r) { return r.duals->w.sum(); }

}  // namespace

TEST_CASE("preemptive greedy on the weighted path") {
  const RunResult r = preemptive_greedy(path3(), path_weights(), 1.0);
  CHECK(r.output == VertexSet{1});
  CHECK(r.value == 3.0);
  CHECK(r.stack_final == r.output);
  REQUIRE(r.trace);
  CHECK(r.trace->accepted == std::vector<Vertex>{0, 1});
  CHECK(r.trace->conflicts == std::vector<VertexSet>{VertexSet{}, VertexSet{0}});
  CHECK(r.oracle_calls <= 2 * 3 + 2);
  CHECK(optimum_reference(path_graph(3), path_weights()).value == 3.0);
}

TEST_CASE("preemptive greedy edge cases") {
  const ModularFunction f(Eigen::Vector4d(0.5, 0.0, 2.0, 1.0));
  const OrderedGraph edgeless(Graph(4, {}), identity_order(4), 1);
  const RunResult r = preemptive_greedy(edgeless, f, 0.7);
  CHECK(r.output == VertexSet{0, 1, 2, 3});
  CHECK(r.value == doctest::Approx(3.5));

  const OrderedGraph empty(Graph(), {}, 1);
  const RunResult e = preemptive_greedy(empty, ModularFunction(Eigen::VectorXd()), 1.0);
  CHECK(e.output.empty());
  CHECK(e.value == 0.0);

  CHECK_THROWS_AS(preemptive_greedy(path3(), path_weights(), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(preemptive_greedy(path3(), path_weights(), -1.0), std::invalid_argument);
}

TEST_CASE("greedy accepts zero marginals, primal-dual rejects them") {
  const ModularFunction zero(Eigen::Vector3d::Zero());
  const OrderedGraph edgeless(Graph(3, {}), identity_order(3), 1);
  CHECK(preemptive_greedy(edgeless, zero, 1.0).output == VertexSet{0, 1, 2});
  const RunResult pd = primal_dual_monotone(edgeless, zero, 1.0);
  CHECK(pd.output.empty());
  CHECK(pd.stack_final.empty());
  CHECK(pd.duals->mu == 0.0);
}

TEST_CASE("randomized preemptive greedy") {
  const OrderedGraph og = path3();
  const RunResult full = preemptive_greedy_on(og, path_weights(), 1.0, VertexSet{0, 1, 2});
  const RunResult det = preemptive_greedy(og, path_weights(), 1.0);
  CHECK(full.output == det.output);
  CHECK(full.value == det.value);
  CHECK(preemptive_greedy_on(og, path_weights(), 1.0, VertexSet{}).output.empty());

  // The output equals the subsample on an edgeless graph with positive weights.
  const OrderedGraph edgeless(Graph(2, {}), identity_order(2), 1);
  const ModularFunction ones(Eigen::Vector2d::Ones());
  std::map<VertexSet, int> seen;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    const RunResult r = randomized_preemptive_greedy(edgeless, ones, 1.0, seed);
    ++seen[r.output];
    CHECK(r.rng_seed == seed);
  }
  CHECK(seen.size() == 4);
  CHECK(seen.count(VertexSet{}) == 1);

  const CutFunction cut(2, {{0, 1, 1.0}});
  const OrderedGraph edge(path_graph(2), identity_order(2), 1);
  for (Vertex v : {0, 1}) {
    const RunResult r = preemptive_greedy_on(edge, cut, 1.0, VertexSet{v});
    CHECK(r.output == VertexSet{v});
    CHECK(r.value == 1.0);
  }

  const RunResult a = randomized_preemptive_greedy(og, path_weights(), 1.0, 77);
  const RunResult b = randomized_preemptive_greedy(og, path_weights(), 1.0, 77);
  CHECK(a.output == b.output);
}

TEST_CASE("primal-dual monotone on the weighted path") {
  const RunResult r = primal_dual_monotone(path3(), path_weights(), 1.0);
  CHECK(r.stack_final == VertexSet{0, 1});
  CHECK(r.output == VertexSet{1});
  CHECK(r.value == 3.0);
  REQUIRE(r.duals);
  const DualCertificate& d = *r.duals;
  CHECK(d.w == Eigen::Vector3d(1, 2, 0));
  CHECK(d.y == Eigen::Vector3d(2, 4, 0));
  CHECK(d.z == Eigen::Vector3d(0, 0, 1));
  CHECK(d.mu == 4.0);
  CHECK(r.value >= weight_sum(r));
  CHECK(r.oracle_calls <= 2 * 3 + 2);
}

TEST_CASE("primal-dual monotone edge cases") {
  const OrderedGraph single(Graph(1, {}), {0}, 1);
  const ModularFunction five(Eigen::VectorXd::Constant(1, 5.0));
  for (double beta : {0.1, 1.0, 7.0}) {
    const RunResult r = primal_dual_monotone(single, five, beta);
    CHECK(r.output == VertexSet{0});
    CHECK(r.value == 5.0);
    CHECK(r.duals->w[0] == 5.0);
    CHECK(r.duals->mu == 5.0);
  }
  CHECK_THROWS_AS(primal_dual_monotone(single, five, 0.0), std::invalid_argument);

  const OrderedGraph empty(Graph(), {}, 1);
  const ModularFunction none{Eigen::VectorXd()};
  const RunResult e = primal_dual_monotone(empty, none, 1.0);
  CHECK(e.output.empty());
  CHECK(verify_dual_feasibility_monotone(e, empty, none));
}

TEST_CASE("dual feasibility on the weighted path") {
  const OrderedGraph og = path3();
  const RunResult r = primal_dual_monotone(og, path_weights(), 1.0);
  CHECK(verify_dual_feasibility_monotone(r, og, path_weights()));

  // All eight subset constraints and the three packing constraints by hand.
  const DualCertificate& d = *r.duals;
  for (std::uint64_t mask = 0; mask < 8; ++mask) {
    double lhs = d.mu;
    for (int i = 0; i < 3; ++i) {
      if (mask >> i & 1) lhs += d.z[i];
    }
    CHECK(lhs >= path_weights().value(VertexSet::from_mask(mask)) - 1e-9);
  }
  CHECK(d.y[0] >= d.z[0]);
  CHECK(d.y[1] + d.y[0] >= d.z[1]);
  CHECK(d.y[2] + d.y[1] >= d.z[2]);

  RunResult lowered = r;
  lowered.duals->mu -= 1.0;
  CHECK_FALSE(verify_dual_feasibility_monotone(lowered, og, path_weights()));

  RunResult negative = r;
  negative.duals->z[2] = -0.5;
  CHECK_FALSE(verify_dual_feasibility_monotone(negative, og, path_weights()));

  CHECK_THROWS_AS(
      verify_dual_feasibility_monotone(r, OrderedGraph(Graph(17, {}), identity_order(17), 1),
                                       ModularFunction(Eigen::VectorXd::Ones(17))),
      ResourceLimitError);
}

TEST_CASE("primal-dual non-monotone") {
  const OrderedGraph og = path3();
  const RunResult det = primal_dual_monotone(og, path_weights(), 1.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RunResult r = primal_dual_nonneg(og, path_weights(), 1.0, 1.0 - 1e-12, seed);
    CHECK(r.output == det.output);
    CHECK(r.stack_final == det.stack_final);
    CHECK(r.duals->w == det.duals->w);
    CHECK(r.duals->z == det.duals->z);
    CHECK(r.rng_seed == seed);
  }

  // A seed whose coins all fail pushes nothing; every vertex then gets a z value.
  bool found = false;
  for (std::uint64_t seed = 0; seed < 200 && !found; ++seed) {
    const RunResult r = primal_dual_nonneg(og, path_weights(), 1.0, 0.2, seed);
    if (!r.stack_final.empty()) continue;
    found = true;
    CHECK(r.output.empty());
    CHECK(r.value == 0.0);
    CHECK(r.duals->z == Eigen::Vector3d(1, 3, 1));
    CHECK(r.duals->w.isZero());
  }
  CHECK(found);

  CHECK_THROWS_AS(primal_dual_nonneg(og, path_weights(), 1.0, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(primal_dual_nonneg(og, path_weights(), 1.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(primal_dual_nonneg(og, path_weights(), 0.0, 0.3, 1), std::invalid_argument);

  const RunResult a = primal_dual_nonneg(og, path_weights(), 1.0, 0.4, 5);
  const RunResult b = primal_dual_nonneg(og, path_weights(), 1.0, 0.4, 5);
  CHECK(a.output == b.output);
  CHECK(a.duals->z == b.duals->z);
}

TEST_CASE("primal-dual MWIS") {
  const RunResult r = primal_dual_mwis(path3(), Eigen::Vector3d(1, 3, 1));
  CHECK(r.duals->y == Eigen::Vector3d(1, 2, 0));
  CHECK(r.stack_final == VertexSet{0, 1});
  CHECK(r.output == VertexSet{1});
  CHECK(r.value == 3.0);
  CHECK(r.duals->y.sum() == 3.0);

  const OrderedGraph edgeless(Graph(4, {}), identity_order(4), 1);
  const Eigen::Vector4d w(2, 0, 1, 4);
  const RunResult e = primal_dual_mwis(edgeless, w);
  CHECK(e.duals->y == w);
  CHECK(e.output == VertexSet{0, 2, 3});
  CHECK(e.value == 7.0);

  const OrderedGraph edge(path_graph(2), identity_order(2), 1);
  const RunResult s = primal_dual_mwis(edge, Eigen::Vector2d(2, 2));
  CHECK(s.duals->y == Eigen::Vector2d(2, 0));
  CHECK(s.output == VertexSet{0});
  CHECK(s.value == 2.0);

  CHECK_THROWS_AS(primal_dual_mwis(edge, Eigen::Vector2d(1, -1)), std::invalid_argument);
}

TEST_CASE("MWIS duality against exhaustive search") {
  for (const Instance& inst : small_corpus(8, 12)) {
    if (function_kind(inst.function()) != FunctionKind::kModular) continue;
    const auto& w = std::get<ModularFunction>(inst.function()).weights();
    const RunResult r = primal_dual_mwis(*inst.ordered(), w);
    CHECK(is_independent(inst.graph(), r.output));
    std::vector<double> out_weights;
    for (Vertex v : r.output) out_weights.push_back(w[v]);
    const std::span<const double> y(r.duals->y.data(), r.duals->y.size());
    CHECK(compare_sums(out_weights, y) >= 0);
    const double opt = optimum_reference(inst.graph(), inst.oracle()).value;
    CHECK(opt <= inst.k() * r.duals->y.sum() + 1e-9);
  }
}

TEST_CASE("default parameters and guarantee factors") {
  const AlgoParams mono = default_params(1, Regime::kMonotonePrimalDual);
  CHECK(mono.beta == doctest::Approx(1.0));
  CHECK(guarantee_factor(1, mono, Regime::kMonotonePrimalDual) == doctest::Approx(4.0));
  for (int k = 1; k <= 8; ++k) {
    const AlgoParams pd = default_params(k, Regime::kMonotonePrimalDual);
    CHECK(pd.beta == doctest::Approx(1.0 / std::sqrt(k)));
    CHECK(guarantee_factor(k, pd, Regime::kMonotonePrimalDual) ==
          doctest::Approx(k + 1 + 2 * std::sqrt(k)));

    const AlgoParams nn = default_params(k, Regime::kNonnegPrimalDual);
    CHECK(nn.p == doctest::Approx(1.0 / (std::sqrt(2.0 / k) + 2.0)));
    CHECK(nn.beta == doctest::Approx((1 - 2 * nn.p) / nn.p));
    CHECK(guarantee_factor(k, nn, Regime::kNonnegPrimalDual) ==
          doctest::Approx(2 * k + std::sqrt(8.0 * k) + 1));

    const AlgoParams gr = default_params(k, Regime::kGreedy);
    const double b = std::sqrt(1.0 + 1.0 / k);
    CHECK(gr.beta == doctest::Approx(b));
    const double greedy = (k * (1 + b) + 1) * (1 + 1 / b);
    CHECK(guarantee_factor(k, gr, Regime::kGreedy) == doctest::Approx(greedy));
    CHECK(guarantee_factor(k, gr, Regime::kRandomizedGreedy) == doctest::Approx(4 * greedy));
  }
  const AlgoParams k2 = default_params(2, Regime::kNonnegPrimalDual);
  CHECK(k2.p == doctest::Approx(1.0 / 3.0));
  CHECK(k2.beta == doctest::Approx(1.0));
  CHECK(guarantee_factor(2, k2, Regime::kNonnegPrimalDual) == doctest::Approx(9.0));
  CHECK(guarantee_factor(1, default_params(1, Regime::kGreedy), Regime::kGreedy) ==
        doctest::Approx(3 + 2 * std::sqrt(2.0)));
  CHECK(guarantee_factor(2, AlgoParams{1.0, 1.0 / 3.0, 0}, Regime::kNonnegPrimalDual) ==
        doctest::Approx(9.0));
}

TEST_CASE("structural properties on generated instances") {
  for (const Instance& inst : small_corpus(6, 11)) {
    const OrderedGraph& og = *inst.ordered();
    const SubmodularOracle& f = inst.oracle();
    const int n = inst.n();
    const int k = inst.k();
    const bool monotone = f.monotone_hint();
    const double opt = optimum_reference(inst.graph(), f).value;

    const AlgoParams gp = default_params(k, Regime::kGreedy);
    const RunResult g = preemptive_greedy(og, f, gp.beta, GreedyOptions{true});
    CHECK(is_independent(inst.graph(), g.output));
    CHECK(g.oracle_calls <= 2 * n + 2);
    CHECK(g.value == doctest::Approx(f.value(g.output)));
    if (monotone) CHECK(opt <= guarantee_factor(k, gp, Regime::kGreedy) * g.value + 1e-6);

    // Every evicted vertex sits in exactly one conflict set.
    std::vector<int> hits(n, 0);
    for (const VertexSet& c : g.trace->conflicts) {
      for (Vertex u : c) ++hits[u];
    }
    for (Vertex u : g.trace->accepted) {
      CHECK(hits[u] == (g.output.contains(u) ? 0 : 1));
    }

    const RunResult rg = randomized_preemptive_greedy(og, f, gp.beta, 3, GreedyOptions{true});
    CHECK(is_independent(inst.graph(), rg.output));

    const RunResult mwis = primal_dual_mwis(og, Eigen::VectorXd::Ones(n));
    CHECK(is_independent(inst.graph(), mwis.output));

    const AlgoParams np = default_params(k, Regime::kNonnegPrimalDual);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const RunResult r = primal_dual_nonneg(og, f, np.beta, np.p, seed);
      CHECK(is_independent(inst.graph(), r.output));
      CHECK(r.output.is_subset_of(r.stack_final));
      CHECK(r.oracle_calls <= 2 * n + 2);
      CHECK(r.value >= weight_sum(r) - 1e-9);
      CHECK(r.duals->mu <= (1 + np.beta) / np.beta * weight_sum(r) + 1e-9);
    }

    if (!monotone) continue;
    const AlgoParams mp = default_params(k, Regime::kMonotonePrimalDual);
    const RunResult pd = primal_dual_monotone(og, f, mp.beta);
    CHECK(is_independent(inst.graph(), pd.output));
    CHECK(pd.output.is_subset_of(pd.stack_final));
    CHECK(pd.oracle_calls <= 2 * n + 2);
    CHECK(pd.duals->mu == doctest::Approx(f.value(pd.stack_final)));
    CHECK(pd.value >= weight_sum(pd) - 1e-9);
    CHECK(pd.duals->mu <= (1 + mp.beta) / mp.beta * weight_sum(pd) + 1e-9);
    CHECK(opt <= pd.duals->mu + k * (1 + mp.beta) * weight_sum(pd) + 1e-6);
    CHECK(opt <= guarantee_factor(k, mp, Regime::kMonotonePrimalDual) * pd.value + 1e-6);
    CHECK(verify_dual_feasibility_monotone(pd, og, f));
    for (int i = 0; i < n; ++i) {
      const bool pushed = pd.stack_final.contains(i);
      CHECK(pd.duals->y[i] == doctest::Approx(pushed ? (1 + mp.beta) * pd.duals->w[i] : 0.0));
      if (!pushed) CHECK(pd.duals->w[i] == 0.0);
    }
  }
}

TEST_CASE("counting oracle agrees with reported call counts") {
  const Instance inst = attach_function(gen_degenerate(14, 0.3, 8), FunctionKind::kCoverage, 8);
  const CountingOracle counted(inst.oracle());
  const RunResult r = preemptive_greedy(*inst.ordered(), counted, 1.2);
  CHECK(r.oracle_calls == counted.calls());
  const CountingOracle counted_pd(inst.oracle());
  const RunResult pd = primal_dual_monotone(*inst.ordered(), counted_pd, 0.8);
  CHECK(pd.oracle_calls == counted_pd.calls());
}

TEST_CASE("randomized algorithms meet their guarantee in expectation") {
  const int trials = 2000;
  for (std::uint64_t seed : {31, 32}) {
    for (FunctionKind kind : {FunctionKind::kCut, FunctionKind::kCoverage}) {
      const Instance inst = attach_function(gen_degenerate(10, 0.3, seed), kind, seed);
      const OrderedGraph& og = *inst.ordered();
      const int k = inst.k();
      const double opt = optimum_reference(inst.graph(), inst.oracle()).value;

      const auto check_mean = [&](const std::function<double(std::uint64_t)>& run,
                                  double factor) {
        double mean = 0.0;
        double m2 = 0.0;
        for (int t = 0; t < trials; ++t) {
          const double x = run(derive_seed(seed, {static_cast<std::uint64_t>(t)}));
          const double delta = x - mean;
          mean += delta / (t + 1);
          m2 += delta * (x - mean);
        }
        const double sd = std::sqrt(m2 / (trials - 1));
        CHECK(mean >= opt / factor - 4.0 * sd / std::sqrt(trials));
      };

      const AlgoParams gp = default_params(k, Regime::kGreedy);
      check_mean([&](std::uint64_t s) {
        return randomized_preemptive_greedy(og, inst.oracle(), gp.beta, s).value;
      }, guarantee_factor(k, gp, Regime::kRandomizedGreedy));

      const AlgoParams np = default_params(k, Regime::kNonnegPrimalDual);
      check_mean([&](std::uint64_t s) {
        return primal_dual_nonneg(og, inst.oracle(), np.beta, np.p, s).value;
      }, guarantee_factor(k, np, Regime::kNonnegPrimalDual));
    }
  }
}

TEST_CASE("regime names") {
  CHECK(regime_name(Regime::kGreedy) == "greedy");
  CHECK(regime_name(Regime::kMonotonePrimalDual) != regime_name(Regime::kNonnegPrimalDual));
}

TEST_CASE("compare_sums is exact") {
  const std::vector<double> tenth{0.1, 0.2};
  const std::vector<double> three{0.3};
  CHECK(compare_sums(tenth, three) == 1);
  CHECK(compare_sums(three, tenth) == -1);
  const std::vector<double> big{1e16, 1.0, -1e16};
  const std::vector<double> one{1.0};
  CHECK(compare_sums(big, one) == 0);
  CHECK(compare_sums({}, {}) == 0);
  const std::vector<double> tiny{1e-300};
  CHECK(compare_sums(big, std::vector<double>{1.0, 1e-300}) == -1);
  CHECK(compare_sums(tiny, {}) == 1);
}

TEST_CASE("difference_rounded_down never overshoots") {
  const std::vector<double> w{0.66666666666666663};
  const std::vector<double> covered{0.33333333333333331, 0.33333333333333326};
  const double d = difference_rounded_down(w, covered);
  CHECK(d > 0.0);
  CHECK(d < 1e-16);
  std::vector<double> with_d = covered;
  with_d.push_back(d);
  CHECK(compare_sums(w, with_d) >= 0);
  with_d.back() = std::nextafter(d, 1.0);
  CHECK(compare_sums(w, with_d) < 0);
  CHECK(difference_rounded_down(std::vector<double>{1.0}, std::vector<double>{1.0}) == 0.0);
  CHECK(difference_rounded_down(std::vector<double>{0.3}, std::vector<double>{0.1, 0.2}) < 0.0);
}

TEST_CASE("MWIS duals never exceed the weights they cover") {
  for (const Instance& inst : small_corpus(10, 14)) {
    Eigen::VectorXd w(inst.n());
    for (Vertex v = 0; v < inst.n(); ++v) w[v] = inst.oracle().value(VertexSet{v});
    const OrderedGraph& og = *inst.ordered();
    const RunResult r = primal_dual_mwis(og, w);
    for (Vertex v : r.stack_final) {
      std::vector<double> covered{r.duals->y[v]};
      for (Vertex u : backward_neighbors(og, v)) covered.push_back(r.duals->y[u]);
      CHECK(compare_sums(covered, std::vector<double>{w[v]}) <= 0);
      CHECK(r.duals->y[v] > 0.0);
    }
  }
}
