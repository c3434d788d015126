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

#include "cli_common.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "subsetmax/relaxation.hpp"
#include "subsetmax/rng.hpp"

namespace subsetmax::cli {
namespace {

constexpr std::string_view kNames[] = {"greedy", "rgreedy", "pd", "pd-nonneg",
                                       "pd-mwis", "crs-det", "crs-rand"};

std::string param(std::string_view key, double value) {
  return std::string(key) + "=" + format_number(value);
}

const OrderedGraph& require_ordered(const std::optional<OrderedGraph>& og, Algo algo) {
  if (!og) {
    throw std::invalid_argument(std::string(algo_name(algo)) + " needs an ordered instance");
  }
  return *og;
}

}  // namespace

std::string_view algo_name(Algo algo) { return kNames[static_cast<int>(algo)]; }

Algo parse_algo(std::string_view name) {
  for (Algo algo : kAllAlgos) {
    if (algo_name(algo) == name) return algo;
  }
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

std::vector<std::string> algo_names() {
  return std::vector<std::string>(std::begin(kNames), std::end(kNames));
}

bool is_randomized(Algo algo) {
  return algo == Algo::kRandomizedGreedy || algo == Algo::kPrimalDualNonneg ||
         algo == Algo::kCrsDet || algo == Algo::kCrsRand;
}

int effective_k(const Instance& inst, const Overrides& o) {
  if (o.k && *o.k < 1) throw std::invalid_argument("--k-override must be at least 1");
  return o.k.value_or(inst.k());
}

std::optional<OrderedGraph> effective_ordered(const Instance& inst, const Overrides& o) {
  if (!inst.ordered()) return std::nullopt;
  const OrderedGraph& og = *inst.ordered();
  const int k = effective_k(inst, o);
  if (k == og.k()) return og;
  return OrderedGraph(og.graph(), std::vector<Vertex>(og.order().begin(), og.order().end()), k);
}

OrientedGraph effective_oriented(const Instance& inst, const Overrides& o) {
  const OrientedGraph dg = inst.oriented_or_derived();
  const int k = effective_k(inst, o);
  if (k == dg.k()) return dg;
  return OrientedGraph(dg.graph(), dg.arcs(), k);
}

Eigen::VectorXd mwis_weights(const Instance& inst, const SubmodularOracle& f) {
  if (const auto* mod = std::get_if<ModularFunction>(&inst.function())) return mod->weights();
  Eigen::VectorXd w(inst.n());
  for (Vertex v = 0; v < inst.n(); ++v) w[v] = f.value(VertexSet{v});
  return w;
}

AlgoRun run_algorithm(const Instance& inst, Algo algo, const Overrides& o, std::uint64_t seed) {
  const int k = effective_k(inst, o);
  const std::optional<OrderedGraph> og = effective_ordered(inst, o);
  const SubmodularOracle& f = inst.oracle();
  const bool monotone = f.monotone_hint();
  const CountingOracle counted(f);
  AlgoRun out;

  switch (algo) {
    case Algo::kGreedy:
    case Algo::kRandomizedGreedy: {
      const double beta = o.beta.value_or(default_params(k, Regime::kGreedy).beta);
      out.params = param("beta", beta);
      if (algo == Algo::kGreedy) {
        out.run = preemptive_greedy(require_ordered(og, algo), counted, beta);
        if (monotone) out.guarantee = guarantee_factor(k, {beta, 0.5, 0}, Regime::kGreedy);
      } else {
        out.run = randomized_preemptive_greedy(require_ordered(og, algo), counted, beta, seed);
        out.guarantee = guarantee_factor(k, {beta, 0.5, 0}, Regime::kRandomizedGreedy);
      }
      break;
    }
    case Algo::kPrimalDual: {
      const double beta = o.beta.value_or(default_params(k, Regime::kMonotonePrimalDual).beta);
      out.params = param("beta", beta);
      out.run = primal_dual_monotone(require_ordered(og, algo), counted, beta);
      if (monotone) {
        out.guarantee = guarantee_factor(k, {beta, 0.5, 0}, Regime::kMonotonePrimalDual);
      }
      break;
    }
    case Algo::kPrimalDualNonneg: {
      AlgoParams params = default_params(k, Regime::kNonnegPrimalDual);
      if (o.p) {
        params.p = *o.p;
        if (o.beta) {
          params.beta = *o.beta;
        } else if (*o.p > 0.0 && *o.p < 0.5) {
          params.beta = (1.0 - 2.0 * *o.p) / *o.p;
        } else {
          throw std::invalid_argument("--p outside (0, 1/2) needs an explicit --beta");
        }
      } else if (o.beta) {
        params.beta = *o.beta;
      }
      out.params = param("beta", params.beta) + ";" + param("p", params.p);
      out.run = primal_dual_nonneg(require_ordered(og, algo), counted, params.beta, params.p, seed);
      out.guarantee = guarantee_factor(k, params, Regime::kNonnegPrimalDual);
      break;
    }
    case Algo::kMwis: {
      const Eigen::VectorXd w = mwis_weights(inst, counted);
      RunResult r = primal_dual_mwis(require_ordered(og, algo), w);
      r.value = counted.value(r.output);
      out.run = std::move(r);
      out.params = std::holds_alternative<ModularFunction>(inst.function()) ? "weights=f"
                                                                            : "weights=singletons";
      if (std::holds_alternative<ModularFunction>(inst.function())) out.guarantee = k;
      break;
    }
    case Algo::kCrsDet:
    case Algo::kCrsRand: {
      PipelineOptions opts;
      opts.b = o.b;
      opts.scheme = algo == Algo::kCrsDet ? CrsScheme::kDeterministic : CrsScheme::kRandomized;
      opts.trials = o.rounds;
      opts.steps = o.steps;
      opts.seed = seed;
      opts.eval.seed = derive_seed(seed, {hash_name("eval")});
      PipelineResult res = og ? round_pipeline(counted, *og, opts)
                              : round_pipeline(counted, effective_oriented(inst, o), opts);
      out.params = param("b", res.b) + ";" + param("rounds", o.rounds) + ";" +
                   param("steps", o.steps);
      const double promised = pipeline_guarantee(k, res.b, opts.scheme, monotone);
      if (promised > 0.0) out.guarantee = 1.0 / promised;
      out.run = std::move(res.run);
      break;
    }
  }
  out.run.oracle_calls = counted.calls();
  if (is_randomized(algo)) out.run.rng_seed = seed;
  return out;
}

std::uint64_t trial_seed(std::uint64_t master, std::string_view instance, std::string_view algo,
                         std::uint64_t trial) {
  return derive_seed(master, {hash_name(instance), hash_name(algo), trial});
}

int worker_count() {
  if (const char* env = std::getenv("SUBSETMAX_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<int>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace subsetmax::cli
