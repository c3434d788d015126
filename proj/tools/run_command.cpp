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

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include "commands.hpp"
#include "subsetmax/bruteforce.hpp"

namespace subsetmax::cli {
namespace {

struct Job {
  std::size_t instance;
  Algo algo;
  std::uint64_t trial;
};

struct Outcome {
  ResultRow row;
  std::optional<std::string> error;
  std::optional<AlgoRun> run;
};

nlohmann::ordered_json vertex_list(const VertexSet& s) {
  return nlohmann::ordered_json(std::vector<Vertex>(s.begin(), s.end()));
}

nlohmann::ordered_json vector_json(const Eigen::VectorXd& v) {
  return nlohmann::ordered_json(std::vector<double>(v.data(), v.data() + v.size()));
}

nlohmann::ordered_json outcome_json(const Outcome& o, Algo algo) {
  nlohmann::ordered_json doc = to_json(o.row);
  if (o.error) doc["error"] = *o.error;
  if (o.run) {
    const RunResult& r = o.run->run;
    doc["output"] = vertex_list(r.output);
    if (r.duals && (algo == Algo::kPrimalDual || algo == Algo::kPrimalDualNonneg ||
                    algo == Algo::kMwis)) {
      nlohmann::ordered_json cert;
      cert["stack_final"] = vertex_list(r.stack_final);
      cert["w"] = vector_json(r.duals->w);
      cert["y"] = vector_json(r.duals->y);
      cert["z"] = vector_json(r.duals->z);
      cert["mu"] = r.duals->mu;
      doc["certificate"] = std::move(cert);
    }
  }
  return doc;
}

}  // namespace

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<Instance> instances;
  for (const std::string& path : config.instances) {
    try {
      instances.push_back(read_instance(path));
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
  }

  std::vector<std::optional<double>> opt(instances.size());
  if (config.opt == "auto") {
    parallel_for(instances.size(), [&](std::size_t i) {
      if (instances[i].n() <= kBruteForceCap) {
        opt[i] = brute_force_opt(instances[i].graph(), instances[i].oracle()).best_value;
      }
    });
  }

  std::vector<Algo> algos;
  for (const std::string& name : config.algos) algos.push_back(parse_algo(name));
  if (algos.empty()) algos.assign(std::begin(kAllAlgos), std::end(kAllAlgos));

  std::vector<Job> jobs;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (Algo algo : algos) {
      const int trials = is_randomized(algo) ? config.trials : 1;
      for (int t = 0; t < trials; ++t) jobs.push_back({i, algo, static_cast<std::uint64_t>(t)});
    }
  }

  std::vector<Outcome> outcomes(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t j) {
    const Job& job = jobs[j];
    const std::string& name = config.instances[job.instance];
    Outcome& o = outcomes[j];
    o.row.instance = name;
    o.row.algorithm = std::string(algo_name(job.algo));
    o.row.opt = opt[job.instance];
    const std::uint64_t seed = trial_seed(config.seed, name, algo_name(job.algo), job.trial);
    const auto start = std::chrono::steady_clock::now();
    try {
      AlgoRun run = run_algorithm(instances[job.instance], job.algo, config.overrides, seed);
      o.row.params = run.params;
      o.row.seed = run.run.rng_seed;
      o.row.value = run.run.value;
      o.row.guarantee = run.guarantee;
      o.row.oracle_calls = run.run.oracle_calls;
      if (o.row.opt) {
        if (run.run.value > 0.0) {
          o.row.ratio = *o.row.opt / run.run.value;
        } else if (*o.row.opt == 0.0) {
          o.row.ratio = 1.0;
        }
      }
      o.run = std::move(run);
    } catch (const std::exception& e) {
      o.error = e.what();
      o.row.params = std::string("error=") + e.what();
    }
    if (config.timing) {
      o.row.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    }
  });

  std::ofstream file;
  if (config.out != "-") {
    file.open(config.out, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << config.out << " for writing\n";
      return 2;
    }
  }
  std::ostream& sink = config.out == "-" ? out : file;
  if (config.format == "csv") {
    std::vector<ResultRow> rows;
    rows.reserve(outcomes.size());
    for (const Outcome& o : outcomes) rows.push_back(o.row);
    write_results_csv(sink, rows);
  } else {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < outcomes.size(); ++j) {
      doc.push_back(outcome_json(outcomes[j], jobs[j].algo));
    }
    sink << doc.dump(1) << "\n";
  }
  sink.flush();
  if (!sink) {
    err << "error: failed writing results\n";
    return 2;
  }
  for (const Outcome& o : outcomes) {
    if (o.error) err << "warning: " << o.row.instance << " " << o.row.algorithm << ": " << *o.error << "\n";
  }
  return 0;
}

}  // namespace subsetmax::cli
