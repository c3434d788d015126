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

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <limits>

#include "CLI11.hpp"
#include "commands.hpp"

namespace subsetmax::cli {
namespace {

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--beta", o.beta, "Threshold parameter beta")->check(CLI::PositiveNumber);
  cmd->add_option("--p", o.p, "Push probability of the non-monotone primal-dual")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--b", o.b, "Relaxation scale b for the rounding pipeline")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--k-override", o.k, "Use this k instead of the instance's")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--rounds", o.rounds, "Best-of rounds inside the rounding pipeline")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--steps", o.steps, "Continuous greedy steps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Submodular maximization over independent sets of sparse graph classes",
               "subsetmax"};
  app.require_subcommand(1);

  GenConfig gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate seeded instances");
  gen_cmd->add_option("--class", gen.graph_class, "Graph class")
      ->required()
      ->check(CLI::IsMember(kGraphClasses));
  gen_cmd->add_option("--n", gen.n, "Vertices per instance")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  gen_cmd->add_option("--count", gen.count, "Number of instances")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Master seed")->capture_default_str();
  gen_cmd->add_option("--function", gen.function, "Function family")
      ->check(CLI::IsMember({"modular", "coverage", "cut"}))
      ->capture_default_str();
  gen_cmd->add_option("--edge-prob", gen.edge_prob, "Edge probability (degenerate class)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  gen_cmd->add_option("--base-n", gen.base_n, "Base graph size (line class)")
      ->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--out-dir", gen.out_dir, "Output directory")->capture_default_str();

  RunConfig run;
  CLI::App* run_cmd = app.add_subcommand("run", "Run algorithms and write result rows");
  run_cmd->add_option("instances", run.instances, "Instance files");
  run_cmd->add_option("--algo", run.algos, "Algorithm (repeatable; default all)")
      ->check(CLI::IsMember(algo_names()));
  add_overrides(run_cmd, run.overrides);
  run_cmd->add_option("--trials", run.trials, "Seeded trials per randomized algorithm")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_cmd->add_option("--seed", run.seed, "Master seed")->capture_default_str();
  run_cmd->add_option("--out", run.out, "Output file, - for stdout")->capture_default_str();
  run_cmd->add_option("--format", run.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  run_cmd->add_option("--opt", run.opt, "Brute-force optimum for n <= 20")
      ->check(CLI::IsMember({"auto", "skip"}))
      ->capture_default_str();
  run_cmd->add_flag("--timing", run.timing, "Fill the wall_ms column");

  VerifyConfig verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Check algorithm invariants");
  verify_cmd->add_option("instances", verify.instances, "Instance files");
  verify_cmd->add_option("--suite", verify.suites, "Suite (repeatable; default all)")
      ->check(CLI::IsMember(kSuites));
  verify_cmd->add_option("--certificates", verify.certificates,
                         "JSON results from `run --format json` to re-check");
  verify_cmd->add_option("--trials", verify.trials,
                         "Trials for randomized and crs-balance suites")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify.seed, "Master seed")->capture_default_str();
  verify_cmd->add_option("--report", verify.report, "Write a JSON report here");
  add_overrides(verify_cmd, verify.overrides);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, out, err);
    if (run_cmd->parsed()) return cmd_run(run, out, err);
    return cmd_verify(verify, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_gen(const GenConfig& config, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) {
    err << "error: cannot create " << config.out_dir << ": " << ec.message() << "\n";
    return 2;
  }
  const FunctionKind kind = parse_function_kind(config.function);
  for (int i = 0; i < config.count; ++i) {
    const std::uint64_t seed =
        derive_seed(config.seed, {hash_name(config.graph_class), static_cast<std::uint64_t>(i)});
    Instance base = [&] {
      if (config.graph_class == "interval") return gen_interval_graph(config.n, seed);
      if (config.graph_class == "line") {
        return gen_line_graph_matching(config.n, config.base_n.value_or(std::max(config.n, 3)),
                                       seed);
      }
      if (config.graph_class == "degenerate") {
        return gen_degenerate(config.n, config.edge_prob, seed);
      }
      return gen_oriented_cycle(config.n, seed);
    }();
    const Instance inst = attach_function(base, kind, seed);
    char name[96];
    std::snprintf(name, sizeof name, "%s_%s_n%d_%04d.json", config.graph_class.c_str(),
                  config.function.c_str(), config.n, i);
    const fs::path path = fs::path(config.out_dir) / name;
    write_instance(inst, path);
    out << path.string() << " n=" << inst.n() << " k=" << inst.k() << " seed=" << seed << "\n";
  }
  return 0;
}

}  // namespace subsetmax::cli
