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

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "commands.hpp"
#include "subsetmax/bruteforce.hpp"
#include "subsetmax/errors.hpp"
#include "subsetmax/exact_sum.hpp"
#include "subsetmax/relaxation.hpp"

namespace subsetmax::cli {
namespace {

using nlohmann::ordered_json;

enum class Status { kPass, kFail, kSkip };

constexpr std::string_view status_name(Status s) {
  return s == Status::kPass ? "PASS" : s == Status::kFail ? "FAIL" : "SKIP";
}

struct Check {
  std::string suite;
  std::string instance;
  std::string name;
  Status status = Status::kPass;
  std::string detail;
  std::optional<std::uint64_t> seed;
};

struct BalanceTable {
  std::string instance;
  double b = 0.0;
  int trials = 0;
  std::vector<std::array<std::int64_t, 3>> counts;  // present, kept (det), kept (rand)
};

struct InstanceReport {
  std::vector<Check> checks;
  std::optional<BalanceTable> balance;
};

constexpr double kTol = 1e-9;
constexpr double kRatioTol = 1e-6;
constexpr int kDefaultRandomizedTrials = 2000;
constexpr int kDefaultBalanceTrials = 100000;
constexpr int kDualCap = 16;

class Recorder {
 public:
  Recorder(std::vector<Check>& out, std::string suite, std::string instance)
      : out_(out), suite_(std::move(suite)), instance_(std::move(instance)) {}

  void expect(bool ok, std::string name, std::string detail = {},
              std::optional<std::uint64_t> seed = std::nullopt) {
    out_.push_back({suite_, instance_, std::move(name), ok ? Status::kPass : Status::kFail,
                    std::move(detail), seed});
  }
  void skip(std::string name, std::string reason) {
    out_.push_back({suite_, instance_, std::move(name), Status::kSkip, std::move(reason), {}});
  }

 private:
  std::vector<Check>& out_;
  std::string suite_;
  std::string instance_;
};

std::string compare(double lhs, std::string_view op, double rhs) {
  return format_number(lhs) + " " + std::string(op) + " " + format_number(rhs);
}

bool same_value(double a, double b) { return std::abs(a - b) <= kTol * std::max(1.0, std::abs(b)); }

void structural_suite(const Instance& inst, const std::string& path, const VerifyConfig& c,
                      std::vector<Check>& out) {
  Recorder rec(out, "structural", path);
  const auto og = effective_ordered(inst, c.overrides);
  try {
    if (og) rec.expect(verify_inductive_k_independence(*og), "ordering is k-inductive");
  } catch (const ResourceLimitError& e) {
    rec.skip("ordering is k-inductive", e.what());
  }
  try {
    rec.expect(verify_k_perfect_orientation(effective_oriented(inst, c.overrides)),
               "orientation is k-perfect");
  } catch (const ResourceLimitError& e) {
    rec.skip("orientation is k-perfect", e.what());
  }
  if (!og) {
    rec.skip("algorithm outputs", "instance has no ordering");
    return;
  }
  const SubmodularOracle& f = inst.oracle();
  const std::int64_t budget = 2 * static_cast<std::int64_t>(inst.n()) + 2;
  for (Algo algo : {Algo::kGreedy, Algo::kRandomizedGreedy, Algo::kPrimalDual,
                    Algo::kPrimalDualNonneg, Algo::kMwis}) {
    const std::string name(algo_name(algo));
    const std::uint64_t seed = trial_seed(c.seed, path, name, 0);
    const AlgoRun run = run_algorithm(inst, algo, c.overrides, seed);
    const RunResult& r = run.run;
    const auto s = is_randomized(algo) ? std::optional(seed) : std::nullopt;
    rec.expect(is_independent(inst.graph(), r.output), name + " output is independent", {}, s);
    rec.expect(r.output.is_subset_of(r.stack_final), name + " output inside stack", {}, s);
    rec.expect(same_value(r.value, f.value(r.output)), name + " value is f(output)",
               compare(r.value, "vs", f.value(r.output)), s);
    if (algo == Algo::kGreedy || algo == Algo::kPrimalDual || algo == Algo::kPrimalDualNonneg) {
      rec.expect(r.oracle_calls <= budget, name + " oracle calls within 2n+2",
                 std::to_string(r.oracle_calls) + " <= " + std::to_string(budget), s);
    }
  }
}

void dual_suite(const Instance& inst, const std::string& path, const VerifyConfig& c,
                const std::optional<double>& opt, std::vector<Check>& out) {
  Recorder rec(out, "dual", path);
  const auto og = effective_ordered(inst, c.overrides);
  if (!og) return rec.skip("dual certificate", "instance has no ordering");
  if (!inst.oracle().monotone_hint()) return rec.skip("dual certificate", "function is not monotone");
  if (inst.n() > kDualCap) return rec.skip("dual certificate", "n exceeds 16");
  const AlgoRun run = run_algorithm(inst, Algo::kPrimalDual, c.overrides, 0);
  const RunResult& r = run.run;
  const double beta = c.overrides.beta.value_or(
      default_params(effective_k(inst, c.overrides), Regime::kMonotonePrimalDual).beta);
  const double w_sum = r.duals->w.sum();
  const int k = effective_k(inst, c.overrides);
  rec.expect(verify_dual_feasibility_monotone(r, *og, inst.oracle()), "dual feasibility");
  rec.expect(r.value >= w_sum - kTol, "f(Sout) >= sum w", compare(r.value, ">=", w_sum));
  rec.expect(r.duals->mu <= (1 + beta) / beta * w_sum + kTol, "f(stack) <= (1+beta)/beta sum w",
             compare(r.duals->mu, "<=", (1 + beta) / beta * w_sum));
  if (opt) {
    const double bound = r.duals->mu + k * (1 + beta) * w_sum;
    rec.expect(*opt <= bound + kRatioTol, "OPT <= f(stack) + k(1+beta) sum w",
               compare(*opt, "<=", bound));
  }
}

void ratio_suite(const Instance& inst, const std::string& path, const VerifyConfig& c,
                 const std::optional<double>& opt, std::vector<Check>& out) {
  Recorder rec(out, "ratio", path);
  if (!opt) return rec.skip("approximation ratio", "n exceeds the brute-force cap");
  if (!inst.ordered()) return rec.skip("approximation ratio", "instance has no ordering");
  for (Algo algo : {Algo::kGreedy, Algo::kPrimalDual, Algo::kMwis}) {
    const AlgoRun run = run_algorithm(inst, algo, c.overrides, 0);
    const std::string name = std::string(algo_name(algo)) + " OPT <= factor * value";
    if (!run.guarantee) {
      rec.skip(name, "no guarantee for this function");
      continue;
    }
    rec.expect(*opt <= *run.guarantee * run.run.value + kRatioTol, name,
               compare(*opt, "<=", *run.guarantee * run.run.value));
  }
}

void mwis_suite(const Instance& inst, const std::string& path, const VerifyConfig& c,
                std::vector<Check>& out) {
  Recorder rec(out, "mwis", path);
  const auto og = effective_ordered(inst, c.overrides);
  if (!og) return rec.skip("mwis duality", "instance has no ordering");
  const Eigen::VectorXd w = mwis_weights(inst, inst.oracle());
  const RunResult r = primal_dual_mwis(*og, w);
  const Eigen::VectorXd& y = r.duals->y;
  std::vector<double> out_weights;
  for (Vertex v : r.output) out_weights.push_back(w[v]);
  double w_out = 0.0;
  for (double x : out_weights) w_out += x;
  rec.expect(is_independent(inst.graph(), r.output), "output is independent");
  rec.expect(compare_sums(out_weights, std::span<const double>(y.data(), y.size())) >= 0,
             "w(Sout) >= sum y", compare(w_out, ">=", y.sum()));
  bool feasible = (y.array() >= 0.0).all();
  for (Vertex v = 0; v < inst.n() && feasible; ++v) {
    double cover = y[v];
    for (Vertex u : backward_neighbors(*og, v)) cover += y[u];
    feasible = cover >= w[v] - kTol;
  }
  rec.expect(feasible, "y covers every weight");
  if (inst.n() > kBruteForceCap) return rec.skip("OPT <= k sum y", "n exceeds the brute-force cap");
  const double opt = brute_force_opt(inst.graph(), ModularFunction(w)).best_value;
  const int k = og->k();
  rec.expect(opt <= k * y.sum() + kRatioTol, "OPT <= k sum y", compare(opt, "<=", k * y.sum()));
  rec.expect(opt <= k * w_out + kRatioTol, "OPT <= k w(Sout)", compare(opt, "<=", k * w_out));
}

void randomized_suite(const Instance& inst, const std::string& path, const VerifyConfig& c,
                      const std::optional<double>& opt, std::vector<Check>& out) {
  Recorder rec(out, "randomized", path);
  if (!opt) return rec.skip("mean ratio", "n exceeds the brute-force cap");
  if (!inst.ordered()) return rec.skip("mean ratio", "instance has no ordering");
  const int trials = c.trials.value_or(kDefaultRandomizedTrials);
  for (Algo algo : {Algo::kRandomizedGreedy, Algo::kPrimalDualNonneg}) {
    const std::string name(algo_name(algo));
    double mean = 0.0;
    double m2 = 0.0;
    double guarantee = 0.0;
    for (int t = 0; t < trials; ++t) {
      const AlgoRun run = run_algorithm(inst, algo, c.overrides,
                                        trial_seed(c.seed, path, name, static_cast<std::uint64_t>(t)));
      guarantee = *run.guarantee;
      const double delta = run.run.value - mean;
      mean += delta / (t + 1);
      m2 += delta * (run.run.value - mean);
    }
    const double sd = trials > 1 ? std::sqrt(m2 / (trials - 1)) : 0.0;
    const double bound = *opt / guarantee - 4.0 * sd / std::sqrt(trials);
    rec.expect(mean >= bound, name + " mean >= OPT/factor - 4 sigma/sqrt(trials)",
               compare(mean, ">=", bound) + " over " + std::to_string(trials) + " trials");
  }
}

// A point of (b/k)Q: uniform in the box, shrunk until every row fits.
FractionalPoint random_point(const PackingPolytope& q, double b, Rng& rng) {
  FractionalPoint x(q.n);
  for (int v = 0; v < q.n; ++v) x[v] = rng.uniform();
  double worst = 1.0;
  for (const VertexSet& row : q.rows) {
    double total = 0.0;
    for (Vertex u : row) total += x[u];
    worst = std::max(worst, total / q.k);
  }
  return x * (b / q.k / worst);
}

BalanceTable balance_suite(const Instance& inst, const std::string& path, const VerifyConfig& c,
                           std::vector<Check>& out) {
  Recorder rec(out, "crs-balance", path);
  const OrientedGraph dg = effective_oriented(inst, c.overrides);
  const PackingPolytope q = build_polytope(dg);
  BalanceTable table;
  table.instance = path;
  table.b = c.overrides.b.value_or(0.5);
  table.trials = c.trials.value_or(kDefaultBalanceTrials);
  table.counts.assign(inst.n(), {0, 0, 0});
  const std::uint64_t seed = trial_seed(c.seed, path, "crs-balance", 0);
  Rng rng(seed);
  const FractionalPoint x = random_point(q, table.b, rng);
  bool independent = membership(q, x, table.b / q.k, 1e-9);
  rec.expect(independent, "point lies in (b/k)Q", {}, seed);
  for (int t = 0; t < table.trials; ++t) {
    const VertexSet r = sample_set(x, rng);
    const VertexSet det = crs_deterministic(dg, r);
    const VertexSet ran = crs_randomized(dg, x, r, rng);
    independent = independent && is_independent(dg.graph(), det) &&
                  is_independent(dg.graph(), ran);
    for (Vertex v : r) {
      auto& row = table.counts[v];
      ++row[0];
      row[1] += det.contains(v);
      row[2] += ran.contains(v);
    }
  }
  rec.expect(independent, "every rounded set is independent", {}, seed);
  bool det_ok = true;
  bool rand_ok = true;
  const auto holds = [](std::int64_t kept, std::int64_t present, double bound) {
    if (present == 0) return true;
    const double freq = static_cast<double>(kept) / present;
    return freq + 4.0 * std::sqrt(bound * (1.0 - bound) / present) >= bound;
  };
  for (const auto& row : table.counts) {
    det_ok = det_ok && holds(row[1], row[0], 1.0 - table.b);
    rand_ok = rand_ok && holds(row[2], row[0], std::exp(-table.b));
  }
  rec.expect(det_ok, "deterministic retention >= 1 - b", {}, seed);
  rec.expect(rand_ok, "randomized retention >= e^-b", {}, seed);
  return table;
}

std::vector<double> double_list(const nlohmann::json& j) { return j.get<std::vector<double>>(); }

void certificate_suite(const std::string& file, std::vector<Check>& out) {
  namespace fs = std::filesystem;
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(file + ": " + e.what());
  }
  if (!doc.is_array()) throw SchemaError(file + ": expected an array of result rows");
  std::map<std::string, Instance> cache;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const nlohmann::json& row = doc[i];
    if (!row.contains("output")) continue;
    fs::path path = row.at("instance").get<std::string>();
    if (!fs::exists(path) && path.is_relative()) path = fs::path(file).parent_path() / path;
    auto it = cache.find(path.string());
    if (it == cache.end()) it = cache.emplace(path.string(), read_instance(path)).first;
    const Instance& inst = it->second;
    const std::string algo = row.at("algorithm").get<std::string>();
    Recorder rec(out, "certificates", row.at("instance").get<std::string>());
    const std::string tag = "row " + std::to_string(i) + " (" + algo + ") ";
    const auto output_list = row.at("output").get<std::vector<Vertex>>();
    const VertexSet output(output_list);
    bool in_range = true;
    for (Vertex v : output) in_range = in_range && v >= 0 && v < inst.n();
    if (!in_range) {
      rec.expect(false, tag + "output vertices exist");
      continue;
    }
    rec.expect(is_independent(inst.graph(), output), tag + "output is independent");
    const double fv = inst.oracle().value(output);
    if (row.contains("value") && !row["value"].is_null()) {
      rec.expect(same_value(row["value"].get<double>(), fv), tag + "value is f(output)",
                 compare(row["value"].get<double>(), "vs", fv));
    }
    if (!row.contains("certificate")) continue;
    const nlohmann::json& cert = row["certificate"];
    RunResult r;
    r.output = output;
    r.value = fv;
    r.stack_final = VertexSet(cert.at("stack_final").get<std::vector<Vertex>>());
    DualCertificate d;
    const auto as_vector = [&](const char* key) {
      const std::vector<double> v = double_list(cert.at(key));
      if (static_cast<int>(v.size()) != inst.n()) {
        throw SchemaError(file + ": row " + std::to_string(i) + ": " + key + " has wrong length");
      }
      return Eigen::Map<const Eigen::VectorXd>(v.data(), inst.n()).eval();
    };
    d.w = as_vector("w");
    d.y = as_vector("y");
    d.z = as_vector("z");
    d.mu = cert.at("mu").get<double>();
    r.duals = d;
    rec.expect(output.is_subset_of(r.stack_final), tag + "output inside stack");
    if (algo == "pd-mwis") {
      const Eigen::VectorXd w = mwis_weights(inst, inst.oracle());
      double w_out = 0.0;
      for (Vertex v : output) w_out += w[v];
      rec.expect(w_out >= d.y.sum() - kTol, tag + "w(Sout) >= sum y", compare(w_out, ">=", d.y.sum()));
      bool feasible = (d.y.array() >= 0.0).all();
      if (inst.ordered()) {
        for (Vertex v = 0; v < inst.n() && feasible; ++v) {
          double cover = d.y[v];
          for (Vertex u : backward_neighbors(*inst.ordered(), v)) cover += d.y[u];
          feasible = cover >= w[v] - kTol;
        }
      }
      rec.expect(feasible, tag + "y covers every weight");
      continue;
    }
    rec.expect(fv >= d.w.sum() - kTol, tag + "f(Sout) >= sum w", compare(fv, ">=", d.w.sum()));
    rec.expect(same_value(d.mu, inst.oracle().value(r.stack_final)), tag + "mu is f(stack)",
               compare(d.mu, "vs", inst.oracle().value(r.stack_final)));
    if (algo != "pd") continue;
    if (!inst.ordered() || inst.n() > kDualCap) {
      rec.skip(tag + "dual feasibility", "needs an ordered instance with n <= 16");
    } else {
      rec.expect(verify_dual_feasibility_monotone(r, *inst.ordered(), inst.oracle()),
                 tag + "dual feasibility");
    }
  }
}

ordered_json check_json(const Check& c) {
  ordered_json j;
  j["suite"] = c.suite;
  j["instance"] = c.instance;
  j["check"] = c.name;
  j["status"] = std::string(status_name(c.status));
  j["detail"] = c.detail;
  j["seed"] = c.seed ? ordered_json(*c.seed) : ordered_json(nullptr);
  return j;
}

}  // namespace

int cmd_verify(const VerifyConfig& config, std::ostream& out, std::ostream& err) {
  std::set<std::string> suites(config.suites.begin(), config.suites.end());
  if (suites.empty()) {
    suites.insert(kSuites.begin(), kSuites.end());
    if (!config.certificates) suites.erase("certificates");
  }
  if (suites.count("certificates") && !config.certificates) {
    err << "error: the certificates suite needs --certificates\n";
    return 2;
  }

  std::vector<Instance> instances;
  for (const std::string& path : config.instances) {
    try {
      instances.push_back(read_instance(path));
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
  }

  std::vector<InstanceReport> reports(instances.size());
  parallel_for(instances.size(), [&](std::size_t i) {
    const Instance& inst = instances[i];
    const std::string& path = config.instances[i];
    auto& checks = reports[i].checks;
    std::optional<double> opt;
    if ((suites.count("dual") || suites.count("ratio") || suites.count("randomized")) &&
        inst.n() <= kBruteForceCap) {
      opt = brute_force_opt(inst.graph(), inst.oracle()).best_value;
    }
    if (suites.count("structural")) structural_suite(inst, path, config, checks);
    if (suites.count("dual")) dual_suite(inst, path, config, opt, checks);
    if (suites.count("ratio")) ratio_suite(inst, path, config, opt, checks);
    if (suites.count("mwis")) mwis_suite(inst, path, config, checks);
    if (suites.count("randomized")) randomized_suite(inst, path, config, opt, checks);
    if (suites.count("crs-balance")) reports[i].balance = balance_suite(inst, path, config, checks);
  });

  std::vector<Check> checks;
  for (const InstanceReport& r : reports) checks.insert(checks.end(), r.checks.begin(), r.checks.end());
  if (suites.count("certificates")) {
    try {
      certificate_suite(*config.certificates, checks);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
  }

  int counts[3] = {0, 0, 0};
  for (const Check& c : checks) {
    ++counts[static_cast<int>(c.status)];
    out << status_name(c.status) << "  " << c.suite << "  " << c.instance << "  " << c.name;
    if (!c.detail.empty()) out << "  [" << c.detail << "]";
    if (c.seed) out << "  seed=" << *c.seed;
    out << "\n";
  }
  ordered_json tables = ordered_json::array();
  for (const InstanceReport& r : reports) {
    if (!r.balance) continue;
    const BalanceTable& t = *r.balance;
    out << "\nretention for " << t.instance << " (b=" << format_number(t.b)
        << ", trials=" << t.trials << ")\n";
    out << "vertex  present  det_freq  rand_freq\n";
    ordered_json rows = ordered_json::array();
    for (std::size_t v = 0; v < t.counts.size(); ++v) {
      const auto& row = t.counts[v];
      const auto freq = [&](std::int64_t kept) {
        return row[0] > 0 ? static_cast<double>(kept) / row[0] : 0.0;
      };
      char line[128];
      std::snprintf(line, sizeof line, "%6zu  %7lld  %8.4f  %9.4f\n", v,
                    static_cast<long long>(row[0]), freq(row[1]), freq(row[2]));
      out << line;
      rows.push_back({{"vertex", v}, {"present", row[0]}, {"kept_det", row[1]},
                      {"kept_rand", row[2]}});
    }
    tables.push_back({{"instance", t.instance}, {"b", t.b}, {"trials", t.trials},
                      {"vertices", std::move(rows)}});
  }
  out << "\nverify: " << counts[0] << " passed, " << counts[1] << " failed, " << counts[2]
      << " skipped\n";

  if (config.report) {
    ordered_json doc;
    doc["passed"] = counts[1] == 0;
    doc["counts"] = {{"pass", counts[0]}, {"fail", counts[1]}, {"skip", counts[2]}};
    ordered_json list = ordered_json::array();
    for (const Check& c : checks) list.push_back(check_json(c));
    doc["checks"] = std::move(list);
    doc["balance"] = std::move(tables);
    std::ofstream file(*config.report, std::ios::binary);
    file << doc.dump(1) << "\n";
    if (!file) {
      err << "error: failed writing " << *config.report << "\n";
      return 2;
    }
  }
  return counts[1] == 0 ? 0 : 1;
}

}  // namespace subsetmax::cli
