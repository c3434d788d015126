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

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"
#include "subsetmax/instances.hpp"

namespace fs = std::filesystem;
using subsetmax::cli::run_cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "subsetmax_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void spit(const fs::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

const char* kPathInstance = R"({
  "n": 3, "k": 1, "edges": [[0, 1], [1, 2]], "ordering": [0, 1, 2],
  "function": {"type": "modular", "weights": [1, 3, 1]},
  "metadata": {"generator": "manual", "seed": 0}
})";

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

TEST_CASE("gen writes the requested files and is repeatable") {
  const fs::path a = fresh_dir("gen_a");
  const fs::path b = fresh_dir("gen_b");
  const Result first = cli({"gen", "--class", "interval", "--n", "12", "--count", "50", "--seed",
                            "7", "--out-dir", a.string()});
  REQUIRE(first.code == 0);
  CHECK(csv_lines(first.out).size() == 50);
  REQUIRE(cli({"gen", "--class", "interval", "--n", "12", "--count", "50", "--seed", "7",
               "--out-dir", b.string()})
              .code == 0);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    ++files;
    CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
  }
  CHECK(files == 50);

  for (const char* cls : {"line", "degenerate", "cycle"}) {
    const fs::path dir = fresh_dir(std::string("gen_") + cls);
    CHECK(cli({"gen", "--class", cls, "--n", "8", "--count", "2", "--function", "cut",
               "--out-dir", dir.string()})
              .code == 0);
  }
}

TEST_CASE("usage errors exit with code 2") {
  const Result unknown = cli({"gen", "--class", "banana", "--n", "3"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("banana") != std::string::npos);
  CHECK(cli({}).code == 2);
  CHECK(cli({"run", "--algo", "simplex"}).code == 2);
  CHECK(cli({"run", "/nonexistent/instance.json"}).code == 2);
  CHECK(cli({"verify", "--suite", "certificates"}).code == 2);
  CHECK(cli({"gen", "--class", "cycle", "--n", "2", "--out-dir", fresh_dir("bad").string()})
            .code == 2);
  const Result help = cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("verify") != std::string::npos);
}

TEST_CASE("run on the weighted path") {
  const fs::path dir = fresh_dir("path");
  const fs::path inst = dir / "path.json";
  spit(inst, kPathInstance);
  const Result r = cli({"run", inst.string(), "--algo", "pd"});
  REQUIRE(r.code == 0);
  const auto lines = csv_lines(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == subsetmax::kResultsHeader);
  const auto cells = split(lines[1]);
  REQUIRE(cells.size() == 10);
  CHECK(cells[1] == "pd");
  CHECK(cells[4] == "3");
  CHECK(cells[5] == "3");
  CHECK(cells[6] == "1");
  CHECK(cells[7] == "4");
  CHECK(cells[9].empty());

  const Result timed = cli({"run", inst.string(), "--algo", "pd", "--timing"});
  CHECK_FALSE(split(csv_lines(timed.out)[1])[9].empty());
}

TEST_CASE("run with no instances writes only the header") {
  const Result r = cli({"run"});
  CHECK(r.code == 0);
  CHECK(r.out == std::string(subsetmax::kResultsHeader) + "\n");
}

TEST_CASE("run reports incompatible algorithms per row") {
  const fs::path dir = fresh_dir("cycle");
  REQUIRE(cli({"gen", "--class", "cycle", "--n", "6", "--out-dir", dir.string()}).code == 0);
  const fs::path inst = *fs::directory_iterator(dir);
  const Result r = cli({"run", inst.string(), "--algo", "greedy", "--algo", "crs-det",
                        "--rounds", "20"});
  CHECK(r.code == 0);
  const auto lines = csv_lines(r.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[1].find("needs an ordered instance") != std::string::npos);
  CHECK(split(lines[2])[4] != "");
}

TEST_CASE("run output is byte-identical across reruns and worker counts") {
  const fs::path dir = fresh_dir("determinism");
  REQUIRE(cli({"gen", "--class", "degenerate", "--n", "10", "--count", "3", "--function", "cut",
               "--seed", "3", "--out-dir", dir.string()})
              .code == 0);
  std::vector<std::string> args{"run"};
  for (const auto& entry : fs::directory_iterator(dir)) args.push_back(entry.path().string());
  std::sort(args.begin() + 1, args.end());
  for (const char* extra : {"--trials", "4", "--seed", "11", "--rounds", "20", "--steps", "20"}) {
    args.push_back(extra);
  }
  setenv("SUBSETMAX_THREADS", "1", 1);
  const Result one = cli(args);
  setenv("SUBSETMAX_THREADS", "4", 1);
  const Result four = cli(args);
  const Result again = cli(args);
  unsetenv("SUBSETMAX_THREADS");
  REQUIRE(one.code == 0);
  CHECK(one.out == four.out);
  CHECK(four.out == again.out);
  CHECK(csv_lines(one.out).size() == 1 + 3 * (3 + 4 * 4));

  args.push_back("--seed");
  args.push_back("12");
  CHECK(cli(args).out != one.out);
}

TEST_CASE("json output and certificate verification") {
  const fs::path dir = fresh_dir("certs");
  REQUIRE(cli({"gen", "--class", "interval", "--n", "9", "--count", "2", "--function",
               "coverage", "--out-dir", dir.string()})
              .code == 0);
  std::vector<std::string> args{"run", "--format", "json", "--algo", "pd", "--algo", "pd-mwis",
                                "--out", (dir / "results.json").string()};
  for (const auto& entry : fs::directory_iterator(dir)) args.push_back(entry.path().string());
  REQUIRE(cli(args).code == 0);

  const Result good = cli({"verify", "--certificates", (dir / "results.json").string()});
  CHECK(good.code == 0);
  CHECK(good.out.find("0 failed") != std::string::npos);

  auto doc = nlohmann::json::parse(slurp(dir / "results.json"));
  REQUIRE(doc.size() == 4);
  CHECK(doc[0].contains("certificate"));
  doc[0]["certificate"]["mu"] = doc[0]["certificate"]["mu"].get<double>() - 1.0;
  spit(dir / "corrupted.json", doc.dump());
  const Result bad = cli({"verify", "--certificates", (dir / "corrupted.json").string()});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("FAIL") != std::string::npos);
  CHECK(bad.out.find(doc[0]["instance"].get<std::string>()) != std::string::npos);

  spit(dir / "garbage.json", "{not json");
  CHECK(cli({"verify", "--certificates", (dir / "garbage.json").string()}).code == 2);
}

TEST_CASE("verify suites pass on generated instances") {
  const fs::path dir = fresh_dir("verify");
  REQUIRE(cli({"gen", "--class", "line", "--n", "9", "--count", "2", "--function", "coverage",
               "--out-dir", dir.string()})
              .code == 0);
  REQUIRE(cli({"gen", "--class", "cycle", "--n", "7", "--count", "1", "--out-dir",
               dir.string()})
              .code == 0);
  std::vector<std::string> args{"verify", "--trials", "300", "--report",
                                (dir / "report.json").string()};
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") args.push_back(entry.path().string());
  }
  const Result r = cli(args);
  CHECK(r.code == 0);
  CHECK(r.out.find("retention for") != std::string::npos);
  const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(report["passed"] == true);
  CHECK(report["counts"]["fail"] == 0);
  CHECK(report["balance"].size() == 3);
}

TEST_CASE("crs-balance suite prints a per-vertex table") {
  const fs::path dir = fresh_dir("balance");
  REQUIRE(cli({"gen", "--class", "cycle", "--n", "5", "--out-dir", dir.string()}).code == 0);
  const fs::path inst = *fs::directory_iterator(dir);
  const Result r = cli({"verify", inst.string(), "--suite", "crs-balance", "--trials", "20000"});
  CHECK(r.code == 0);
  CHECK(r.out.find("vertex  present  det_freq  rand_freq") != std::string::npos);
  CHECK(csv_lines(r.out).size() >= 5 + 5);
}
