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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cli_common.hpp"

namespace subsetmax::cli {

struct GenConfig {
  std::string graph_class;
  int n = 12;
  int count = 1;
  std::uint64_t seed = 0;
  std::string function = "modular";
  double edge_prob = 0.3;
  std::optional<int> base_n;
  std::string out_dir = ".";
};

struct RunConfig {
  std::vector<std::string> instances;
  std::vector<std::string> algos;
  Overrides overrides;
  int trials = 1;
  std::uint64_t seed = 0;
  std::string out = "-";
  std::string format = "csv";
  std::string opt = "auto";
  bool timing = false;
};

struct VerifyConfig {
  std::vector<std::string> instances;
  std::vector<std::string> suites;
  std::optional<std::string> certificates;
  std::optional<int> trials;
  std::uint64_t seed = 0;
  Overrides overrides;
  std::optional<std::string> report;
};

inline const std::vector<std::string> kGraphClasses = {"interval", "line", "degenerate", "cycle"};
inline const std::vector<std::string> kSuites = {"structural", "dual",        "ratio",
                                                 "mwis",       "randomized",  "crs-balance",
                                                 "certificates"};

int cmd_gen(const GenConfig& config, std::ostream& out, std::ostream& err);
int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyConfig& config, std::ostream& out, std::ostream& err);

}  // namespace subsetmax::cli
