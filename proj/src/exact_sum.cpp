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

#include "subsetmax/exact_sum.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace subsetmax {
namespace {

// Error-free transformation: a + b == sum + err exactly.
void two_sum(double a, double b, double& sum, double& err) {
  sum = a + b;
  const double bb = sum - a;
  err = (a - (sum - bb)) + (b - bb);
}

// Adds x to a nonoverlapping expansion ordered by increasing magnitude,
// dropping zero components.
void grow(std::vector<double>& expansion, double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("compare_sums needs finite inputs");
  std::vector<double> next;
  next.reserve(expansion.size() + 1);
  double q = x;
  for (double e : expansion) {
    double h;
    two_sum(q, e, q, h);
    if (h != 0.0) next.push_back(h);
  }
  if (q != 0.0) next.push_back(q);
  expansion.swap(next);
}

std::vector<double> difference_expansion(std::span<const double> lhs,
                                        std::span<const double> rhs) {
  std::vector<double> expansion;
  for (double x : lhs) grow(expansion, x);
  for (double x : rhs) grow(expansion, -x);
  return expansion;
}

int sign(const std::vector<double>& expansion) {
  if (expansion.empty()) return 0;
  return expansion.back() > 0.0 ? 1 : -1;
}

}  // namespace

int compare_sums(std::span<const double> lhs, std::span<const double> rhs) {
  return sign(difference_expansion(lhs, rhs));
}

double difference_rounded_down(std::span<const double> lhs, std::span<const double> rhs) {
  const std::vector<double> expansion = difference_expansion(lhs, rhs);
  double d = 0.0;
  for (double e : expansion) d += e;
  for (;;) {
    std::vector<double> rest = expansion;
    grow(rest, -d);
    if (sign(rest) >= 0) return d;
    d = std::nextafter(d, -std::numeric_limits<double>::infinity());
  }
}

}  // namespace subsetmax
