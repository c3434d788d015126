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

#include <span>

namespace subsetmax {

// Sign (-1, 0 or 1) of sum(lhs) - sum(rhs), computed without rounding error
// by accumulating a floating-point expansion. Inputs must be finite.
int compare_sums(std::span<const double> lhs, std::span<const double> rhs);

// Largest double not exceeding sum(lhs) - sum(rhs). Inputs must be finite.
double difference_rounded_down(std::span<const double> lhs, std::span<const double> rhs);

}  // namespace subsetmax
