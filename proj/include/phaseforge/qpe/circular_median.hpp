// Copyright 2026 The phaseforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <vector>

namespace phaseforge {

/// Median of an odd number of points on the cyclic grid Z_M (M divisible
/// by 4), using one of two cuts of the circle.
///
/// Let h = (r + 1) / 2 and mid = [M/4, 3M/4). If at least h samples lie in
/// mid, the circle is cut at 0 and the ordinary median is returned.
/// Otherwise at least h samples lie in the opposite half, so the circle is
/// cut at M/2 instead. Whenever more than half of the samples lie in an arc
/// of length below M/4, the chosen cut avoids that arc and the result lies
/// inside it.
std::size_t circular_median(std::span<const std::size_t> samples, std::size_t grid);

/// Exact distribution of circular_median over r i.i.d. samples with
/// per-sample distribution q (length M). O(M r^2).
std::vector<double> circular_median_distribution(std::span<const double> q, std::size_t r);

/// Probability that the circular median lands in the cyclic arc
/// {lo, ..., lo + len - 1} (mod M). O(M + r^2).
double circular_median_arc_probability(std::span<const double> q, std::size_t r, std::size_t lo,
                                       std::size_t len);

/// Probability that the circular median lands in the cyclic window
/// {c - w, ..., c + w} (mod M). O(M + r^2), independent of the window width.
double circular_median_window_probability(std::span<const double> q, std::size_t r,
                                          std::size_t center, std::size_t half_width);

}  // namespace phaseforge
