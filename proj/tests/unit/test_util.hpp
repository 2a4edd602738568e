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

#include <cmath>

#include "phaseforge/sim/pure_state.hpp"
#include "phaseforge/sim/rng.hpp"

namespace phaseforge::testing {

inline Vector random_unit_vector(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = Complex(g(rng), g(rng));
  return v / v.norm();
}

inline PureState random_state(const RegisterLayout& layout, Rng& rng) {
  return PureState(layout, random_unit_vector(layout.dim(), rng));
}

inline double max_abs_diff(const Vector& a, const Vector& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// Three-sigma half width of a binomial proportion, floored so that
/// near-degenerate probabilities still get a sane margin.
inline double three_sigma(double p, std::size_t n) {
  return 3.0 * std::sqrt(std::max(p * (1 - p), 1e-4) / static_cast<double>(n));
}

}  // namespace phaseforge::testing
