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

#include "phaseforge/sim/measure.hpp"

namespace phaseforge {

MeasurementResult measure_register(const PureState& state, std::size_t reg, Rng& rng) {
  if (reg >= state.layout().size()) throw DimensionError("no such register");
  const std::vector<double> p = state.marginal(reg);
  const std::size_t k = sample_index(p, rng);
  PureState collapsed = state;
  const double prob = collapsed.project(reg, k);
  return {k, std::move(collapsed), prob};
}

MeasurementResult measure_register(const PureState& state, std::size_t reg, std::uint64_t seed) {
  Rng rng(seed);
  return measure_register(state, reg, rng);
}

}  // namespace phaseforge
