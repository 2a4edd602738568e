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

#include <cstdint>

#include "phaseforge/sim/pure_state.hpp"
#include "phaseforge/sim/rng.hpp"

namespace phaseforge {

struct MeasurementResult {
  std::size_t outcome;
  PureState collapsed;
  double probability;
};

/// Projective measurement of one register in its computational basis.
MeasurementResult measure_register(const PureState& state, std::size_t reg, Rng& rng);
MeasurementResult measure_register(const PureState& state, std::size_t reg, std::uint64_t seed);

}  // namespace phaseforge
