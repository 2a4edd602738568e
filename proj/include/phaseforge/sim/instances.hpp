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

#include "phaseforge/sim/advice.hpp"
#include "phaseforge/sim/oracle.hpp"
#include "phaseforge/sim/rng.hpp"

namespace phaseforge {

/// U_theta = I - (1 - e^{i theta}) |0><0| on an n-dimensional space.
BlackBoxUnitary u_theta(double theta, std::size_t n = 2);

/// M_{j,delta} = I - (1 - e^{i delta}) |j><j| on an n-dimensional space.
BlackBoxUnitary m_j_delta(std::size_t n, std::size_t j, double delta);

/// A fractional-OR input: the oracle together with its advice copies.
struct FrorInstance {
  BlackBoxUnitary oracle;
  AdviceSource advice;
};

/// Input j of the fractional-OR family. j = 0 is the identity with advice
/// |0>; j >= 1 is M_{j,delta} with advice gamma|j> + sqrt(1-gamma^2)|0>.
/// The advice source holds `t` copies.
FrorInstance make_fror_instance(std::size_t n, double delta, std::size_t j, double gamma,
                                std::uint64_t t);

/// The single-copy advice state of input j.
PureState fror_advice_state(std::size_t n, std::size_t j, double gamma);

/// |psi>^{(x) t} with one register per copy. t = 0 gives the scalar state.
PureState tensor_power(const PureState& psi, std::uint64_t t);

/// Haar-random unitary (QR of a complex Gaussian with the phase fix).
Matrix haar_unitary(std::size_t n, Rng& rng);

/// A unitary whose first column is `alpha` (a phase-corrected Householder
/// reflection). `alpha` must be a unit vector.
Matrix unitary_with_first_column(const Vector& alpha);

}  // namespace phaseforge
