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

#include <vector>

#include "phaseforge/sim/oracle.hpp"
#include "phaseforge/sim/pure_state.hpp"
#include "phaseforge/sim/rng.hpp"

namespace phaseforge {

/// Circuit used to realize one phase-estimation run. Both have identical
/// outcome distributions and identical oracle cost 2^m - 1.
enum class QpeCircuit {
  kRegister,      // m-qubit phase register, controlled powers, inverse QFT
  kSemiclassical  // one recycled control qubit with measured feedback
};

/// One run of textbook phase estimation on register 0 of `input`.
/// Returns the measured m-bit integer k (the estimate is 2 pi k / 2^m).
/// Charges exactly 2^m - 1 oracle calls.
std::size_t kitaev_qpe(const BlackBoxUnitary& u, const PureState& input, unsigned m,
                       CostLedger& ledger, Rng& rng, QpeCircuit circuit = QpeCircuit::kRegister);

/// Angle form of kitaev_qpe.
double kitaev_qpe_angle(const BlackBoxUnitary& u, const PureState& input, unsigned m,
                        CostLedger& ledger, Rng& rng, QpeCircuit circuit = QpeCircuit::kRegister);

/// Exact outcome distribution of the register circuit, read off the phase
/// register of the final statevector. Charges 2^m - 1 oracle calls.
std::vector<double> kitaev_distribution(const BlackBoxUnitary& u, const PureState& input,
                                        unsigned m, CostLedger& ledger);

/// Closed form for an eigenstate with phase theta:
/// sin^2(2^{m-1} D) / (2^{2m} sin^2(D / 2)) with D = theta - 2 pi k / 2^m.
double fejer_probability(double theta, std::size_t k, unsigned m);
std::vector<double> fejer_distribution(double theta, unsigned m);

}  // namespace phaseforge
