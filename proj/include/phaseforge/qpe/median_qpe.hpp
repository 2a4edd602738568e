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

#include "phaseforge/qpe/kitaev.hpp"
#include "phaseforge/sim/oracle.hpp"
#include "phaseforge/sim/rng.hpp"

namespace phaseforge {

struct PhaseEstimateResult {
  double estimate;          // in [0, 2pi)
  double precision_delta;
  double error_epsilon;
  CostLedger ledger_snapshot;
};

/// Number of phase bits for precision delta: ceil(log2(2 pi / delta)) + 2.
unsigned median_qpe_bits(double delta);
/// Number of repetitions for error epsilon: ceil(18 ln(1 / epsilon)), rounded
/// up to the next odd number.
std::size_t median_qpe_repetitions(double epsilon);
/// Oracle cost of one median_qpe call: r (2^m - 1).
std::uint64_t median_qpe_cost(double delta, double epsilon);

/// Runs r independent phase-estimation rounds and returns their circular
/// median. The cost is charged to `ledger`; the snapshot in the result is the
/// ledger state after the call.
PhaseEstimateResult median_qpe(const BlackBoxUnitary& u, const PureState& eigenstate, double delta,
                               double epsilon, CostLedger& ledger, Rng& rng,
                               QpeCircuit circuit = QpeCircuit::kSemiclassical);

/// Exact distribution of median_qpe's grid output for an eigenstate with
/// per-round outcome distribution `round` (for instance from
/// kitaev_distribution).
std::vector<double> median_qpe_distribution(std::span<const double> round, std::size_t r);

/// Decides between U = I and U = U_theta with theta outside [-3 delta, 3 delta]:
/// estimates the phase of |0> and answers 1 iff the estimate lies within
/// delta of 0. delta must lie in (0, 1/2).
bool dist_solver(const BlackBoxUnitary& u, double delta, double epsilon, CostLedger& ledger,
                 Rng& rng, QpeCircuit circuit = QpeCircuit::kSemiclassical);

/// Exact probability that dist_solver answers 1, obtained from one
/// statevector simulation of a phase-estimation round plus exact median
/// combinatorics. Charges the oracle calls of that single simulated round.
double dist_acceptance_probability(const BlackBoxUnitary& u, double delta, double epsilon,
                                   CostLedger& ledger);

}  // namespace phaseforge
