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
#include <vector>

#include "phaseforge/certify/circuit.hpp"
#include "phaseforge/certify/records.hpp"

namespace phaseforge {

/// Progress of an algorithm run on all N inputs of the fractional-OR family
/// at once: input 0 is the identity, input j >= 1 is M_{j, angle}, and input
/// j starts from t copies of its advice state followed by |0>.
struct ProgressTrace {
  std::size_t n = 0;
  double angle = 0;  // the family's phase angle
  double gamma = 0;
  std::uint64_t t_advice = 0;
  /// values[T] = sum_{j >= 1} |<psi_0|psi_j>| after T oracle steps.
  std::vector<double> values;
  /// values[T] - values[T + 1].
  std::vector<double> per_step_drops;
  /// |<psi_0|psi_j>| at the end, for j = 1..N-1.
  std::vector<double> final_overlaps;

  void check_invariants() const;
};

/// (N - 1) (1 - gamma^2)^{t/2}.
double initial_progress(std::size_t n, double gamma, std::uint64_t t_advice);

/// |1 - e^{i angle}| sqrt(N - 1), with |1 - e^{i angle}| = 2 sin(angle / 2).
double progress_step_bound(std::size_t n, double angle);

/// Runs `alg` on every input of the family, in lockstep, and records the
/// progress measure before each oracle step and at the end. The first
/// `t_advice` registers of the layout receive the advice copies and must
/// have dimension n; every oracle step must target a dimension-n register.
/// Throws std::invalid_argument if `alg` measures mid-circuit and
/// std::length_error if its cost exceeds `cost_cap`.
ProgressTrace adversary_progress(const OracleCircuit& alg, std::size_t n, double angle,
                                 double gamma, std::uint64_t t_advice, std::uint64_t cost_cap);

struct StepBoundReport {
  double bound = 0;
  double max_drop = 0;
  double slack = 0;  // bound - max_drop
  std::size_t violations = 0;
  bool passed = true;

  Records records() const;
};

/// Checks every drop against progress_step_bound + 1e-9. Violations are
/// counted, never thrown.
StepBoundReport verify_step_bound(const ProgressTrace& trace);

/// Unitary transcript of the adviceless max-phase driver on an n-level
/// system: V~ = (maximally entangled preparer) then one `bits`-bit
/// estimation register, followed by `rounds` amplification rounds that flip
/// the sign of every nonzero estimate and reflect about V~|0>. Registers:
/// system (n), mirror (n), estimate (2^bits). Cost (2 rounds + 1)(2^bits - 1).
OracleCircuit adviceless_transcript(std::size_t n, unsigned bits, std::size_t rounds);

/// One advice register: a reflection sending |0> to the uniform
/// superposition of |1>..|n-1>, then one oracle call. With one advice copy
/// of large overlap its single drop comes close to the bound.
OracleCircuit targeted_drop_circuit(std::size_t n);

}  // namespace phaseforge
