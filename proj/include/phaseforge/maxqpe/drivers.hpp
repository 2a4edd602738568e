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
#include <utility>
#include <vector>

#include "phaseforge/maxqpe/v_tilde.hpp"

namespace phaseforge {

/// How max_find sees V~.
enum class VTildeSimulation {
  /// Exact two-level compression: only the value distribution of V~|0>
  /// matters, since max_find touches V~ through preparation and the
  /// reflection about V~|0> alone. Charges the same costs per use.
  kSector,
  /// The explicit circuit of build_v_tilde on a statevector.
  kDense,
};

/// Runs max_find over V~ and returns the decoded angle in [0, 2 pi).
/// `a` must be a preparer.
double max_phase_estimate(const BlackBoxUnitary& u, const AdviceSource& a, const MaxQpeConfig& cfg,
                          CostLedger& ledger, std::uint64_t seed,
                          VTildeSimulation sim = VTildeSimulation::kSector);

/// Preparer of (1/sqrt(n)) sum_j |j>|j> on (system, mirror), declared gamma
/// 1/sqrt(n). Preparing it costs nothing.
AdviceSource maximally_entangled_preparer(std::size_t n);

/// Rows 1, 3, 5, 7: no advice. N = u.dim() must be a power of two.
double maxqpe_adviceless(const BlackBoxUnitary& u, double delta, CostLedger& ledger,
                         std::uint64_t seed, VTildeSimulation sim = VTildeSimulation::kSector);

/// Rows 6, 8: the advice unitary with its declared gamma.
double maxqpe_with_advice_unitary(const BlackBoxUnitary& u, const AdviceSource& a, double delta,
                                  CostLedger& ledger, std::uint64_t seed,
                                  VTildeSimulation sim = VTildeSimulation::kSector);

/// Upper bound on the number of reflections about V~|0> that max_find makes
/// per 1/gamma (its budget is C / gamma, each reflection uses V~ twice).
inline constexpr double kReflectionCountBound = 12.0;

/// LMR steps, hence copies, per reflection about |alpha>: the reflection is
/// run at error gamma / (100 kReflectionCountBound).
std::uint64_t copies_per_reflection(double gamma);

enum class CopiesMode {
  /// Exact reflections; copies are debited at the LMR rate.
  kAccounting,
  /// Density-matrix simulation of every LMR step (small dimensions only).
  kFaithful,
};

/// Rows 2, 4: a preparation consumes one copy; a reflection consumes
/// copies_per_reflection(gamma) copies. Throws BudgetExhausted when the
/// stock runs out, and std::length_error in faithful mode when the joint
/// density matrix would exceed 64 x 64.
double maxqpe_with_advice_copies(const BlackBoxUnitary& u, AdviceSource& copies,
                                 const MaxQpeConfig& cfg, CopiesMode mode, CostLedger& ledger,
                                 std::uint64_t seed);
double maxqpe_with_advice_copies(const BlackBoxUnitary& u, AdviceSource& copies, double delta,
                                 CopiesMode mode, CostLedger& ledger, std::uint64_t seed);

/// Exact output distribution of the copies driver, as (angle, probability)
/// over the value grid. Nothing is charged.
std::vector<std::pair<double, double>> copies_output_distribution(const BlackBoxUnitary& u,
                                                                  const AdviceSource& copies,
                                                                  const MaxQpeConfig& cfg,
                                                                  CopiesMode mode);

/// Exact output distribution of max_phase_estimate.
std::vector<std::pair<double, double>> max_phase_output_distribution(
    const BlackBoxUnitary& u, const AdviceSource& a, const MaxQpeConfig& cfg,
    VTildeSimulation sim = VTildeSimulation::kSector);

/// Smallest r >= 0 with sin((2r+1) asin(1/sqrt(n))) >= gamma.
std::size_t grover_iterations(std::size_t n, double gamma);

/// Preparer built from Grover search with U^k, k = pi / (3 delta), as the
/// marking query: on U = M_{j, 3 delta}, U^k = I - 2|j><j|. Each use of the
/// preparer charges k * grover_iterations(n, gamma) oracle calls. Throws
/// std::invalid_argument unless pi / (3 delta) is an integer.
AdviceSource grover_advice_builder(const BlackBoxUnitary& u, double gamma, double delta);

/// A test instance with its ground truth.
struct MaxQpeInstance {
  BlackBoxUnitary u;
  double theta_max;
  Vector top_vector;   // eigenvector with phase theta_max
  Spectrum spectrum;   // ground-truth eigen-decomposition
};

/// theta_max uniform in [pi, 2 pi - 2 delta]; each other phase is 0 with
/// probability 1/4 and otherwise uniform in [2 delta, theta_max - 2 delta].
/// A known basis gives a diagonal U; otherwise U = W D W^dagger, W Haar.
MaxQpeInstance make_maxqpe_instance(std::size_t n, double delta, bool known_basis, Rng& rng);

/// gamma |top> + sqrt(1 - gamma^2) |rest>, with |rest> a random unit vector
/// in the span of the other eigenvectors.
PureState advice_with_overlap(const MaxQpeInstance& inst, double gamma, Rng& rng);

/// Runs max-phase driver `row` (1..8) on a fresh instance-specific advice
/// (drawn from `rng` when the row uses advice). Copies rows use accounting
/// mode with an unbounded stock.
double run_maxqpe_row(int row, const MaxQpeInstance& inst, double gamma, double delta,
                      CostLedger& ledger, Rng& rng);

/// True for rows whose eigenbasis is known (diagonal U).
bool row_has_known_basis(int row);

}  // namespace phaseforge
