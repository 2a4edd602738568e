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

#include "phaseforge/sim/advice.hpp"
#include "phaseforge/sim/density_state.hpp"

namespace phaseforge {

/// Step-count constant for the reflection: ceil(c * pi^2 / eta) partial-swap
/// steps give a channel within eta of the exact reflection. For a pure copy
/// in dimension d the error times n / pi^2 rises towards about 2 - 1.6/d
/// (measured for d = 2 to 16), so 2 covers every dimension.
inline constexpr double kLmrConstant = 2.0;

/// A linear map on d x d matrices, stored as its d^2 x d^2 Liouville matrix
/// with column-stacking vectorization: vec(A X B) = (B^T (x) A) vec(X).
class QuantumChannel {
 public:
  QuantumChannel() = default;
  explicit QuantumChannel(Matrix liouville);

  static QuantumChannel identity(std::size_t d);
  /// X -> W X W^dagger.
  static QuantumChannel unitary(const Matrix& w);

  std::size_t dim() const { return dim_; }
  const Matrix& liouville() const { return liouville_; }

  Matrix apply(const Matrix& x) const;
  /// Acts on the whole density matrix; the layout is kept.
  DensityState apply(const DensityState& rho) const;

  /// Choi matrix sum_ij |i><j| (x) E(|i><j|); trace d for trace-preserving maps.
  Matrix choi() const;

  /// Throws InvariantViolation unless the Choi matrix is PSD within
  /// `psd_tol` and the map preserves trace within `tp_tol`.
  void check_invariants(double psd_tol = 1e-8, double tp_tol = 1e-9) const;

  /// This channel applied `n` times.
  QuantumChannel power(std::uint64_t n) const;

 private:
  std::size_t dim_ = 0;
  Matrix liouville_;
};

/// a after b.
QuantumChannel compose(const QuantumChannel& a, const QuantumChannel& b);

/// Trace norm of the difference of the Choi matrices divided by d. This is
/// a lower bound on the diamond distance; it equals 2 for two unitary
/// channels whose Choi states are orthogonal.
double channel_distance(const QuantumChannel& a, const QuantumChannel& b);

/// Tr_copy[ e^{-iS dt} (system (x) copy) e^{iS dt} ] with S the swap,
/// computed literally on the joint space.
DensityState partial_swap_step(const DensityState& system, const DensityState& copy, double dt);

/// The same step as a channel on the system:
/// X -> cos^2(dt) X + sin^2(dt) Tr(X) sigma - i cos(dt) sin(dt) [sigma, X].
QuantumChannel partial_swap_channel(const Matrix& sigma, double dt);

/// n partial-swap steps against fresh copies of sigma, approximating
/// X -> e^{i t sigma} X e^{-i t sigma}. Consumes exactly n copies.
QuantumChannel lmr_exponentiate(AdviceSource& copies, double t, std::uint64_t n_steps,
                                CostLedger& ledger);

/// ceil(c * pi^2 / eta).
std::uint64_t lmr_reflection_steps(double eta, double c = kLmrConstant);

/// lmr_exponentiate with t = pi and lmr_reflection_steps(eta) steps: an
/// approximation of conjugation by I - 2|alpha><alpha|.
QuantumChannel reflection_from_copies(AdviceSource& copies, double eta, CostLedger& ledger);

/// n LMR steps with generator sigma on register `target`, coherently
/// controlled by the other registers: the exponentiation acts on the branch
/// where the joint index of all other registers satisfies `active`, and the
/// identity acts elsewhere. The n-step maps are computed once at
/// construction. Applying it does not touch any ledger.
class ControlledLmr {
 public:
  ControlledLmr(const RegisterLayout& layout, std::size_t target, const Matrix& sigma, double t,
                std::uint64_t n_steps, std::vector<bool> active);

  void apply(DensityState& rho) const;

 private:
  RegisterLayout layout_;
  std::size_t target_dim_;
  std::vector<bool> active_;
  std::vector<std::size_t> full_;  // joint index of (rest, target digit)
  Matrix both_;                    // Liouville map on fully active blocks
  Matrix left_;                    // left factor on half-active blocks
};

/// One-shot form of ControlledLmr.
void apply_controlled_lmr(DensityState& rho, std::size_t target, const Matrix& sigma, double t,
                          std::uint64_t n_steps, const std::vector<bool>& active);

}  // namespace phaseforge
