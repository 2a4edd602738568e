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

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "phaseforge/sim/register_layout.hpp"
#include "phaseforge/sim/types.hpp"

namespace phaseforge {

/// A normalized state vector over a named tensor-product layout.
///
/// Gates act on one register or on a run of adjacent registers. Every
/// transformation here is unitary, so the norm is preserved up to rounding;
/// `check_normalized` is the explicit guard used by callers and tests.
class PureState {
 public:
  PureState() = default;
  PureState(RegisterLayout layout, Vector amplitudes);

  /// Computational basis state |index> of the layout.
  static PureState basis(RegisterLayout layout, std::size_t index = 0);

  const RegisterLayout& layout() const { return layout_; }
  std::size_t dim() const { return layout_.dim(); }
  const Vector& amplitudes() const { return amps_; }
  Complex amplitude(std::size_t index) const { return amps_[static_cast<Eigen::Index>(index)]; }
  /// Raw access for simulator internals. Callers must keep the vector unit-norm.
  Vector& mutable_amplitudes() { return amps_; }

  double norm() const { return amps_.norm(); }
  void check_normalized(double tol = kInvariantTol) const;

  /// Applies `gate` to register `reg` (gate dimension must match).
  void apply(const Matrix& gate, std::size_t reg);
  /// Applies `gate` to registers [first, first + count), treated as one
  /// register whose leading digit is `first`.
  void apply_group(const Matrix& gate, std::size_t first, std::size_t count);
  /// Applies `gate` to `reg` on the branch where qubit `control` is 1.
  void apply_controlled(const Matrix& gate, std::size_t reg, QubitRef control);
  /// Multiplies amplitude x by phases[digit of reg], optionally only where
  /// `control` is 1.
  void apply_diagonal(std::span<const Complex> phases, std::size_t reg,
                      std::optional<QubitRef> control = std::nullopt);
  /// Multiplies every amplitude by f(index). f must have unit modulus.
  void apply_phase_function(const std::function<Complex(std::size_t)>& f);
  /// Applies the basis permutation |x> -> |perm(x)>. perm must be a bijection.
  void apply_permutation(const std::function<std::size_t(std::size_t)>& perm);

  /// Born distribution of one register.
  std::vector<double> marginal(std::size_t reg) const;

  /// Projects register `reg` onto `value` and renormalizes. Returns the
  /// probability of that outcome. Throws InvariantViolation if it is ~0.
  double project(std::size_t reg, std::size_t value);

  Complex inner(const PureState& other) const;

 private:
  RegisterLayout layout_;
  Vector amps_;
};

/// |a> (x) |b> with a's registers first.
PureState tensor(const PureState& a, const PureState& b);

/// Kronecker product A (x) B, with A acting on the more significant factor.
Matrix kron(const Matrix& a, const Matrix& b);

/// Max entrywise deviation of m*m^dagger from the identity.
double unitarity_defect(const Matrix& m);

}  // namespace phaseforge
