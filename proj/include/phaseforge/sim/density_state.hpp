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

#include "phaseforge/sim/pure_state.hpp"
#include "phaseforge/sim/register_layout.hpp"
#include "phaseforge/sim/types.hpp"

namespace phaseforge {

/// Density matrix over a named layout. Intended for small dimensions only.
class DensityState {
 public:
  DensityState() = default;
  DensityState(RegisterLayout layout, Matrix rho);

  static DensityState from_pure(const PureState& psi);
  static DensityState maximally_mixed(RegisterLayout layout);

  const RegisterLayout& layout() const { return layout_; }
  std::size_t dim() const { return layout_.dim(); }
  const Matrix& matrix() const { return rho_; }

  /// Throws InvariantViolation unless the matrix is Hermitian, unit trace and
  /// positive semidefinite within the shared tolerances.
  void check_invariants(double tol = kInvariantTol, double eig_tol = 1e-8) const;

  /// rho -> G rho G^dagger with G acting on registers [first, first+count).
  void apply_group(const Matrix& gate, std::size_t first, std::size_t count);
  void apply(const Matrix& gate, std::size_t reg) { apply_group(gate, reg, 1); }
  /// rho -> W rho W^dagger for a full-dimension unitary.
  void apply_full(const Matrix& w);

  /// Reduced state on the registers listed in `keep` (in layout order).
  DensityState partial_trace(const std::vector<std::size_t>& keep) const;

  /// Diagonal of the reduced state on one register.
  std::vector<double> marginal(std::size_t reg) const;

 private:
  RegisterLayout layout_;
  Matrix rho_;
};

/// Half the trace norm of a - b.
double trace_distance(const Matrix& a, const Matrix& b);
/// Sum of singular values.
double trace_norm(const Matrix& m);

/// I_before (x) gate (x) I_after for registers [first, first+count).
Matrix embed_group(const Matrix& gate, const RegisterLayout& layout, std::size_t first,
                   std::size_t count);

}  // namespace phaseforge
