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

#include "phaseforge/sim/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "phaseforge/sim/angles.hpp"

namespace phaseforge {

BlackBoxUnitary BlackBoxUnitary::diagonal(std::vector<double> phases, std::string label) {
  if (phases.empty()) throw DimensionError("oracle dimension must be positive");
  BlackBoxUnitary u;
  u.dim_ = phases.size();
  u.diagonal_ = true;
  u.label_ = std::move(label);
  for (double& p : phases) p = wrap_angle(p);
  u.phases_ = std::move(phases);
  for (double p : u.phases_) {
    u.diag_.push_back(std::polar(1.0, p));
    u.diag_inv_.push_back(std::polar(1.0, -p));
  }
  return u;
}

BlackBoxUnitary BlackBoxUnitary::dense(Matrix m, std::string label) {
  if (m.rows() == 0 || m.rows() != m.cols()) throw DimensionError("oracle must be square");
  if (unitarity_defect(m) > kInvariantTol) {
    throw InvariantViolation("oracle body is not unitary");
  }
  BlackBoxUnitary u;
  u.dim_ = static_cast<std::size_t>(m.rows());
  u.diagonal_ = false;
  u.label_ = std::move(label);
  u.dense_inv_ = m.adjoint();
  u.dense_ = std::move(m);
  return u;
}

const std::vector<Complex>& BlackBoxUnitary::diagonal_entries(bool inverse) const {
  if (!diagonal_) throw std::logic_error("oracle is not in diagonal form");
  return inverse ? diag_inv_ : diag_;
}

const std::vector<double>& BlackBoxUnitary::phases() const {
  if (!diagonal_) throw std::logic_error("oracle is not in diagonal form");
  return phases_;
}

Matrix BlackBoxUnitary::matrix() const {
  if (!diagonal_) return dense_;
  Vector d(static_cast<Eigen::Index>(dim_));
  for (std::size_t i = 0; i < dim_; ++i) d[static_cast<Eigen::Index>(i)] = diag_[i];
  return d.asDiagonal();
}

Spectrum BlackBoxUnitary::spectrum() const {
  const auto n = static_cast<Eigen::Index>(dim_);
  if (diagonal_) return {phases_, Matrix::Identity(n, n)};
  // A unitary is normal, so its complex Schur form is diagonal and the Schur
  // vectors are eigenvectors.
  Eigen::ComplexSchur<Matrix> schur(dense_);
  Spectrum s;
  s.vectors = schur.matrixU();
  for (Eigen::Index i = 0; i < n; ++i) s.phases.push_back(wrap_angle(std::arg(schur.matrixT()(i, i))));
  return s;
}

void apply_oracle(PureState& state, const BlackBoxUnitary& u, std::size_t target, bool inverse,
                  std::optional<QubitRef> control, CostLedger& ledger) {
  if (target >= state.layout().size() || state.layout()[target].dim != u.dim()) {
    throw DimensionError("oracle dimension does not match target register");
  }
  if (u.diagonal_) {
    state.apply_diagonal(inverse ? u.diag_inv_ : u.diag_, target, control);
  } else if (control) {
    state.apply_controlled(inverse ? u.dense_inv_ : u.dense_, target, *control);
  } else {
    state.apply(inverse ? u.dense_inv_ : u.dense_, target);
  }
  ledger.add_oracle_calls(1);
}

void apply_oracle_power(PureState& state, const BlackBoxUnitary& u, std::size_t target,
                        std::uint64_t power, bool inverse, std::optional<QubitRef> control,
                        CostLedger& ledger) {
  for (std::uint64_t i = 0; i < power; ++i) apply_oracle(state, u, target, inverse, control, ledger);
}

}  // namespace phaseforge
