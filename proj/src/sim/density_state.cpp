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

#include "phaseforge/sim/density_state.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <string>

namespace phaseforge {

DensityState::DensityState(RegisterLayout layout, Matrix rho)
    : layout_(std::move(layout)), rho_(std::move(rho)) {
  const auto d = static_cast<Eigen::Index>(layout_.dim());
  if (rho_.rows() != d || rho_.cols() != d) {
    throw DimensionError("density matrix size does not match register layout");
  }
}

DensityState DensityState::from_pure(const PureState& psi) {
  return DensityState(psi.layout(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityState DensityState::maximally_mixed(RegisterLayout layout) {
  const auto d = static_cast<Eigen::Index>(layout.dim());
  return DensityState(std::move(layout), Matrix::Identity(d, d) / static_cast<double>(d));
}

void DensityState::check_invariants(double tol, double eig_tol) const {
  const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) throw InvariantViolation("density matrix is not Hermitian: " + std::to_string(herm));
  const Complex tr = rho_.trace();
  if (std::abs(tr - Complex(1.0)) > tol) {
    throw InvariantViolation("density matrix trace is " + std::to_string(tr.real()));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -eig_tol) {
    throw InvariantViolation("density matrix has eigenvalue " +
                             std::to_string(es.eigenvalues().minCoeff()));
  }
}

void DensityState::apply_group(const Matrix& gate, std::size_t first, std::size_t count) {
  apply_full(embed_group(gate, layout_, first, count));
}

void DensityState::apply_full(const Matrix& w) {
  if (w.rows() != rho_.rows() || w.cols() != rho_.cols()) {
    throw DimensionError("unitary does not match density dimension");
  }
  rho_ = w * rho_ * w.adjoint();
}

DensityState DensityState::partial_trace(const std::vector<std::size_t>& keep) const {
  std::vector<Register> kept;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (i > 0 && keep[i] <= keep[i - 1]) throw DimensionError("kept registers must be increasing");
    kept.push_back(layout_[keep[i]]);
  }
  RegisterLayout out_layout(kept);
  std::vector<bool> is_kept(layout_.size(), false);
  for (std::size_t r : keep) is_kept[r] = true;

  auto reduced_index = [&](std::size_t x) {
    std::size_t idx = 0;
    for (std::size_t r : keep) idx = idx * layout_[r].dim + layout_.digit(x, r);
    return idx;
  };
  auto traced_key = [&](std::size_t x) {
    std::size_t idx = 0;
    for (std::size_t r = 0; r < layout_.size(); ++r) {
      if (!is_kept[r]) idx = idx * layout_[r].dim + layout_.digit(x, r);
    }
    return idx;
  };

  const std::size_t d = layout_.dim();
  std::vector<std::size_t> red(d), key(d);
  for (std::size_t x = 0; x < d; ++x) {
    red[x] = reduced_index(x);
    key[x] = traced_key(x);
  }
  const auto od = static_cast<Eigen::Index>(out_layout.dim());
  Matrix out = Matrix::Zero(od, od);
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t y = 0; y < d; ++y) {
      if (key[x] != key[y]) continue;
      out(static_cast<Eigen::Index>(red[x]), static_cast<Eigen::Index>(red[y])) +=
          rho_(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
    }
  }
  return DensityState(std::move(out_layout), std::move(out));
}

std::vector<double> DensityState::marginal(std::size_t reg) const {
  std::vector<double> p(layout_[reg].dim, 0.0);
  for (std::size_t x = 0; x < layout_.dim(); ++x) {
    p[layout_.digit(x, reg)] += rho_(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)).real();
  }
  return p;
}

double trace_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

double trace_distance(const Matrix& a, const Matrix& b) {
  const Matrix diff = a - b;
  // The difference of two density matrices is Hermitian, so eigenvalues suffice.
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

Matrix embed_group(const Matrix& gate, const RegisterLayout& layout, std::size_t first,
                   std::size_t count) {
  const std::size_t d = layout.group_dim(first, count);
  if (static_cast<std::size_t>(gate.rows()) != d || gate.rows() != gate.cols()) {
    throw DimensionError("gate does not match register group");
  }
  const std::size_t after = layout.stride(first + count - 1);
  const std::size_t before = layout.dim() / (d * after);
  Matrix out = kron(Matrix::Identity(static_cast<Eigen::Index>(before), static_cast<Eigen::Index>(before)), gate);
  return kron(out, Matrix::Identity(static_cast<Eigen::Index>(after), static_cast<Eigen::Index>(after)));
}

}  // namespace phaseforge
