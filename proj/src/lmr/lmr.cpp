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

#include "phaseforge/lmr/lmr.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace phaseforge {

namespace {

Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::size_t side_of(const Matrix& liouville) {
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(liouville.rows()))));
  if (liouville.rows() != liouville.cols() || d * d != static_cast<std::size_t>(liouville.rows())) {
    throw DimensionError("Liouville matrix must be d^2 x d^2");
  }
  return d;
}

Matrix matrix_power(Matrix base, std::uint64_t n) {
  Matrix acc = Matrix::Identity(base.rows(), base.cols());
  while (n > 0) {
    if (n & 1U) acc = (acc * base).eval();
    n >>= 1U;
    if (n > 0) base = (base * base).eval();
  }
  return acc;
}

Matrix projector(const PureState& psi) { return psi.amplitudes() * psi.amplitudes().adjoint(); }

}  // namespace

QuantumChannel::QuantumChannel(Matrix liouville)
    : dim_(side_of(liouville)), liouville_(std::move(liouville)) {}

QuantumChannel QuantumChannel::identity(std::size_t d) {
  return QuantumChannel(Matrix::Identity(ix(d * d), ix(d * d)));
}

QuantumChannel QuantumChannel::unitary(const Matrix& w) {
  if (w.rows() != w.cols()) throw DimensionError("unitary must be square");
  return QuantumChannel(kron(w.conjugate(), w));
}

Matrix QuantumChannel::apply(const Matrix& x) const {
  if (static_cast<std::size_t>(x.rows()) != dim_ || x.rows() != x.cols()) {
    throw DimensionError("operator does not match channel dimension");
  }
  const Eigen::Map<const Vector> v(x.data(), ix(dim_ * dim_));
  const Vector out = liouville_ * v;
  return Eigen::Map<const Matrix>(out.data(), ix(dim_), ix(dim_));
}

DensityState QuantumChannel::apply(const DensityState& rho) const {
  return DensityState(rho.layout(), apply(rho.matrix()));
}

Matrix QuantumChannel::choi() const {
  const std::size_t d = dim_;
  Matrix j(ix(d * d), ix(d * d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
          j(ix(i * d + a), ix(k * d + b)) = liouville_(ix(b * d + a), ix(k * d + i));
        }
      }
    }
  }
  return j;
}

void QuantumChannel::check_invariants(double psd_tol, double tp_tol) const {
  const Matrix j = choi();
  const Matrix herm = 0.5 * (j + j.adjoint());
  if ((j - herm).cwiseAbs().maxCoeff() > psd_tol) throw InvariantViolation("Choi matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -psd_tol) throw InvariantViolation("channel is not completely positive");
  // Trace preservation: sum_a E(|i><k|)[a, a] = delta_ik.
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t k = 0; k < dim_; ++k) {
      Complex tr = 0;
      for (std::size_t a = 0; a < dim_; ++a) tr += j(ix(i * dim_ + a), ix(k * dim_ + a));
      if (std::abs(tr - (i == k ? 1.0 : 0.0)) > tp_tol) throw InvariantViolation("channel is not trace preserving");
    }
  }
}

QuantumChannel QuantumChannel::power(std::uint64_t n) const { return QuantumChannel(matrix_power(liouville_, n)); }

QuantumChannel compose(const QuantumChannel& a, const QuantumChannel& b) {
  if (a.dim() != b.dim()) throw DimensionError("channel dimensions differ");
  return QuantumChannel(a.liouville() * b.liouville());
}

double channel_distance(const QuantumChannel& a, const QuantumChannel& b) {
  if (a.dim() != b.dim()) throw DimensionError("channel dimensions differ");
  return trace_norm(a.choi() - b.choi()) / static_cast<double>(a.dim());
}

DensityState partial_swap_step(const DensityState& system, const DensityState& copy, double dt) {
  const std::size_t d = system.dim();
  if (copy.dim() != d) throw DimensionError("system and copy dimensions differ");
  Matrix swap = Matrix::Zero(ix(d * d), ix(d * d));
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) swap(ix(b * d + a), ix(a * d + b)) = 1;
  }
  const Matrix u = std::cos(dt) * Matrix::Identity(ix(d * d), ix(d * d)) - Complex(0, std::sin(dt)) * swap;
  const Matrix joint = u * kron(system.matrix(), copy.matrix()) * u.adjoint();
  Matrix out = Matrix::Zero(ix(d), ix(d));
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t a2 = 0; a2 < d; ++a2) {
      for (std::size_t b = 0; b < d; ++b) out(ix(a), ix(a2)) += joint(ix(a * d + b), ix(a2 * d + b));
    }
  }
  return DensityState(system.layout(), out);
}

QuantumChannel partial_swap_channel(const Matrix& sigma, double dt) {
  const auto d = static_cast<std::size_t>(sigma.rows());
  if (sigma.rows() != sigma.cols()) throw DimensionError("sigma must be square");
  const double c = std::cos(dt), s = std::sin(dt);
  const Matrix id = Matrix::Identity(ix(d), ix(d));
  const Eigen::Map<const Vector> vec_sigma(sigma.data(), ix(d * d));
  const Eigen::Map<const Vector> vec_id(id.data(), ix(d * d));
  Matrix l = c * c * Matrix::Identity(ix(d * d), ix(d * d));
  l += s * s * vec_sigma * vec_id.adjoint();
  l -= Complex(0, c * s) * (kron(id, sigma) - kron(sigma.transpose(), id));
  return QuantumChannel(std::move(l));
}

QuantumChannel lmr_exponentiate(AdviceSource& copies, double t, std::uint64_t n_steps,
                                CostLedger& ledger) {
  if (n_steps < 1) throw std::invalid_argument("LMR needs at least one step");
  copies.consume_copies(n_steps, ledger);
  // Each step conjugates by e^{-i sigma dt}, so dt = -t/n targets e^{i t sigma}.
  const double dt = -t / static_cast<double>(n_steps);
  return partial_swap_channel(projector(copies.copy_state()), dt).power(n_steps);
}

std::uint64_t lmr_reflection_steps(double eta, double c) {
  if (!(eta > 0 && eta < 0.5)) throw std::invalid_argument("eta must lie in (0, 1/2)");
  return static_cast<std::uint64_t>(std::ceil(c * kPi * kPi / eta - 1e-9));
}

QuantumChannel reflection_from_copies(AdviceSource& copies, double eta, CostLedger& ledger) {
  return lmr_exponentiate(copies, kPi, lmr_reflection_steps(eta), ledger);
}

ControlledLmr::ControlledLmr(const RegisterLayout& layout, std::size_t target, const Matrix& sigma,
                             double t, std::uint64_t n_steps, std::vector<bool> active)
    : layout_(layout), target_dim_(layout[target].dim), active_(std::move(active)) {
  if (static_cast<std::size_t>(sigma.rows()) != target_dim_) throw DimensionError("sigma does not match target");
  const std::size_t rest_dim = layout.dim() / target_dim_;
  if (active_.size() != rest_dim) throw DimensionError("control mask does not match the other registers");
  if (n_steps < 1) throw std::invalid_argument("LMR needs at least one step");

  const double dt = -t / static_cast<double>(n_steps);
  both_ = partial_swap_channel(sigma, dt).power(n_steps).liouville();
  const Matrix id = Matrix::Identity(ix(target_dim_), ix(target_dim_));
  left_ = matrix_power(std::cos(dt) * id - Complex(0, std::sin(dt)) * sigma, n_steps);

  const std::size_t stride = layout.stride(target);
  full_.resize(layout.dim());
  for (std::size_t x = 0; x < layout.dim(); ++x) {
    const std::size_t digit = layout.digit(x, target);
    const std::size_t rest = (x / (stride * target_dim_)) * stride + x % stride;
    full_[rest * target_dim_ + digit] = x;
  }
}

void ControlledLmr::apply(DensityState& rho) const {
  if (!(rho.layout() == layout_)) throw DimensionError("density layout does not match");
  const std::size_t d = target_dim_;
  const std::size_t rest_dim = active_.size();
  const Matrix right = left_.adjoint();
  const Matrix& in = rho.matrix();
  Matrix out = in;
  Matrix block(ix(d), ix(d));
  for (std::size_t a = 0; a < rest_dim; ++a) {
    for (std::size_t b = 0; b < rest_dim; ++b) {
      if (!active_[a] && !active_[b]) continue;
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) block(ix(i), ix(j)) = in(ix(full_[a * d + i]), ix(full_[b * d + j]));
      }
      Matrix mapped;
      if (active_[a] && active_[b]) {
        const Eigen::Map<const Vector> v(block.data(), ix(d * d));
        const Vector w = both_ * v;
        mapped = Eigen::Map<const Matrix>(w.data(), ix(d), ix(d));
      } else if (active_[a]) {
        mapped = left_ * block;
      } else {
        mapped = block * right;
      }
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) out(ix(full_[a * d + i]), ix(full_[b * d + j])) = mapped(ix(i), ix(j));
      }
    }
  }
  rho = DensityState(layout_, std::move(out));
}

void apply_controlled_lmr(DensityState& rho, std::size_t target, const Matrix& sigma, double t,
                          std::uint64_t n_steps, const std::vector<bool>& active) {
  ControlledLmr(rho.layout(), target, sigma, t, n_steps, active).apply(rho);
}

}  // namespace phaseforge
