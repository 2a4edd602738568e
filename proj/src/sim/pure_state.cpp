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

#include "phaseforge/sim/pure_state.hpp"

#include <cmath>
#include <string>

namespace phaseforge {

namespace {

void check_gate(const Matrix& gate, std::size_t d) {
  if (gate.rows() != gate.cols() || static_cast<std::size_t>(gate.rows()) != d) {
    throw DimensionError("gate of size " + std::to_string(gate.rows()) + "x" +
                         std::to_string(gate.cols()) + " on register of dimension " +
                         std::to_string(d));
  }
}

}  // namespace

PureState::PureState(RegisterLayout layout, Vector amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.size()) != layout_.dim()) {
    throw DimensionError("amplitude vector length does not match register layout");
  }
}

PureState PureState::basis(RegisterLayout layout, std::size_t index) {
  if (index >= layout.dim()) throw DimensionError("basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(layout.dim()));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return PureState(std::move(layout), std::move(v));
}

void PureState::check_normalized(double tol) const {
  const double n2 = amps_.squaredNorm();
  if (std::abs(n2 - 1.0) > tol) {
    throw InvariantViolation("state norm^2 is " + std::to_string(n2));
  }
}

void PureState::apply(const Matrix& gate, std::size_t reg) { apply_group(gate, reg, 1); }

void PureState::apply_group(const Matrix& gate, std::size_t first, std::size_t count) {
  const std::size_t d = layout_.group_dim(first, count);
  check_gate(gate, d);
  const std::size_t s = layout_.stride(first + count - 1);
  const std::size_t block = d * s;
  const Matrix gt = gate.transpose();
  for (std::size_t off = 0; off < layout_.dim(); off += block) {
    Eigen::Map<Matrix> b(amps_.data() + off, static_cast<Eigen::Index>(s),
                         static_cast<Eigen::Index>(d));
    b = (b * gt).eval();
  }
}

void PureState::apply_controlled(const Matrix& gate, std::size_t reg, QubitRef control) {
  layout_.check_qubit(control);
  if (control.reg == reg) throw DimensionError("control qubit lies in the target register");
  const std::size_t d = layout_[reg].dim;
  check_gate(gate, d);
  const std::size_t s = layout_.stride(reg);
  const std::size_t block = d * s;
  Vector in(static_cast<Eigen::Index>(d));
  for (std::size_t off = 0; off < layout_.dim(); off += block) {
    for (std::size_t inner = 0; inner < s; ++inner) {
      const std::size_t base = off + inner;
      if (!layout_.qubit_set(base, control)) continue;
      for (std::size_t k = 0; k < d; ++k) in[static_cast<Eigen::Index>(k)] = amps_[static_cast<Eigen::Index>(base + k * s)];
      const Vector out = gate * in;
      for (std::size_t k = 0; k < d; ++k) amps_[static_cast<Eigen::Index>(base + k * s)] = out[static_cast<Eigen::Index>(k)];
    }
  }
}

void PureState::apply_diagonal(std::span<const Complex> phases, std::size_t reg,
                               std::optional<QubitRef> control) {
  const std::size_t d = layout_[reg].dim;
  if (phases.size() != d) throw DimensionError("diagonal length does not match register");
  if (control) {
    layout_.check_qubit(*control);
    if (control->reg == reg) throw DimensionError("control qubit lies in the target register");
  }
  const std::size_t s = layout_.stride(reg);
  Complex* a = amps_.data();
  if (!control) {
    for (std::size_t off = 0; off < layout_.dim(); off += d * s) {
      for (std::size_t k = 0; k < d; ++k) {
        if (phases[k] == Complex(1.0)) continue;
        for (std::size_t i = 0; i < s; ++i) a[off + k * s + i] *= phases[k];
      }
    }
    return;
  }
  // The control bit of index x is bit 0 of x / period, so the controlled
  // indices form runs [start, start + period) with start an odd multiple of
  // period. Inside a run the target digit is tracked incrementally.
  const std::size_t period = layout_.stride(control->reg) << control->bit;
  for (std::size_t start = period; start < layout_.dim(); start += 2 * period) {
    std::size_t inner = start % s;
    std::size_t k = (start / s) % d;
    for (std::size_t x = start; x < start + period; ++x) {
      a[x] *= phases[k];
      if (++inner == s) {
        inner = 0;
        if (++k == d) k = 0;
      }
    }
  }
}

void PureState::apply_phase_function(const std::function<Complex(std::size_t)>& f) {
  for (std::size_t x = 0; x < layout_.dim(); ++x) amps_[static_cast<Eigen::Index>(x)] *= f(x);
}

void PureState::apply_permutation(const std::function<std::size_t(std::size_t)>& perm) {
  Vector out = Vector::Zero(amps_.size());
  std::vector<bool> hit(layout_.dim(), false);
  for (std::size_t x = 0; x < layout_.dim(); ++x) {
    const std::size_t y = perm(x);
    if (y >= layout_.dim() || hit[y]) throw InvariantViolation("basis map is not a permutation");
    hit[y] = true;
    out[static_cast<Eigen::Index>(y)] = amps_[static_cast<Eigen::Index>(x)];
  }
  amps_ = std::move(out);
}

std::vector<double> PureState::marginal(std::size_t reg) const {
  std::vector<double> p(layout_[reg].dim, 0.0);
  for (std::size_t x = 0; x < layout_.dim(); ++x) {
    p[layout_.digit(x, reg)] += std::norm(amps_[static_cast<Eigen::Index>(x)]);
  }
  return p;
}

double PureState::project(std::size_t reg, std::size_t value) {
  double prob = 0;
  for (std::size_t x = 0; x < layout_.dim(); ++x) {
    if (layout_.digit(x, reg) != value) {
      amps_[static_cast<Eigen::Index>(x)] = 0;
    } else {
      prob += std::norm(amps_[static_cast<Eigen::Index>(x)]);
    }
  }
  if (prob < 1e-300) throw InvariantViolation("projection onto a zero-probability outcome");
  amps_ /= std::sqrt(prob);
  return prob;
}

Complex PureState::inner(const PureState& other) const {
  if (other.dim() != dim()) throw DimensionError("inner product of states of different dimension");
  return amps_.dot(other.amps_);
}

PureState tensor(const PureState& a, const PureState& b) {
  Vector v(static_cast<Eigen::Index>(a.dim() * b.dim()));
  for (std::size_t i = 0; i < a.dim(); ++i) {
    v.segment(static_cast<Eigen::Index>(i * b.dim()), static_cast<Eigen::Index>(b.dim())) =
        a.amplitude(i) * b.amplitudes();
  }
  return PureState(a.layout().concatenated(b.layout()), std::move(v));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double unitarity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m * m.adjoint() - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

}  // namespace phaseforge
