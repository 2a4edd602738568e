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

#include "phaseforge/sim/instances.hpp"

#include <Eigen/QR>
#include <cmath>
#include <string>

namespace phaseforge {

BlackBoxUnitary u_theta(double theta, std::size_t n) {
  std::vector<double> phases(n, 0.0);
  phases[0] = theta;
  return BlackBoxUnitary::diagonal(std::move(phases), "U_theta");
}

BlackBoxUnitary m_j_delta(std::size_t n, std::size_t j, double delta) {
  if (j >= n) throw DimensionError("marked index out of range");
  std::vector<double> phases(n, 0.0);
  phases[j] = delta;
  return BlackBoxUnitary::diagonal(std::move(phases), "M_" + std::to_string(j));
}

PureState fror_advice_state(std::size_t n, std::size_t j, double gamma) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(n));
  if (j == 0) {
    v[0] = 1.0;
  } else {
    v[static_cast<Eigen::Index>(j)] = gamma;
    v[0] = std::sqrt(std::max(0.0, 1.0 - gamma * gamma));
  }
  return PureState(RegisterLayout({{"advice", n}}), std::move(v));
}

FrorInstance make_fror_instance(std::size_t n, double delta, std::size_t j, double gamma,
                                std::uint64_t t) {
  if (n < 2) throw std::invalid_argument("the fractional-OR family needs N >= 2");
  if (j >= n) throw std::invalid_argument("input index j out of range");
  if (!(delta > 0 && delta <= kPi)) throw std::invalid_argument("delta must lie in (0, pi]");
  if (gamma < 1.0 / std::sqrt(static_cast<double>(n)) - kExactTol || gamma > 1.0 + kExactTol) {
    throw std::invalid_argument("gamma must lie in [1/sqrt(N), 1]");
  }
  BlackBoxUnitary u = j == 0 ? BlackBoxUnitary::diagonal(std::vector<double>(n, 0.0), "I")
                             : m_j_delta(n, j, delta);
  return {std::move(u), AdviceSource::copies(fror_advice_state(n, j, gamma), t, gamma)};
}

PureState tensor_power(const PureState& psi, std::uint64_t t) {
  PureState out(RegisterLayout(std::vector<Register>{}), Vector::Ones(1));
  for (std::uint64_t i = 0; i < t; ++i) out = tensor(out, psi);
  return out;
}

Matrix haar_unitary(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const auto d = static_cast<Eigen::Index>(n);
  Matrix z(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) z(i, j) = Complex(g(rng), g(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

Matrix unitary_with_first_column(const Vector& alpha) {
  if (std::abs(alpha.norm() - 1.0) > kInvariantTol) throw InvariantViolation("alpha is not a unit vector");
  const Eigen::Index d = alpha.size();
  const double mag0 = std::abs(alpha[0]);
  const Complex beta = mag0 > 0 ? alpha[0] / mag0 : Complex(1.0);
  // Reflection H with H e0 = conj(beta) alpha, then A = beta H.
  Vector w = -std::conj(beta) * alpha;
  w[0] += 1.0;
  Matrix h = Matrix::Identity(d, d);
  const double wn = w.squaredNorm();
  if (wn > 1e-30) h -= 2.0 * w * w.adjoint() / wn;
  return beta * h;
}

}  // namespace phaseforge
