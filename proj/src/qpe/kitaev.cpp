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

#include "phaseforge/qpe/kitaev.hpp"

#include <cmath>

#include "phaseforge/qpe/qft.hpp"
#include "phaseforge/sim/angles.hpp"

namespace phaseforge {

namespace {

constexpr unsigned kMaxPhaseBits = 20;

void check_bits(unsigned m) {
  if (m < 1 || m > kMaxPhaseBits) throw std::out_of_range("phase bits must lie in 1..20");
}

// Debug-only sanity check of the eigenstate promise. It reads U's body
// directly and never feeds into the algorithm.
void debug_check_eigenstate(const BlackBoxUnitary& u, const PureState& input) {
  if constexpr (kDebugBuild) {
    if (input.layout().size() != 1) return;
    const Vector& v = input.amplitudes();
    const Vector uv = u.matrix() * v;
    const Complex lambda = v.dot(uv);
    if ((uv - lambda * v).norm() > 1e-6) {
      throw InvariantViolation("phase estimation input is not an eigenvector of U");
    }
  }
}

PureState run_register_circuit(const BlackBoxUnitary& u, const PureState& input, unsigned m,
                               CostLedger& ledger) {
  check_bits(m);
  debug_check_eigenstate(u, input);
  const std::size_t grid = std::size_t{1} << m;
  PureState state =
      tensor(PureState::basis(RegisterLayout({{"phase", grid}})), input);
  // The QFT maps |0> to the uniform superposition, like a Hadamard layer.
  apply_qft(state, 0, false);
  for (unsigned j = 0; j < m; ++j) {
    apply_oracle_power(state, u, 1, std::uint64_t{1} << j, false, QubitRef{0, j}, ledger);
  }
  apply_qft(state, 0, true);
  return state;
}

std::size_t run_semiclassical(const BlackBoxUnitary& u, const PureState& input, unsigned m,
                              CostLedger& ledger, Rng& rng) {
  check_bits(m);
  debug_check_eigenstate(u, input);
  const std::size_t grid = std::size_t{1} << m;
  PureState state = tensor(PureState::basis(RegisterLayout({{"control", 2}})), input);
  const Matrix h = hadamard();
  const Matrix x = pauli_x();
  const std::size_t half = input.dim();
  std::size_t k = 0;
  // Qubit j of the register circuit fixes bit m-1-j of the outcome once the
  // lower bits are known, so the powers run from high to low.
  for (unsigned j = m; j-- > 0;) {
    state.apply(h, 0);
    apply_oracle_power(state, u, 1, std::uint64_t{1} << j, false, QubitRef{0, 0}, ledger);
    const std::size_t low = k;  // bits 0 .. m-2-j
    const double correction =
        -kTwoPi * static_cast<double>((low << j) % grid) / static_cast<double>(grid);
    const Complex phases[2] = {Complex(1.0), std::polar(1.0, correction)};
    state.apply_diagonal(phases, 0);
    state.apply(h, 0);
    double p1 = state.amplitudes().tail(static_cast<Eigen::Index>(half)).squaredNorm();
    const std::size_t bit = uniform01(rng) < p1 ? 1 : 0;
    state.project(0, bit);
    if (bit) state.apply(x, 0);
    k |= bit << (m - 1 - j);
  }
  return k;
}

}  // namespace

std::size_t kitaev_qpe(const BlackBoxUnitary& u, const PureState& input, unsigned m,
                       CostLedger& ledger, Rng& rng, QpeCircuit circuit) {
  if (circuit == QpeCircuit::kSemiclassical) return run_semiclassical(u, input, m, ledger, rng);
  const PureState out = run_register_circuit(u, input, m, ledger);
  return sample_index(out.marginal(0), rng);
}

double kitaev_qpe_angle(const BlackBoxUnitary& u, const PureState& input, unsigned m,
                        CostLedger& ledger, Rng& rng, QpeCircuit circuit) {
  return grid_angle(kitaev_qpe(u, input, m, ledger, rng, circuit), std::size_t{1} << m);
}

std::vector<double> kitaev_distribution(const BlackBoxUnitary& u, const PureState& input,
                                        unsigned m, CostLedger& ledger) {
  return run_register_circuit(u, input, m, ledger).marginal(0);
}

double fejer_probability(double theta, std::size_t k, unsigned m) {
  const double grid = std::ldexp(1.0, static_cast<int>(m));
  const double d = theta - kTwoPi * static_cast<double>(k) / grid;
  const double den = std::sin(d / 2);
  if (std::abs(den) < 1e-15) return 1.0;
  const double num = std::sin(grid * d / 2);
  return num * num / (grid * grid * den * den);
}

std::vector<double> fejer_distribution(double theta, unsigned m) {
  std::vector<double> p(std::size_t{1} << m);
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = fejer_probability(theta, k, m);
  return p;
}

}  // namespace phaseforge
