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

#include "phaseforge/qpe/median_qpe.hpp"

#include <cmath>

#include "phaseforge/qpe/circular_median.hpp"
#include "phaseforge/sim/angles.hpp"

namespace phaseforge {

namespace {

void check_params(double delta, double epsilon) {
  if (!(delta > 0 && delta < kTwoPi)) throw std::invalid_argument("delta must lie in (0, 2pi)");
  if (!(epsilon > 0 && epsilon < 0.5)) throw std::invalid_argument("epsilon must lie in (0, 1/2)");
}

PureState zero_state(std::size_t n) { return PureState::basis(RegisterLayout({{"system", n}})); }

// Largest w such that grid point w passes dist_solver's acceptance test.
std::size_t window_half_width(double delta, std::size_t grid) {
  std::size_t w = 0;
  while (w + 1 <= grid / 2 && circular_distance(grid_angle(w + 1, grid), 0.0) <= delta) ++w;
  return w;
}

}  // namespace

unsigned median_qpe_bits(double delta) {
  return static_cast<unsigned>(std::ceil(std::log2(kTwoPi / delta) - 1e-12)) + 2;
}

std::size_t median_qpe_repetitions(double epsilon) {
  auto r = static_cast<std::size_t>(std::ceil(18.0 * std::log(1.0 / epsilon) - 1e-12));
  if (r % 2 == 0) ++r;
  return r;
}

std::uint64_t median_qpe_cost(double delta, double epsilon) {
  return median_qpe_repetitions(epsilon) * ((std::uint64_t{1} << median_qpe_bits(delta)) - 1);
}

PhaseEstimateResult median_qpe(const BlackBoxUnitary& u, const PureState& eigenstate, double delta,
                               double epsilon, CostLedger& ledger, Rng& rng, QpeCircuit circuit) {
  check_params(delta, epsilon);
  const unsigned m = median_qpe_bits(delta);
  const std::size_t r = median_qpe_repetitions(epsilon);
  std::vector<std::size_t> samples(r);
  for (auto& s : samples) s = kitaev_qpe(u, eigenstate, m, ledger, rng, circuit);
  const std::size_t grid = std::size_t{1} << m;
  return {grid_angle(circular_median(samples, grid), grid), delta, epsilon, ledger};
}

std::vector<double> median_qpe_distribution(std::span<const double> round, std::size_t r) {
  return circular_median_distribution(round, r);
}

bool dist_solver(const BlackBoxUnitary& u, double delta, double epsilon, CostLedger& ledger,
                 Rng& rng, QpeCircuit circuit) {
  if (!(delta > 0 && delta < 0.5)) throw std::invalid_argument("delta must lie in (0, 1/2)");
  const PhaseEstimateResult est =
      median_qpe(u, zero_state(u.dim()), delta, epsilon, ledger, rng, circuit);
  return circular_distance(est.estimate, 0.0) <= delta;
}

double dist_acceptance_probability(const BlackBoxUnitary& u, double delta, double epsilon,
                                   CostLedger& ledger) {
  if (!(delta > 0 && delta < 0.5)) throw std::invalid_argument("delta must lie in (0, 1/2)");
  check_params(delta, epsilon);
  const unsigned m = median_qpe_bits(delta);
  const std::size_t r = median_qpe_repetitions(epsilon);
  const std::size_t grid = std::size_t{1} << m;
  const std::vector<double> round = kitaev_distribution(u, zero_state(u.dim()), m, ledger);
  return circular_median_window_probability(round, r, 0, window_half_width(delta, grid));
}

}  // namespace phaseforge
