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
#include <utility>
#include <vector>

#include "phaseforge/maxfind/engine.hpp"
#include "phaseforge/sim/advice.hpp"
#include "phaseforge/sim/oracle.hpp"

namespace phaseforge {

/// Extra phase bits used by the coherent estimator on top of
/// ceil(log2(2 pi / delta)).
inline constexpr unsigned kCoherentPad = 4;

/// ceil(log2(2 pi / delta)) + kCoherentPad.
unsigned coherent_phase_bits(double delta);

/// Largest probability, over eigenphases theta, that the circular median of
/// r independent `bits`-bit estimates lands farther than delta from theta.
double coherent_bad_mass(double delta, unsigned bits, std::size_t r);

/// Smallest odd r with coherent_bad_mass(delta, bits, r) <= eta.
std::size_t coherent_repetitions(double delta, unsigned bits, double eta);

struct MaxQpeConfig {
  double delta = 0.1;
  double gamma = 1.0;
  /// Error allowed per eigencomponent inside V~.
  double eta = 0.01;
  unsigned phase_bits = 1;
  /// Parallel coherent estimates combined by the median.
  std::size_t repetitions = 1;
  std::uint64_t maxfind_budget = 1;

  /// Defaults: eta = gamma^2 / 100, coherent_phase_bits(delta), the
  /// calibrated repetition count and max_find_budget(gamma^2).
  static MaxQpeConfig make(double delta, double gamma);

  /// Throws std::invalid_argument on out-of-range fields or eta >= gamma^2.
  void validate() const;

  std::size_t grid() const { return std::size_t{1} << phase_bits; }
  /// (2^bits - 1) * repetitions.
  std::uint64_t oracle_calls_per_v() const;
};

/// The circuit of V~ on explicit registers: A on its own registers, then
/// `repetitions` coherent phase estimations of U on the system register
/// (register 0 of A's layout), then value <- value + median(estimates) when
/// repetitions > 1. With one repetition the phase register is the value
/// register. Each application of V~ or V~^-1 charges the preparer's costs
/// and oracle_calls_per_v() oracle calls to `ledger`, which must outlive
/// the returned object. Values decode to angles 2 pi x / 2^bits.
ValuedUnitary build_v_tilde(const BlackBoxUnitary& u, const AdviceSource& a,
                            const MaxQpeConfig& cfg, CostLedger& ledger);

/// Weight of each eigenphase of U in a state whose register 0 is U's
/// system: sum over eigenvectors u_j with that phase of ||(<u_j| (x) I) psi||^2.
/// Phases closer than 1e-12 are merged.
std::vector<std::pair<double, double>> spectral_weights(const BlackBoxUnitary& u,
                                                        const PureState& psi);

/// Distribution of the value register of V~|0>, as (angle, probability)
/// pairs over the 2^bits grid, from the spectral weights of A|0>.
std::vector<std::pair<double, double>> v_tilde_value_distribution(
    const std::vector<std::pair<double, double>>& weights, const MaxQpeConfig& cfg);

}  // namespace phaseforge
