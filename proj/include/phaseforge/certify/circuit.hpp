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
#include <functional>
#include <optional>
#include <vector>

#include "phaseforge/sim/oracle.hpp"
#include "phaseforge/sim/pure_state.hpp"
#include "phaseforge/sim/rng.hpp"

namespace phaseforge {

/// An oracle algorithm written out as a fixed list of steps over a layout.
/// The structure never depends on the oracle; only the unitary plugged into
/// the oracle steps changes between runs.
class OracleCircuit {
 public:
  enum class Kind { kGate, kOracle, kPhase, kPermutation, kMeasure };

  struct Step {
    Kind kind;
    Matrix gate;                 // kGate
    std::size_t first = 0;       // kGate: first register; kOracle: target; kMeasure: register
    std::size_t count = 1;       // kGate: number of registers
    bool inverse = false;        // kOracle
    std::optional<QubitRef> control;  // kOracle
    std::function<Complex(std::size_t)> phase;         // kPhase
    std::function<std::size_t(std::size_t)> perm;      // kPermutation
    std::function<std::size_t(std::size_t)> perm_inv;  // kPermutation
  };

  explicit OracleCircuit(RegisterLayout layout);

  const RegisterLayout& layout() const { return layout_; }
  const std::vector<Step>& steps() const { return steps_; }

  OracleCircuit& gate(Matrix g, std::size_t first, std::size_t count = 1);
  OracleCircuit& oracle(std::size_t target, bool inverse = false,
                        std::optional<QubitRef> control = std::nullopt);
  /// `power` separate oracle steps.
  OracleCircuit& oracle_power(std::size_t target, std::uint64_t power, bool inverse,
                              std::optional<QubitRef> control);
  /// Multiplies amplitude x by f(x); f must have unit modulus.
  OracleCircuit& phase(std::function<Complex(std::size_t)> f);
  OracleCircuit& permutation(std::function<std::size_t(std::size_t)> perm,
                             std::function<std::size_t(std::size_t)> inverse);
  /// A mid-circuit measurement of one register.
  OracleCircuit& measure(std::size_t reg);
  OracleCircuit& append(const OracleCircuit& other);

  /// The reversed circuit with every step inverted. Throws
  /// std::logic_error if the circuit measures.
  OracleCircuit inverse() const;

  /// Number of oracle steps.
  std::uint64_t cost() const;
  bool has_measurement() const;

  /// Called just before every oracle step with the number of oracle steps
  /// already applied.
  using QueryHook = std::function<void(std::uint64_t, const PureState&)>;

  /// Runs on `state` with oracle `u`, charging one oracle call per oracle
  /// step. Measurements sample from `rng`; without one they throw
  /// std::logic_error.
  void run(PureState& state, const BlackBoxUnitary& u, CostLedger& ledger, Rng* rng = nullptr,
           const QueryHook& before_query = {}) const;

  /// Applies step `index` alone. Oracle steps charge one call.
  void apply_step(std::size_t index, PureState& state, const BlackBoxUnitary& u, CostLedger& ledger,
                  Rng* rng = nullptr) const;

  /// Runs from |0>.
  PureState run_from_zero(const BlackBoxUnitary& u, CostLedger& ledger) const;

 private:
  RegisterLayout layout_;
  std::vector<Step> steps_;
};

/// A random cost-`cost` circuit on registers {target 2, work 2, aux 3}:
/// Haar-random layers between oracle steps on the target, each step a
/// forward or inverse call, optionally controlled on the work qubit.
OracleCircuit random_oracle_circuit(std::uint64_t cost, Rng& rng);

}  // namespace phaseforge
