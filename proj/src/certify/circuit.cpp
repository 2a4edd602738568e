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

#include "phaseforge/certify/circuit.hpp"

#include <algorithm>
#include <stdexcept>

#include "phaseforge/sim/instances.hpp"

namespace phaseforge {

OracleCircuit::OracleCircuit(RegisterLayout layout) : layout_(std::move(layout)) {}

OracleCircuit& OracleCircuit::gate(Matrix g, std::size_t first, std::size_t count) {
  if (static_cast<std::size_t>(g.rows()) != layout_.group_dim(first, count)) {
    throw DimensionError("gate does not match its registers");
  }
  if (unitarity_defect(g) > kInvariantTol) throw InvariantViolation("gate is not unitary");
  Step s{Kind::kGate};
  s.gate = std::move(g);
  s.first = first;
  s.count = count;
  steps_.push_back(std::move(s));
  return *this;
}

OracleCircuit& OracleCircuit::oracle(std::size_t target, bool inverse,
                                     std::optional<QubitRef> control) {
  if (target >= layout_.size()) throw DimensionError("oracle target out of range");
  if (control) layout_.check_qubit(*control);
  Step s{Kind::kOracle};
  s.first = target;
  s.inverse = inverse;
  s.control = control;
  steps_.push_back(std::move(s));
  return *this;
}

OracleCircuit& OracleCircuit::oracle_power(std::size_t target, std::uint64_t power, bool inverse,
                                           std::optional<QubitRef> control) {
  for (std::uint64_t i = 0; i < power; ++i) oracle(target, inverse, control);
  return *this;
}

OracleCircuit& OracleCircuit::phase(std::function<Complex(std::size_t)> f) {
  Step s{Kind::kPhase};
  s.phase = std::move(f);
  steps_.push_back(std::move(s));
  return *this;
}

OracleCircuit& OracleCircuit::permutation(std::function<std::size_t(std::size_t)> perm,
                                          std::function<std::size_t(std::size_t)> inverse) {
  Step s{Kind::kPermutation};
  s.perm = std::move(perm);
  s.perm_inv = std::move(inverse);
  steps_.push_back(std::move(s));
  return *this;
}

OracleCircuit& OracleCircuit::measure(std::size_t reg) {
  if (reg >= layout_.size()) throw DimensionError("measured register out of range");
  Step s{Kind::kMeasure};
  s.first = reg;
  steps_.push_back(std::move(s));
  return *this;
}

OracleCircuit& OracleCircuit::append(const OracleCircuit& other) {
  if (!(other.layout_ == layout_)) throw DimensionError("circuit layouts differ");
  steps_.insert(steps_.end(), other.steps_.begin(), other.steps_.end());
  return *this;
}

OracleCircuit OracleCircuit::inverse() const {
  OracleCircuit out(layout_);
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    Step s = *it;
    switch (s.kind) {
      case Kind::kGate:
        s.gate = s.gate.adjoint().eval();
        break;
      case Kind::kOracle:
        s.inverse = !s.inverse;
        break;
      case Kind::kPhase: {
        auto f = s.phase;
        s.phase = [f](std::size_t x) { return std::conj(f(x)); };
        break;
      }
      case Kind::kPermutation:
        std::swap(s.perm, s.perm_inv);
        break;
      case Kind::kMeasure:
        throw std::logic_error("a circuit with measurements has no inverse");
    }
    out.steps_.push_back(std::move(s));
  }
  return out;
}

std::uint64_t OracleCircuit::cost() const {
  return static_cast<std::uint64_t>(
      std::count_if(steps_.begin(), steps_.end(), [](const Step& s) { return s.kind == Kind::kOracle; }));
}

bool OracleCircuit::has_measurement() const {
  return std::any_of(steps_.begin(), steps_.end(), [](const Step& s) { return s.kind == Kind::kMeasure; });
}

void OracleCircuit::apply_step(std::size_t index, PureState& state, const BlackBoxUnitary& u,
                               CostLedger& ledger, Rng* rng) const {
  const Step& s = steps_.at(index);
  switch (s.kind) {
    case Kind::kGate:
      state.apply_group(s.gate, s.first, s.count);
      break;
    case Kind::kOracle:
      apply_oracle(state, u, s.first, s.inverse, s.control, ledger);
      break;
    case Kind::kPhase:
      state.apply_phase_function(s.phase);
      break;
    case Kind::kPermutation:
      state.apply_permutation(s.perm);
      break;
    case Kind::kMeasure: {
      if (!rng) throw std::logic_error("circuit measures but no randomness was supplied");
      const auto marg = state.marginal(s.first);
      state.project(s.first, sample_index(marg, *rng));
      break;
    }
  }
}

void OracleCircuit::run(PureState& state, const BlackBoxUnitary& u, CostLedger& ledger, Rng* rng,
                        const QueryHook& before_query) const {
  if (!(state.layout() == layout_)) throw DimensionError("state layout does not match the circuit");
  std::uint64_t queries = 0;
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    if (steps_[i].kind == Kind::kOracle) {
      if (before_query) before_query(queries, state);
      ++queries;
    }
    apply_step(i, state, u, ledger, rng);
  }
}

PureState OracleCircuit::run_from_zero(const BlackBoxUnitary& u, CostLedger& ledger) const {
  PureState s = PureState::basis(layout_, 0);
  run(s, u, ledger);
  return s;
}

OracleCircuit random_oracle_circuit(std::uint64_t cost, Rng& rng) {
  OracleCircuit c(RegisterLayout({{"target", 2}, {"work", 2}, {"aux", 3}}));
  const std::size_t dim = c.layout().dim();
  std::bernoulli_distribution coin(0.5);
  c.gate(haar_unitary(dim, rng), 0, 3);
  for (std::uint64_t i = 0; i < cost; ++i) {
    const bool inverse = coin(rng);
    std::optional<QubitRef> control;
    if (coin(rng)) control = QubitRef{1, 0};
    c.oracle(0, inverse, control);
    c.gate(haar_unitary(dim, rng), 0, 3);
  }
  return c;
}

}  // namespace phaseforge
