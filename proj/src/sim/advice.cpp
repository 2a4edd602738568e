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

#include "phaseforge/sim/advice.hpp"

#include <string>

namespace phaseforge {

AdviceSource AdviceSource::copies(PureState state, std::uint64_t budget, double gamma) {
  state.check_normalized();
  return AdviceSource(AdviceCopies{std::move(state), budget}, gamma);
}

AdviceSource AdviceSource::preparer(Matrix unitary, RegisterLayout layout, double gamma,
                                    std::uint64_t oracle_calls_per_use) {
  if (static_cast<std::size_t>(unitary.rows()) != layout.dim()) {
    throw DimensionError("preparer size does not match its declared layout");
  }
  if (unitarity_defect(unitary) > kInvariantTol) throw InvariantViolation("preparer is not unitary");
  return AdviceSource(AdvicePreparer{std::move(unitary), std::move(layout), oracle_calls_per_use},
                      gamma);
}

AdviceSource AdviceSource::free_preparer(Matrix unitary, RegisterLayout layout, double gamma) {
  AdviceSource a = preparer(std::move(unitary), std::move(layout), gamma);
  std::get<AdvicePreparer>(a.body_).counts_as_advice = false;
  return a;
}

std::uint64_t AdviceSource::budget() const {
  const auto* c = std::get_if<AdviceCopies>(&body_);
  if (!c) throw std::logic_error("advice source holds a preparer, not copies");
  return c->budget;
}

PureState AdviceSource::take_copy(CostLedger& ledger) {
  consume_copies(1, ledger);
  return std::get<AdviceCopies>(body_).state;
}

void AdviceSource::consume_copies(std::uint64_t n, CostLedger& ledger) {
  auto* c = std::get_if<AdviceCopies>(&body_);
  if (!c) throw std::logic_error("advice source holds a preparer, not copies");
  if (c->budget < n) {
    throw BudgetExhausted("requested " + std::to_string(n) + " advice copies, " +
                          std::to_string(c->budget) + " left");
  }
  c->budget -= n;
  ledger.add_advice_copies(n);
}

const PureState& AdviceSource::copy_state() const {
  const auto* c = std::get_if<AdviceCopies>(&body_);
  if (!c) throw std::logic_error("advice source holds a preparer, not copies");
  return c->state;
}

const AdvicePreparer& AdviceSource::preparer_body() const {
  const auto* p = std::get_if<AdvicePreparer>(&body_);
  if (!p) throw std::logic_error("advice source holds copies, not a preparer");
  return *p;
}

void AdviceSource::apply_preparer(PureState& state, std::size_t first, std::size_t count,
                                  bool inverse, CostLedger& ledger) const {
  const auto& p = preparer_body();
  state.apply_group(inverse ? Matrix(p.unitary.adjoint()) : p.unitary, first, count);
  if (p.counts_as_advice) ledger.add_advice_unitary_calls(1);
  ledger.add_oracle_calls(p.oracle_calls_per_use);
}

PureState AdviceSource::prepared_state() const {
  const auto& p = preparer_body();
  return PureState(p.layout, p.unitary.col(0));
}

}  // namespace phaseforge
