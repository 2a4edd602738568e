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
#include <variant>

#include "phaseforge/sim/oracle.hpp"
#include "phaseforge/sim/pure_state.hpp"

namespace phaseforge {

/// Advice given as a finite stock of identical copies of a state.
struct AdviceCopies {
  PureState state;
  std::uint64_t budget = 0;
};

/// Advice given as a black-box unitary A with A|0> = |alpha>. The layout
/// names the registers A acts on: the system register first, then any
/// workspace the preparer declares. A preparer may itself query U, in which
/// case each use also charges `oracle_calls_per_use` oracle calls.
struct AdvicePreparer {
  Matrix unitary;
  RegisterLayout layout;
  std::uint64_t oracle_calls_per_use = 0;
  /// False for fixed, input-independent circuits that merely share the
  /// preparer interface; their uses are not charged as advice.
  bool counts_as_advice = true;
};

class AdviceSource {
 public:
  static AdviceSource copies(PureState state, std::uint64_t budget, double gamma);
  static AdviceSource preparer(Matrix unitary, RegisterLayout layout, double gamma,
                               std::uint64_t oracle_calls_per_use = 0);
  /// A preparer whose uses cost nothing: an ordinary fixed circuit.
  static AdviceSource free_preparer(Matrix unitary, RegisterLayout layout, double gamma);

  bool is_copies() const { return std::holds_alternative<AdviceCopies>(body_); }
  bool is_preparer() const { return std::holds_alternative<AdvicePreparer>(body_); }
  /// Declared overlap with the top eigenspace. Metadata only.
  double gamma() const { return gamma_; }

  // Copies variant.
  std::uint64_t budget() const;
  /// Hands out one copy and charges the ledger. Throws BudgetExhausted at 0.
  PureState take_copy(CostLedger& ledger);
  /// Consumes `n` copies at once (all or nothing).
  void consume_copies(std::uint64_t n, CostLedger& ledger);
  /// The copied state, for simulator-side construction of channels.
  const PureState& copy_state() const;

  // Preparer variant.
  const AdvicePreparer& preparer_body() const;
  /// Applies A or A^-1 to registers [first, first + count) of `state`.
  void apply_preparer(PureState& state, std::size_t first, std::size_t count, bool inverse,
                      CostLedger& ledger) const;
  /// A|0> computed without charging (simulator-side knowledge).
  PureState prepared_state() const;

 private:
  AdviceSource(std::variant<AdviceCopies, AdvicePreparer> body, double gamma)
      : body_(std::move(body)), gamma_(gamma) {}
  std::variant<AdviceCopies, AdvicePreparer> body_;
  double gamma_;
};

}  // namespace phaseforge
