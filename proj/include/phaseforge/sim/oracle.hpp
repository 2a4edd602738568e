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
#include <optional>
#include <string>
#include <vector>

#include "phaseforge/sim/pure_state.hpp"
#include "phaseforge/sim/types.hpp"

namespace phaseforge {

/// Query counters. Only the add methods exist, so counts never decrease.
class CostLedger {
 public:
  std::uint64_t oracle_calls() const { return oracle_calls_; }
  std::uint64_t advice_unitary_calls() const { return advice_unitary_calls_; }
  std::uint64_t advice_copies_consumed() const { return advice_copies_consumed_; }

  void add_oracle_calls(std::uint64_t n) { oracle_calls_ += n; }
  void add_advice_unitary_calls(std::uint64_t n) { advice_unitary_calls_ += n; }
  void add_advice_copies(std::uint64_t n) { advice_copies_consumed_ += n; }
  void absorb(const CostLedger& other) {
    oracle_calls_ += other.oracle_calls_;
    advice_unitary_calls_ += other.advice_unitary_calls_;
    advice_copies_consumed_ += other.advice_copies_consumed_;
  }

  bool operator==(const CostLedger&) const = default;

 private:
  std::uint64_t oracle_calls_ = 0;
  std::uint64_t advice_unitary_calls_ = 0;
  std::uint64_t advice_copies_consumed_ = 0;
};

/// Eigen-decomposition of a unitary: U = vectors * diag(e^{i phases}) * vectors^dagger.
struct Spectrum {
  std::vector<double> phases;  // in [0, 2pi)
  Matrix vectors;              // columns are eigenvectors
};

/// The input unitary U. Either a diagonal of eigenphases or a dense matrix.
class BlackBoxUnitary {
 public:
  static BlackBoxUnitary diagonal(std::vector<double> phases, std::string label = "diag");
  static BlackBoxUnitary dense(Matrix m, std::string label = "dense");

  std::size_t dim() const { return dim_; }
  bool is_diagonal() const { return diagonal_; }
  const std::string& label() const { return label_; }

  /// Diagonal entries e^{i phase} (or their conjugates). Diagonal form only.
  const std::vector<Complex>& diagonal_entries(bool inverse) const;
  const std::vector<double>& phases() const;

  Matrix matrix() const;
  Matrix inverse_matrix() const { return matrix().adjoint(); }
  Spectrum spectrum() const;

 private:
  BlackBoxUnitary() = default;
  std::size_t dim_ = 0;
  bool diagonal_ = true;
  std::vector<double> phases_;
  std::vector<Complex> diag_, diag_inv_;
  Matrix dense_, dense_inv_;
  std::string label_;

  friend void apply_oracle(PureState&, const BlackBoxUnitary&, std::size_t, bool,
                           std::optional<QubitRef>, CostLedger&);
};

/// Applies U (or U^-1), optionally controlled on one qubit, to register
/// `target`. Charges exactly one oracle call.
void apply_oracle(PureState& state, const BlackBoxUnitary& u, std::size_t target, bool inverse,
                  std::optional<QubitRef> control, CostLedger& ledger);

/// Applies U^power as `power` separately charged applications.
void apply_oracle_power(PureState& state, const BlackBoxUnitary& u, std::size_t target,
                        std::uint64_t power, bool inverse, std::optional<QubitRef> control,
                        CostLedger& ledger);

}  // namespace phaseforge
