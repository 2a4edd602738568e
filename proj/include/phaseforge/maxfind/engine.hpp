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

#include "phaseforge/sim/pure_state.hpp"
#include "phaseforge/sim/rng.hpp"

namespace phaseforge {

/// V together with the register holding the values x_k and their decoding.
/// `apply` runs the circuit of V (or V^-1) on a state over `layout`; it may
/// charge its own costs (e.g. oracle calls inside V) to a ledger it captured.
struct ValuedUnitary {
  RegisterLayout layout;
  std::function<void(PureState&, bool inverse)> apply;
  std::size_t value_register = 0;
  std::function<double(std::size_t)> decode;

  /// Wraps an explicit unitary matrix.
  static ValuedUnitary from_matrix(Matrix v, RegisterLayout layout, std::size_t value_register,
                                   std::function<double(std::size_t)> decode);
};

/// Which of the three places that touch V an application belongs to. A
/// reflection is V^-1 (kReflectInverse), the zero reflection, then V
/// (kReflectForward).
enum class VUse { kPrepare, kReflectInverse, kReflectForward };

/// Called once per application of V or V^-1.
using ChargeFn = std::function<void(VUse)>;

/// The state space that amplitude amplification acts on. Values are
/// identified by labels 0..K-1 in increasing order of decoded value.
///
/// Only three operations touch V: preparing V|0>, reflecting about V|0>
/// (two uses of V), and measuring the value register. flip_above is the
/// input-independent threshold comparator and is free.
class AmplificationEngine {
 public:
  virtual ~AmplificationEngine() = default;

  /// Decoded values, strictly increasing; label i decodes to values()[i].
  virtual const std::vector<double>& values() const = 0;
  /// Resets the workspace to V|0>. One use of V.
  virtual void prepare() = 0;
  /// Multiplies every branch whose label exceeds `threshold` by -1.
  virtual void flip_above(std::size_t threshold) = 0;
  /// I - 2 V|0><0|V^dagger. Two uses of V.
  virtual void reflect_about_start() = 0;
  /// Current distribution over labels (no collapse, no cost).
  virtual std::vector<double> distribution() const = 0;
  /// Measures the value register, collapsing the workspace.
  virtual std::size_t measure(Rng& rng) = 0;

  /// Distribution of one attempt (prepare, then k rounds of flip_above and
  /// reflect_about_start) without charging anything. Used by exact analysis.
  virtual std::vector<double> attempt_distribution(std::size_t threshold, std::size_t k);

  /// True when no encodable value exceeds the one with this label, so the
  /// comparator above it is empty and further attempts cannot improve.
  virtual bool is_encoding_maximum(std::size_t /*label*/) const { return false; }

  std::uint64_t v_uses() const { return v_uses_; }
  void set_charge(ChargeFn fn) { charge_ = std::move(fn); }

 protected:
  void charge_v(VUse use) {
    if (!charging_) return;
    ++v_uses_;
    if (charge_) charge_(use);
  }
  bool charging_ = true;

 private:
  std::uint64_t v_uses_ = 0;
  ChargeFn charge_;
};

/// Literal statevector engine over V's full layout.
class DenseEngine : public AmplificationEngine {
 public:
  explicit DenseEngine(ValuedUnitary vu);

  const std::vector<double>& values() const override { return values_; }
  void prepare() override;
  void flip_above(std::size_t threshold) override;
  void reflect_about_start() override;
  std::vector<double> distribution() const override;
  std::size_t measure(Rng& rng) override;
  bool is_encoding_maximum(std::size_t label) const override {
    return label + 1 == values_.size();
  }

  const PureState& state() const { return state_; }
  const ValuedUnitary& valued_unitary() const { return vu_; }

 private:
  ValuedUnitary vu_;
  std::vector<double> values_;
  std::vector<std::size_t> label_of_digit_;
  std::vector<std::size_t> label_of_index_;
  PureState state_;
};

/// Exact compressed engine. V|0> = sum_x sqrt(p_x) |e_x> with orthonormal
/// |e_x> carrying value label x. Both reflections preserve span{|e_x>}, so
/// the workspace is the coefficient vector c in that basis.
class SectorEngine : public AmplificationEngine {
 public:
  SectorEngine(std::vector<double> values, std::vector<double> weights);

  const std::vector<double>& values() const override { return values_; }
  void prepare() override;
  void flip_above(std::size_t threshold) override;
  void reflect_about_start() override;
  std::vector<double> distribution() const override;
  std::size_t measure(Rng& rng) override;
  std::vector<double> attempt_distribution(std::size_t threshold, std::size_t k) override;

  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> values_;
  std::vector<double> weights_;
  std::vector<double> sqrt_w_;
  std::vector<double> c_;  // amplitudes stay real in this basis
};

/// Builds a SectorEngine from an unsorted (value, weight) list, merging equal
/// values and dropping zero weights.
SectorEngine make_sector_engine(const std::vector<std::pair<double, double>>& value_weights);

}  // namespace phaseforge
