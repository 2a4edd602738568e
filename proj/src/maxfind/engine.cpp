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

#include "phaseforge/maxfind/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace phaseforge {

ValuedUnitary ValuedUnitary::from_matrix(Matrix v, RegisterLayout layout,
                                         std::size_t value_register,
                                         std::function<double(std::size_t)> decode) {
  if (static_cast<std::size_t>(v.rows()) != layout.dim()) {
    throw DimensionError("V does not match its layout");
  }
  if (unitarity_defect(v) > kInvariantTol) throw InvariantViolation("V is not unitary");
  Matrix v_inv = v.adjoint();
  auto apply = [v = std::move(v), v_inv = std::move(v_inv)](PureState& s, bool inverse) {
    s.mutable_amplitudes() = (inverse ? v_inv : v) * s.amplitudes();
  };
  return {std::move(layout), std::move(apply), value_register, std::move(decode)};
}

std::vector<double> AmplificationEngine::attempt_distribution(std::size_t threshold,
                                                              std::size_t k) {
  const bool was = charging_;
  charging_ = false;
  prepare();
  for (std::size_t i = 0; i < k; ++i) {
    flip_above(threshold);
    reflect_about_start();
  }
  charging_ = was;
  return distribution();
}

DenseEngine::DenseEngine(ValuedUnitary vu) : vu_(std::move(vu)) {
  const RegisterLayout& l = vu_.layout;
  if (vu_.value_register >= l.size()) throw DimensionError("value register out of range");
  const std::size_t d = l[vu_.value_register].dim;
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t x = 0; x < d; ++x) order.emplace_back(vu_.decode(x), x);
  std::sort(order.begin(), order.end());
  label_of_digit_.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (i > 0 && order[i].first == order[i - 1].first) {
      throw std::invalid_argument("decode is not injective on the value register");
    }
    values_.push_back(order[i].first);
    label_of_digit_[order[i].second] = i;
  }
  label_of_index_.resize(l.dim());
  for (std::size_t x = 0; x < l.dim(); ++x) {
    label_of_index_[x] = label_of_digit_[l.digit(x, vu_.value_register)];
  }
  state_ = PureState::basis(l, 0);
}

void DenseEngine::prepare() {
  state_ = PureState::basis(vu_.layout, 0);
  vu_.apply(state_, false);
  charge_v(VUse::kPrepare);
}

void DenseEngine::flip_above(std::size_t threshold) {
  Complex* a = state_.mutable_amplitudes().data();
  for (std::size_t x = 0; x < label_of_index_.size(); ++x) {
    if (label_of_index_[x] > threshold) a[x] = -a[x];
  }
}

void DenseEngine::reflect_about_start() {
  vu_.apply(state_, true);
  charge_v(VUse::kReflectInverse);
  state_.mutable_amplitudes()[0] *= -1.0;
  vu_.apply(state_, false);
  charge_v(VUse::kReflectForward);
}

std::vector<double> DenseEngine::distribution() const {
  std::vector<double> p(values_.size(), 0.0);
  const auto marg = state_.marginal(vu_.value_register);
  for (std::size_t x = 0; x < marg.size(); ++x) p[label_of_digit_[x]] += marg[x];
  return p;
}

std::size_t DenseEngine::measure(Rng& rng) {
  const auto marg = state_.marginal(vu_.value_register);
  const std::size_t digit = sample_index(marg, rng);
  state_.project(vu_.value_register, digit);
  return label_of_digit_[digit];
}

SectorEngine::SectorEngine(std::vector<double> values, std::vector<double> weights)
    : values_(std::move(values)), weights_(std::move(weights)) {
  if (values_.size() != weights_.size() || values_.empty()) {
    throw std::invalid_argument("sector values and weights must be nonempty and aligned");
  }
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) throw InvariantViolation("sector weights do not sum to 1");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i > 0 && !(values_[i] > values_[i - 1])) {
      throw std::invalid_argument("sector values must be strictly increasing");
    }
    if (weights_[i] < 0) throw std::invalid_argument("negative sector weight");
    sqrt_w_.push_back(std::sqrt(weights_[i]));
  }
  c_ = sqrt_w_;
}

void SectorEngine::prepare() {
  c_ = sqrt_w_;
  charge_v(VUse::kPrepare);
}

void SectorEngine::flip_above(std::size_t threshold) {
  for (std::size_t x = threshold + 1; x < c_.size(); ++x) c_[x] = -c_[x];
}

void SectorEngine::reflect_about_start() {
  charge_v(VUse::kReflectInverse);
  double overlap = 0;
  for (std::size_t x = 0; x < c_.size(); ++x) overlap += sqrt_w_[x] * c_[x];
  for (std::size_t x = 0; x < c_.size(); ++x) c_[x] -= 2 * overlap * sqrt_w_[x];
  charge_v(VUse::kReflectForward);
}

std::vector<double> SectorEngine::distribution() const {
  std::vector<double> p(c_.size());
  for (std::size_t x = 0; x < c_.size(); ++x) p[x] = c_[x] * c_[x];
  return p;
}

std::size_t SectorEngine::measure(Rng& rng) {
  const std::size_t x = sample_index(distribution(), rng);
  std::fill(c_.begin(), c_.end(), 0.0);
  c_[x] = 1.0;
  return x;
}

std::vector<double> SectorEngine::attempt_distribution(std::size_t threshold, std::size_t k) {
  // Closed form of k Grover rounds in the two-dimensional good/bad plane.
  double good = 0;
  for (std::size_t x = threshold + 1; x < weights_.size(); ++x) good += weights_[x];
  std::vector<double> p(weights_.size(), 0.0);
  if (good <= 0) return weights_;
  const double angle = std::asin(std::sqrt(std::min(1.0, good)));
  const double s = std::sin((2.0 * static_cast<double>(k) + 1) * angle);
  const double g = s * s;
  for (std::size_t x = 0; x < weights_.size(); ++x) {
    if (x > threshold) {
      p[x] = weights_[x] / good * g;
    } else if (good < 1) {
      p[x] = weights_[x] / (1 - good) * (1 - g);
    }
  }
  return p;
}

SectorEngine make_sector_engine(const std::vector<std::pair<double, double>>& value_weights) {
  std::map<double, double> merged;
  for (const auto& [v, w] : value_weights) {
    if (w > 0) merged[v] += w;
  }
  std::vector<double> values, weights;
  double total = 0;
  for (const auto& [v, w] : merged) {
    values.push_back(v);
    weights.push_back(w);
    total += w;
  }
  for (auto& w : weights) w /= total;
  return SectorEngine(std::move(values), std::move(weights));
}

}  // namespace phaseforge
