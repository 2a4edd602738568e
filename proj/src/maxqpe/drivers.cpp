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

#include "phaseforge/maxqpe/drivers.hpp"

#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include "phaseforge/lmr/lmr.hpp"
#include "phaseforge/maxfind/max_find.hpp"
#include "phaseforge/sim/angles.hpp"
#include "phaseforge/sim/density_state.hpp"
#include "phaseforge/sim/instances.hpp"

namespace phaseforge {

namespace {

Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

RegisterLayout system_layout(std::size_t n) { return RegisterLayout({{"system", n}}); }

SectorEngine sector_engine_for(const BlackBoxUnitary& u, const PureState& start,
                               const MaxQpeConfig& cfg) {
  return make_sector_engine(v_tilde_value_distribution(spectral_weights(u, start), cfg));
}

// Density-matrix engine for the copies driver. V~ = Q (A (x) I) where Q is
// the estimation circuit; the reflection about V~|0> is
// Q (I - 2 |alpha><alpha| (x) |0><0|) Q^dagger and the middle factor is
// replaced by LMR with `steps` copies, acting only where the estimation
// registers are all zero.
class DensityEngine : public AmplificationEngine {
 public:
  DensityEngine(const BlackBoxUnitary& u, const PureState& alpha, const MaxQpeConfig& cfg,
                std::uint64_t steps) {
    const std::size_t n = u.dim();
    CostLedger scratch;
    const AdviceSource identity =
        AdviceSource::free_preparer(Matrix::Identity(ix(n), ix(n)), system_layout(n), 1.0);
    ValuedUnitary vu = build_v_tilde(u, identity, cfg, scratch);
    layout_ = vu.layout;
    value_reg_ = vu.value_register;
    const std::size_t d = layout_.dim();
    if (d * d > 4096) {
      throw std::length_error("faithful LMR simulation limited to 64 x 64 density matrices, got " +
                              std::to_string(d));
    }
    q_.resize(ix(d), ix(d));
    for (std::size_t i = 0; i < d; ++i) {
      PureState e = PureState::basis(layout_, i);
      vu.apply(e, false);
      q_.col(ix(i)) = e.amplitudes();
    }
    const std::size_t rest = d / n;
    Vector start = Vector::Zero(ix(d));
    for (std::size_t s = 0; s < n; ++s) start(ix(s * rest)) = alpha.amplitudes()(ix(s));
    start = q_ * start;
    rho0_ = start * start.adjoint();
    rho_ = rho0_;

    const std::size_t grid = layout_[value_reg_].dim;
    for (std::size_t x = 0; x < grid; ++x) values_.push_back(grid_angle(x, grid));
    label_.resize(d);
    for (std::size_t x = 0; x < d; ++x) label_[x] = layout_.digit(x, value_reg_);

    std::vector<bool> active(rest, false);
    active[0] = true;
    const Matrix sigma = alpha.amplitudes() * alpha.amplitudes().adjoint();
    lmr_.emplace(layout_, 0, sigma, kPi, steps, std::move(active));
  }

  const std::vector<double>& values() const override { return values_; }

  void prepare() override {
    rho_ = rho0_;
    charge_v(VUse::kPrepare);
  }

  void flip_above(std::size_t threshold) override {
    const auto d = static_cast<std::size_t>(rho_.rows());
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        if ((label_[i] > threshold) != (label_[j] > threshold)) rho_(ix(i), ix(j)) *= -1.0;
      }
    }
  }

  void reflect_about_start() override {
    charge_v(VUse::kReflectInverse);
    DensityState s(layout_, q_.adjoint() * rho_ * q_);
    lmr_->apply(s);
    rho_ = q_ * s.matrix() * q_.adjoint();
    charge_v(VUse::kReflectForward);
  }

  std::vector<double> distribution() const override {
    std::vector<double> p(values_.size(), 0.0);
    for (std::size_t x = 0; x < label_.size(); ++x) p[label_[x]] += rho_(ix(x), ix(x)).real();
    return p;
  }

  std::size_t measure(Rng& rng) override {
    const std::size_t v = sample_index(distribution(), rng);
    const auto d = static_cast<std::size_t>(rho_.rows());
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        if (label_[i] != v || label_[j] != v) rho_(ix(i), ix(j)) = 0;
      }
    }
    rho_ /= rho_.trace().real();
    return v;
  }

  bool is_encoding_maximum(std::size_t label) const override { return label + 1 == values_.size(); }

 private:
  RegisterLayout layout_;
  std::size_t value_reg_ = 0;
  Matrix q_, rho0_, rho_;
  std::vector<double> values_;
  std::vector<std::size_t> label_;
  std::optional<ControlledLmr> lmr_;
};

std::vector<std::pair<double, double>> on_grid(const AmplificationEngine& engine,
                                               const std::vector<double>& out,
                                               std::size_t grid) {
  std::vector<std::pair<double, double>> full;
  for (std::size_t x = 0; x < grid; ++x) full.emplace_back(grid_angle(x, grid), 0.0);
  const double scale = static_cast<double>(grid) / kTwoPi;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto x = static_cast<std::size_t>(std::llround(engine.values()[i] * scale)) % grid;
    full[x].second += out[i];
  }
  return full;
}

const PureState& checked_copies(const AdviceSource& copies, const BlackBoxUnitary& u) {
  if (!copies.is_copies()) throw std::invalid_argument("copies driver needs an advice stock");
  const PureState& alpha = copies.copy_state();
  if (alpha.dim() != u.dim()) throw DimensionError("advice copies do not match U");
  return alpha;
}

}  // namespace

double max_phase_estimate(const BlackBoxUnitary& u, const AdviceSource& a, const MaxQpeConfig& cfg,
                          CostLedger& ledger, std::uint64_t seed, VTildeSimulation sim) {
  if (!a.is_preparer()) throw std::invalid_argument("max_phase_estimate needs a preparer");
  Rng rng(seed);
  if (sim == VTildeSimulation::kDense) {
    DenseEngine engine(build_v_tilde(u, a, cfg, ledger));
    return max_find(engine, cfg.maxfind_budget, rng).value;
  }
  cfg.validate();
  const AdvicePreparer& prep = a.preparer_body();
  if (prep.layout[0].dim != u.dim()) throw DimensionError("preparer system register does not match U");
  SectorEngine engine = sector_engine_for(u, a.prepared_state(), cfg);
  const std::uint64_t oracle_per_use = cfg.oracle_calls_per_v() + prep.oracle_calls_per_use;
  engine.set_charge([&](VUse) {
    if (prep.counts_as_advice) ledger.add_advice_unitary_calls(1);
    ledger.add_oracle_calls(oracle_per_use);
  });
  return max_find(engine, cfg.maxfind_budget, rng).value;
}

AdviceSource maximally_entangled_preparer(std::size_t n) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  Vector v = Vector::Zero(ix(n * n));
  for (std::size_t j = 0; j < n; ++j) v(ix(j * n + j)) = 1.0 / std::sqrt(static_cast<double>(n));
  return AdviceSource::free_preparer(unitary_with_first_column(v),
                                     RegisterLayout({{"system", n}, {"mirror", n}}),
                                     1.0 / std::sqrt(static_cast<double>(n)));
}

double maxqpe_adviceless(const BlackBoxUnitary& u, double delta, CostLedger& ledger,
                         std::uint64_t seed, VTildeSimulation sim) {
  const std::size_t n = u.dim();
  if (!is_power_of_two(n)) throw std::invalid_argument("adviceless driver needs N a power of two");
  const MaxQpeConfig cfg = MaxQpeConfig::make(delta, 1.0 / std::sqrt(static_cast<double>(n)));
  const std::uint64_t units = ledger.advice_unitary_calls();
  const std::uint64_t copies = ledger.advice_copies_consumed();
  const double out = max_phase_estimate(u, maximally_entangled_preparer(n), cfg, ledger, seed, sim);
  if (ledger.advice_unitary_calls() != units || ledger.advice_copies_consumed() != copies) {
    throw InvariantViolation("adviceless driver consumed advice");
  }
  return out;
}

double maxqpe_with_advice_unitary(const BlackBoxUnitary& u, const AdviceSource& a, double delta,
                                  CostLedger& ledger, std::uint64_t seed, VTildeSimulation sim) {
  return max_phase_estimate(u, a, MaxQpeConfig::make(delta, a.gamma()), ledger, seed, sim);
}

std::uint64_t copies_per_reflection(double gamma) {
  if (!(gamma > 0 && gamma <= 1)) throw std::invalid_argument("gamma must lie in (0, 1]");
  return lmr_reflection_steps(gamma / (100.0 * kReflectionCountBound));
}

double maxqpe_with_advice_copies(const BlackBoxUnitary& u, AdviceSource& copies,
                                 const MaxQpeConfig& cfg, CopiesMode mode, CostLedger& ledger,
                                 std::uint64_t seed) {
  cfg.validate();
  const PureState alpha = checked_copies(copies, u);
  const std::uint64_t per_reflection = copies_per_reflection(cfg.gamma);
  const std::uint64_t oracle_per_use = cfg.oracle_calls_per_v();
  ChargeFn charge = [&, per_reflection, oracle_per_use](VUse use) {
    if (use == VUse::kPrepare) copies.consume_copies(1, ledger);
    if (use == VUse::kReflectInverse) copies.consume_copies(per_reflection, ledger);
    ledger.add_oracle_calls(oracle_per_use);
  };
  Rng rng(seed);
  if (mode == CopiesMode::kFaithful) {
    DensityEngine engine(u, alpha, cfg, per_reflection);
    engine.set_charge(std::move(charge));
    return max_find(engine, cfg.maxfind_budget, rng).value;
  }
  SectorEngine engine = sector_engine_for(u, alpha, cfg);
  engine.set_charge(std::move(charge));
  return max_find(engine, cfg.maxfind_budget, rng).value;
}

double maxqpe_with_advice_copies(const BlackBoxUnitary& u, AdviceSource& copies, double delta,
                                 CopiesMode mode, CostLedger& ledger, std::uint64_t seed) {
  return maxqpe_with_advice_copies(u, copies, MaxQpeConfig::make(delta, copies.gamma()), mode,
                                   ledger, seed);
}

std::vector<std::pair<double, double>> copies_output_distribution(const BlackBoxUnitary& u,
                                                                  const AdviceSource& copies,
                                                                  const MaxQpeConfig& cfg,
                                                                  CopiesMode mode) {
  cfg.validate();
  const PureState& alpha = checked_copies(copies, u);
  if (mode == CopiesMode::kFaithful) {
    DensityEngine engine(u, alpha, cfg, copies_per_reflection(cfg.gamma));
    return on_grid(engine, max_find_exact_output(engine, cfg.maxfind_budget), cfg.grid());
  }
  SectorEngine engine = sector_engine_for(u, alpha, cfg);
  return on_grid(engine, max_find_exact_output(engine, cfg.maxfind_budget), cfg.grid());
}

std::vector<std::pair<double, double>> max_phase_output_distribution(
    const BlackBoxUnitary& u, const AdviceSource& a, const MaxQpeConfig& cfg,
    VTildeSimulation sim) {
  if (!a.is_preparer()) throw std::invalid_argument("max_phase_estimate needs a preparer");
  if (sim == VTildeSimulation::kDense) {
    CostLedger scratch;
    DenseEngine engine(build_v_tilde(u, a, cfg, scratch));
    return on_grid(engine, max_find_exact_output(engine, cfg.maxfind_budget), cfg.grid());
  }
  cfg.validate();
  SectorEngine engine = sector_engine_for(u, a.prepared_state(), cfg);
  return on_grid(engine, max_find_exact_output(engine, cfg.maxfind_budget), cfg.grid());
}

std::size_t grover_iterations(std::size_t n, double gamma) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  if (!(gamma > 0 && gamma <= 1)) throw std::invalid_argument("gamma must lie in (0, 1]");
  const double a = std::asin(1.0 / std::sqrt(static_cast<double>(n)));
  for (std::size_t r = 0;; ++r) {
    const double angle = (2.0 * static_cast<double>(r) + 1) * a;
    if (std::sin(angle) >= gamma - 1e-12) return r;
    if (angle > kPi / 2) throw std::invalid_argument("gamma exceeds what Grover search reaches");
  }
}

AdviceSource grover_advice_builder(const BlackBoxUnitary& u, double gamma, double delta) {
  if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
  const double k_real = kPi / (3 * delta);
  const auto k = static_cast<std::uint64_t>(std::llround(k_real));
  if (k < 1 || std::abs(k_real - static_cast<double>(k)) > 1e-9 * std::max(1.0, k_real)) {
    throw std::invalid_argument("pi / (3 delta) must be a positive integer");
  }
  const std::size_t n = u.dim();
  const std::size_t r = grover_iterations(n, gamma);
  const Vector uniform = Vector::Constant(ix(n), 1.0 / std::sqrt(static_cast<double>(n)));
  Matrix marking = Matrix::Identity(ix(n), ix(n));
  const Matrix um = u.matrix();
  for (std::uint64_t i = 0; i < k; ++i) marking = (um * marking).eval();
  const Matrix diffusion = 2.0 * uniform * uniform.adjoint() - Matrix::Identity(ix(n), ix(n));
  const Matrix round = diffusion * marking;
  Matrix g = unitary_with_first_column(uniform);
  for (std::size_t i = 0; i < r; ++i) g = (round * g).eval();
  return AdviceSource::preparer(std::move(g), system_layout(n), gamma, k * r);
}

MaxQpeInstance make_maxqpe_instance(std::size_t n, double delta, bool known_basis, Rng& rng) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  if (!(delta > 0 && delta <= kPi / 4)) throw std::invalid_argument("delta must lie in (0, pi/4]");
  std::uniform_real_distribution<double> top_dist(kPi, kTwoPi - 2 * delta);
  const double theta_max = top_dist(rng);
  std::uniform_real_distribution<double> other_dist(2 * delta, theta_max - 2 * delta);
  const std::size_t top = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  std::vector<double> phases(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == top) {
      phases[j] = theta_max;
    } else {
      phases[j] = uniform01(rng) < 0.25 ? 0.0 : other_dist(rng);
    }
  }
  Matrix w = known_basis ? Matrix(Matrix::Identity(ix(n), ix(n))) : haar_unitary(n, rng);
  Matrix diag = Matrix::Zero(ix(n), ix(n));
  for (std::size_t j = 0; j < n; ++j) diag(ix(j), ix(j)) = std::polar(1.0, phases[j]);
  BlackBoxUnitary u = known_basis ? BlackBoxUnitary::diagonal(phases, "maxqpe-known")
                                  : BlackBoxUnitary::dense(w * diag * w.adjoint(), "maxqpe-unknown");
  Vector top_vector = w.col(ix(top));
  return {std::move(u), theta_max, std::move(top_vector), Spectrum{std::move(phases), std::move(w)}};
}

PureState advice_with_overlap(const MaxQpeInstance& inst, double gamma, Rng& rng) {
  if (!(gamma > 0 && gamma <= 1)) throw std::invalid_argument("gamma must lie in (0, 1]");
  const std::size_t n = inst.u.dim();
  Vector alpha = gamma * inst.top_vector;
  if (n > 1 && gamma < 1) {
    std::normal_distribution<double> g;
    Vector rest = Vector::Zero(ix(n));
    for (std::size_t j = 0; j < n; ++j) {
      if (inst.spectrum.vectors.col(ix(j)).isApprox(inst.top_vector)) continue;
      rest += Complex(g(rng), g(rng)) * inst.spectrum.vectors.col(ix(j));
    }
    rest.normalize();
    alpha += std::sqrt(1 - gamma * gamma) * rest;
  } else if (gamma < 1) {
    throw std::invalid_argument("a one-dimensional instance only admits gamma = 1");
  }
  return PureState(system_layout(n), alpha);
}

bool row_has_known_basis(int row) {
  if (row < 1 || row > 8) throw std::invalid_argument("row must lie in 1..8");
  return row == 1 || row == 2 || row == 5 || row == 6;
}

double run_maxqpe_row(int row, const MaxQpeInstance& inst, double gamma, double delta,
                      CostLedger& ledger, Rng& rng) {
  if (row < 1 || row > 8) throw std::invalid_argument("row must lie in 1..8");
  const std::uint64_t seed = rng();
  if (row % 2 == 1) return maxqpe_adviceless(inst.u, delta, ledger, seed);
  const PureState alpha = advice_with_overlap(inst, gamma, rng);
  if (row == 2 || row == 4) {
    AdviceSource copies = AdviceSource::copies(alpha, UINT64_MAX, gamma);
    return maxqpe_with_advice_copies(inst.u, copies, delta, CopiesMode::kAccounting, ledger, seed);
  }
  const AdviceSource a = AdviceSource::preparer(unitary_with_first_column(alpha.amplitudes()),
                                                system_layout(inst.u.dim()), gamma);
  return maxqpe_with_advice_unitary(inst.u, a, delta, ledger, seed);
}

}  // namespace phaseforge
