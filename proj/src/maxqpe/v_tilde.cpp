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

#include "phaseforge/maxqpe/v_tilde.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>

#include "phaseforge/maxfind/max_find.hpp"
#include "phaseforge/qpe/circular_median.hpp"
#include "phaseforge/qpe/kitaev.hpp"
#include "phaseforge/qpe/qft.hpp"
#include "phaseforge/sim/angles.hpp"

namespace phaseforge {

namespace {

constexpr std::size_t kMaxCoherentRepetitions = 101;

// Grid points x with circular_distance(2 pi x / M, theta) <= delta, as a
// cyclic arc [lo, lo + len).
std::pair<std::size_t, std::size_t> good_arc(double theta, double delta, std::size_t grid) {
  const double scale = static_cast<double>(grid) / kTwoPi;
  auto lo = static_cast<long>(std::ceil((theta - delta) * scale));
  auto hi = static_cast<long>(std::floor((theta + delta) * scale));
  const auto g = static_cast<long>(grid);
  auto close = [&](long x) { return circular_distance(grid_angle(static_cast<std::size_t>(((x % g) + g) % g), grid), theta) <= delta; };
  while (!close(lo) && lo <= hi) ++lo;
  while (close(lo - 1) && hi - lo + 1 < g) --lo;
  while (!close(hi) && hi >= lo) --hi;
  while (close(hi + 1) && hi - lo + 1 < g) ++hi;
  if (hi < lo) return {0, 0};
  return {static_cast<std::size_t>(((lo % g) + g) % g), static_cast<std::size_t>(hi - lo + 1)};
}

std::vector<double> median_estimate_distribution(double theta, const MaxQpeConfig& cfg) {
  const std::vector<double> q = fejer_distribution(theta, cfg.phase_bits);
  if (cfg.repetitions == 1) return q;
  return circular_median_distribution(q, cfg.repetitions);
}

}  // namespace

unsigned coherent_phase_bits(double delta) {
  if (!(delta > 0 && delta < kPi)) throw std::invalid_argument("delta must lie in (0, pi)");
  return static_cast<unsigned>(std::ceil(std::log2(kTwoPi / delta) - 1e-12)) + kCoherentPad;
}

double coherent_bad_mass(double delta, unsigned bits, std::size_t r) {
  if (bits < 2 || bits > 16) throw std::invalid_argument("coherent phase bits must lie in 2..16");
  const std::size_t grid = std::size_t{1} << bits;
  constexpr int kOffsets = 8;
  double worst = 0;
  for (std::size_t cell = 0; cell < grid; ++cell) {
    for (int f = 0; f < kOffsets; ++f) {
      const double theta = kTwoPi * (static_cast<double>(cell) + f / static_cast<double>(kOffsets)) /
                           static_cast<double>(grid);
      const std::vector<double> q = fejer_distribution(theta, bits);
      const auto [lo, len] = good_arc(theta, delta, grid);
      const double good = circular_median_arc_probability(q, r, lo, len);
      worst = std::max(worst, 1.0 - good);
    }
  }
  return worst;
}

std::size_t coherent_repetitions(double delta, unsigned bits, double eta) {
  static std::mutex mu;
  static std::map<std::tuple<double, unsigned, double>, std::size_t> cache;
  const auto key = std::make_tuple(delta, bits, eta);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  for (std::size_t r = 1; r <= kMaxCoherentRepetitions; r += 2) {
    if (coherent_bad_mass(delta, bits, r) <= eta) {
      std::lock_guard<std::mutex> lock(mu);
      cache.emplace(key, r);
      return r;
    }
  }
  throw std::invalid_argument("eta unreachable with the coherent estimator");
}

MaxQpeConfig MaxQpeConfig::make(double delta, double gamma) {
  if (!(gamma > 0 && gamma <= 1)) throw std::invalid_argument("gamma must lie in (0, 1]");
  MaxQpeConfig cfg;
  cfg.delta = delta;
  cfg.gamma = gamma;
  cfg.eta = gamma * gamma / 100;
  cfg.phase_bits = coherent_phase_bits(delta);
  cfg.repetitions = coherent_repetitions(delta, cfg.phase_bits, cfg.eta);
  cfg.maxfind_budget = max_find_budget(gamma * gamma);
  cfg.validate();
  return cfg;
}

void MaxQpeConfig::validate() const {
  if (!(delta > 0 && delta < kPi)) throw std::invalid_argument("delta must lie in (0, pi)");
  if (!(gamma > 0 && gamma <= 1)) throw std::invalid_argument("gamma must lie in (0, 1]");
  if (!(eta > 0 && eta < gamma * gamma)) throw std::invalid_argument("eta must lie in (0, gamma^2)");
  if (phase_bits < 2 || phase_bits > 16) throw std::invalid_argument("phase bits must lie in 2..16");
  if (repetitions % 2 == 0) throw std::invalid_argument("repetitions must be odd");
  if (maxfind_budget < 1) throw std::invalid_argument("max_find budget must be positive");
}

std::uint64_t MaxQpeConfig::oracle_calls_per_v() const {
  return (static_cast<std::uint64_t>(grid()) - 1) * repetitions;
}

ValuedUnitary build_v_tilde(const BlackBoxUnitary& u, const AdviceSource& a,
                            const MaxQpeConfig& cfg, CostLedger& ledger) {
  cfg.validate();
  if (!a.is_preparer()) throw std::invalid_argument("V~ needs a preparer");
  const AdvicePreparer& prep = a.preparer_body();
  if (prep.layout[0].dim != u.dim()) throw DimensionError("preparer system register does not match U");

  const std::size_t na = prep.layout.size();
  const std::size_t grid = cfg.grid();
  const std::size_t r = cfg.repetitions;
  RegisterLayout layout = prep.layout;
  for (std::size_t i = 0; i < r; ++i) layout = layout.appended({"phase" + std::to_string(i), grid});
  if (r > 1) layout = layout.appended({"value", grid});
  const std::size_t value_reg = r > 1 ? na + r : na;

  auto estimate = [u, bits = cfg.phase_bits, &ledger](PureState& s, std::size_t reg, bool inverse) {
    apply_qft(s, reg, false);
    for (unsigned j = 0; j < bits; ++j) {
      apply_oracle_power(s, u, 0, std::uint64_t{1} << j, inverse, QubitRef{reg, j}, ledger);
    }
    apply_qft(s, reg, true);
  };
  auto median_shift = [na, r, grid, value_reg](PureState& s, bool inverse) {
    const RegisterLayout& l = s.layout();
    std::vector<std::size_t> samples(r);
    s.apply_permutation([&](std::size_t x) {
      for (std::size_t i = 0; i < r; ++i) samples[i] = l.digit(x, na + i);
      const std::size_t med = circular_median(samples, grid);
      const std::size_t v = l.digit(x, value_reg);
      const std::size_t nv = inverse ? (v + grid - med) % grid : (v + med) % grid;
      return l.with_digit(x, value_reg, nv);
    });
  };
  auto apply = [a, na, r, estimate, median_shift, &ledger](PureState& s, bool inverse) {
    if (!inverse) {
      a.apply_preparer(s, 0, na, false, ledger);
      for (std::size_t i = 0; i < r; ++i) estimate(s, na + i, false);
      if (r > 1) median_shift(s, false);
    } else {
      if (r > 1) median_shift(s, true);
      for (std::size_t i = r; i-- > 0;) estimate(s, na + i, true);
      a.apply_preparer(s, 0, na, true, ledger);
    }
  };
  auto decode = [grid](std::size_t x) { return grid_angle(x, grid); };
  return {std::move(layout), std::move(apply), value_reg, std::move(decode)};
}

std::vector<std::pair<double, double>> spectral_weights(const BlackBoxUnitary& u,
                                                        const PureState& psi) {
  const std::size_t n = u.dim();
  if (psi.layout().size() == 0 || psi.layout()[0].dim != n) {
    throw DimensionError("state's first register does not match U");
  }
  const std::size_t w = psi.dim() / n;
  const Spectrum spec = u.spectrum();
  // Column s of b holds the workspace amplitudes attached to system basis s.
  const Eigen::Map<const Matrix> b(psi.amplitudes().data(), static_cast<Eigen::Index>(w),
                                   static_cast<Eigen::Index>(n));
  const Matrix coeff = b * spec.vectors.conjugate();
  std::vector<std::pair<double, double>> raw;
  for (std::size_t j = 0; j < n; ++j) {
    raw.emplace_back(spec.phases[j], coeff.col(static_cast<Eigen::Index>(j)).squaredNorm());
  }
  std::sort(raw.begin(), raw.end());
  std::vector<std::pair<double, double>> out;
  for (const auto& [phase, weight] : raw) {
    if (!out.empty() && phase - out.back().first < 1e-12) {
      out.back().second += weight;
    } else {
      out.emplace_back(phase, weight);
    }
  }
  return out;
}

std::vector<std::pair<double, double>> v_tilde_value_distribution(
    const std::vector<std::pair<double, double>>& weights, const MaxQpeConfig& cfg) {
  cfg.validate();
  const std::size_t grid = cfg.grid();
  std::vector<double> p(grid, 0.0);
  for (const auto& [theta, w] : weights) {
    if (w <= 0) continue;
    const std::vector<double> d = median_estimate_distribution(theta, cfg);
    for (std::size_t x = 0; x < grid; ++x) p[x] += w * d[x];
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(grid);
  for (std::size_t x = 0; x < grid; ++x) out.emplace_back(grid_angle(x, grid), p[x]);
  return out;
}

}  // namespace phaseforge
