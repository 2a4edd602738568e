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

#include "phaseforge/maxfind/max_find.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

namespace phaseforge {

std::uint64_t max_find_budget(double p, double c) {
  if (!(p > 0 && p <= 1)) throw std::invalid_argument("probability must lie in (0, 1]");
  return static_cast<std::uint64_t>(std::ceil(c / std::sqrt(p) - 1e-12));
}

std::vector<double> MaxFindSchedule::levels() const {
  if (!(growth > 1)) throw std::invalid_argument("schedule growth must exceed 1");
  std::vector<double> out = {1.0};
  while (out.back() < level_cap) out.push_back(out.back() * growth);
  return out;
}

namespace {

std::size_t draw_rounds(double level, Rng& rng) {
  const auto nk = static_cast<std::size_t>(std::ceil(level));
  return std::uniform_int_distribution<std::size_t>(0, nk - 1)(rng);
}

}  // namespace

MaxFindResult max_find(AmplificationEngine& engine, std::uint64_t budget, Rng& rng,
                       const MaxFindSchedule& schedule,
                       const std::function<void()>& on_improve) {
  if (budget < 1) throw std::invalid_argument("max_find budget must be at least 1");
  const std::vector<double> levels = schedule.levels();
  const std::uint64_t start_uses = engine.v_uses();

  engine.prepare();
  std::size_t best = engine.measure(rng);
  if (on_improve) on_improve();
  std::uint64_t spent = 1;
  std::size_t attempts = 1;
  std::size_t level = 0;
  while (!engine.is_encoding_maximum(best)) {
    const std::size_t k = draw_rounds(levels[level], rng);
    const std::uint64_t cost = 1 + 2 * static_cast<std::uint64_t>(k);
    if (spent + cost > budget) break;
    engine.prepare();
    for (std::size_t i = 0; i < k; ++i) {
      engine.flip_above(best);
      engine.reflect_about_start();
    }
    const std::size_t y = engine.measure(rng);
    spent += cost;
    ++attempts;
    if (y > best) {
      best = y;
      level = 0;
      if (on_improve) on_improve();
    } else {
      level = std::min(level + 1, levels.size() - 1);
    }
  }
  if (engine.v_uses() - start_uses != spent) {
    throw InvariantViolation("engine V-use count disagrees with the schedule");
  }
  return {best, engine.values()[best], spent, attempts, !engine.is_encoding_maximum(best)};
}

MaxFindOutput max_find(const ValuedUnitary& vu, std::uint64_t budget, std::uint64_t seed,
                       std::uint64_t& v_ledger, const MaxFindSchedule& schedule) {
  DenseEngine engine(vu);
  Rng rng(seed);
  PureState best_state = engine.state();
  const MaxFindResult r =
      max_find(engine, budget, rng, schedule, [&] { best_state = engine.state(); });
  v_ledger += r.v_uses;
  return {std::move(best_state), r.value, r.v_uses};
}

namespace {

class ExactRecursion {
 public:
  ExactRecursion(AmplificationEngine& engine, std::uint64_t budget, const MaxFindSchedule& schedule)
      : engine_(engine), budget_(budget), levels_(schedule.levels()),
        k_(engine.values().size()) {}

  std::vector<double> run() {
    const std::vector<double> first = attempt(0, 0);
    std::vector<double> out(k_, 0.0);
    for (std::size_t x = 0; x < k_; ++x) {
      if (first[x] <= 0) continue;
      add_scaled(out, rec(x, 0, 1), first[x]);
    }
    return out;
  }

 private:
  static void add_scaled(std::vector<double>& acc, const std::vector<double>& v, double s) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += s * v[i];
  }

  const std::vector<double>& attempt(std::size_t best, std::size_t k) {
    auto key = std::make_pair(best, k);
    auto it = attempts_.find(key);
    if (it == attempts_.end()) it = attempts_.emplace(key, engine_.attempt_distribution(best, k)).first;
    return it->second;
  }

  const std::vector<double>& rec(std::size_t best, std::size_t level, std::uint64_t spent) {
    auto key = std::make_tuple(best, level, spent);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<double> out(k_, 0.0);
    const auto nk = static_cast<std::size_t>(std::ceil(levels_[level]));
    const std::size_t next_level = std::min(level + 1, levels_.size() - 1);
    for (std::size_t k = 0; k < nk; ++k) {
      const std::uint64_t cost = 1 + 2 * static_cast<std::uint64_t>(k);
      if (spent + cost > budget_) {
        out[best] += 1;
        continue;
      }
      const std::vector<double> d = attempt(best, k);
      double stay = 0;
      for (std::size_t y = 0; y < k_; ++y) {
        if (d[y] <= 0) continue;
        if (y > best) {
          add_scaled(out, rec(y, 0, spent + cost), d[y]);
        } else {
          stay += d[y];
        }
      }
      if (stay > 0) add_scaled(out, rec(best, next_level, spent + cost), stay);
    }
    for (auto& v : out) v /= static_cast<double>(nk);
    return memo_.emplace(key, std::move(out)).first->second;
  }

  AmplificationEngine& engine_;
  std::uint64_t budget_;
  std::vector<double> levels_;
  std::size_t k_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> attempts_;
  std::map<std::tuple<std::size_t, std::size_t, std::uint64_t>, std::vector<double>> memo_;
};

// Scalar recursion for an ideal engine. An attempt with threshold b and k
// rounds lands above b with probability g = sin^2((2k+1) asin sqrt(a_b)),
// a_b = sum_{y>b} w_y, and then on y with weight w_y / a_b, so the improving
// branch only needs the suffix sums T_s[b] = sum_{y>b} w_y R(y, 0, s).
double ideal_recursion(const std::vector<double>& w, std::uint64_t budget,
                       const std::vector<bool>& good, const MaxFindSchedule& schedule) {
  const std::vector<double> levels = schedule.levels();
  const std::size_t nl = levels.size();
  const std::size_t n = w.size();
  if (static_cast<double>(budget + 1) * static_cast<double>(nl) * static_cast<double>(n) > 6e7) {
    throw std::length_error("exact max_find recursion too large");
  }
  std::vector<double> above(n, 0.0);  // a_b
  for (std::size_t b = n - 1; b-- > 0;) above[b] = above[b + 1] + w[b + 1];
  std::vector<double> half_angle(n);
  for (std::size_t b = 0; b < n; ++b) half_angle[b] = std::asin(std::sqrt(std::min(1.0, above[b])));

  // r[s][level * n + b] and t[s][b] for s in 1..budget.
  std::vector<std::vector<double>> r(budget + 2), t(budget + 2);
  for (std::uint64_t s = budget; s >= 1; --s) {
    r[s].assign(nl * n, 0.0);
    for (std::size_t li = nl; li-- > 0;) {
      const auto nk = static_cast<std::size_t>(std::ceil(levels[li]));
      const std::size_t next = std::min(li + 1, nl - 1);
      for (std::size_t b = 0; b < n; ++b) {
        double acc = 0;
        for (std::size_t k = 0; k < nk; ++k) {
          const std::uint64_t cost = 1 + 2 * static_cast<std::uint64_t>(k);
          if (s + cost > budget) {
            acc += good[b] ? 1.0 : 0.0;
            continue;
          }
          const std::uint64_t s2 = s + cost;
          const double stay_value = r[s2][next * n + b];
          if (above[b] <= 0) {
            acc += stay_value;
            continue;
          }
          const double sn = std::sin((2.0 * static_cast<double>(k) + 1) * half_angle[b]);
          const double g = sn * sn;
          acc += g / above[b] * t[s2][b] + (1 - g) * stay_value;
        }
        r[s][li * n + b] = acc / static_cast<double>(nk);
      }
    }
    t[s].assign(n, 0.0);
    for (std::size_t b = n - 1; b-- > 0;) t[s][b] = t[s][b + 1] + w[b + 1] * r[s][0 * n + b + 1];
  }
  double total = 0;
  for (std::size_t x = 0; x < n; ++x) total += w[x] * r[1][x];
  return total;
}

}  // namespace

std::vector<double> max_find_exact_output(AmplificationEngine& engine, std::uint64_t budget,
                                          const MaxFindSchedule& schedule) {
  if (budget < 1) throw std::invalid_argument("max_find budget must be at least 1");
  return ExactRecursion(engine, budget, schedule).run();
}

double max_find_exact_success(AmplificationEngine& engine, std::uint64_t budget,
                              std::size_t good_from, const MaxFindSchedule& schedule) {
  std::vector<bool> good(engine.values().size(), false);
  for (std::size_t x = good_from; x < good.size(); ++x) good[x] = true;
  return max_find_exact_probability(engine, budget, good, schedule);
}

double max_find_exact_probability(AmplificationEngine& engine, std::uint64_t budget,
                                  const std::vector<bool>& good, const MaxFindSchedule& schedule) {
  if (budget < 1) throw std::invalid_argument("max_find budget must be at least 1");
  if (good.size() != engine.values().size()) throw std::invalid_argument("indicator size mismatch");
  if (const auto* sector = dynamic_cast<const SectorEngine*>(&engine)) {
    return ideal_recursion(sector->weights(), budget, good, schedule);
  }
  const std::vector<double> out = max_find_exact_output(engine, budget, schedule);
  double p = 0;
  for (std::size_t x = 0; x < out.size(); ++x) {
    if (good[x]) p += out[x];
  }
  return p;
}

}  // namespace phaseforge
