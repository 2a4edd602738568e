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

#include "phaseforge/maxfind/engine.hpp"

namespace phaseforge {

/// Budget constant: a budget of C / sqrt(Pr[X >= x]) reaches x with
/// probability at least 3/4. Calibrated on the test suite.
inline constexpr double kMaxFindC = 12.0;

/// ceil(C / sqrt(p)).
std::uint64_t max_find_budget(double p, double c = kMaxFindC);

/// Threshold-climbing schedule. Each attempt prepares V|0>, runs k rounds of
/// (flip above the current best, reflect about V|0>) and measures; it costs
/// 1 + 2k uses of V. k is uniform in [0, ceil(m)); m starts at 1, grows by
/// `growth` after every attempt that does not improve the best value (capped
/// once it reaches `level_cap`) and resets to 1 after an improvement. The
/// run stops before the first attempt that would exceed the budget, or as
/// soon as the best value is the largest one the value register encodes.
struct MaxFindSchedule {
  double growth = 1.2;
  double level_cap = 200.0;

  /// The values of m visited: 1, growth, growth^2, ... up to the first one
  /// that reaches level_cap.
  std::vector<double> levels() const;
};

struct MaxFindResult {
  std::size_t label;
  double value;
  std::uint64_t v_uses;
  std::size_t attempts;
  /// False when the run ended because the best label is the largest
  /// encodable value; otherwise the next drawn attempt did not fit.
  bool stopped_by_budget;
};

/// Runs the schedule on `engine` with at most `budget` uses of V.
/// `on_improve` runs right after every measurement that sets a new best,
/// while the engine still holds the collapsed workspace.
MaxFindResult max_find(AmplificationEngine& engine, std::uint64_t budget, Rng& rng,
                       const MaxFindSchedule& schedule = {},
                       const std::function<void()>& on_improve = {});

struct MaxFindOutput {
  PureState state;  // normalized post-measurement state
  double value;
  std::uint64_t v_uses;
};

/// Interface form over an explicit V: returns the collapsed state and value
/// and adds the V uses to `v_ledger`.
MaxFindOutput max_find(const ValuedUnitary& vu, std::uint64_t budget, std::uint64_t seed,
                       std::uint64_t& v_ledger, const MaxFindSchedule& schedule = {});

/// Exact distribution of the label returned by max_find, by recursion over
/// (best label, schedule level, V uses spent). Attempt distributions come
/// from the engine's attempt_distribution and are cached. Suitable for a
/// small number of labels.
std::vector<double> max_find_exact_output(AmplificationEngine& engine, std::uint64_t budget,
                                          const MaxFindSchedule& schedule = {});

/// Exact probability that max_find returns a label >= good_from.
double max_find_exact_success(AmplificationEngine& engine, std::uint64_t budget,
                              std::size_t good_from, const MaxFindSchedule& schedule = {});

/// Exact probability that max_find returns a label x with good[x] true.
/// SectorEngine inputs use a closed-form recursion that is linear in the
/// number of labels, so this scales to thousands of labels.
double max_find_exact_probability(AmplificationEngine& engine, std::uint64_t budget,
                                  const std::vector<bool>& good,
                                  const MaxFindSchedule& schedule = {});

}  // namespace phaseforge
