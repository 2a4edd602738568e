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

#include <string>
#include <vector>

#include "phaseforge/harness/config.hpp"

namespace phaseforge {

inline constexpr int kCsvSchemaVersion = 1;

struct ResultRow {
  std::string task;
  std::size_t n = 0;
  double delta = 0;
  double gamma = 0;
  double epsilon = 0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double mean_oracle_calls = 0;
  double mean_advice_unitary_calls = 0;
  double mean_advice_copies = 0;
  std::uint64_t seed = 0;
  double wall_seconds = 0;  // never written to the CSV
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  /// key=value blocks from certification tasks, one per parameter tuple.
  std::string report;
  /// False when an assertion-style task (certification) failed.
  bool all_passed = true;
};

/// Worker threads: PHASEFORGE_THREADS if set and positive, else the
/// hardware concurrency.
unsigned harness_threads();

/// Runs every parameter tuple of `cfg`. Trial k of tuple i draws from the
/// stream make_rng(derive_seed(seed, i), k), so results do not depend on
/// the thread count.
ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned threads = 0);

/// Header plus one line per row. Columns: schema_version, task, N, delta,
/// gamma, epsilon, trials, successes, mean_oracle_calls,
/// mean_advice_unitary_calls, mean_advice_copies, seed.
std::string to_csv(const std::vector<ResultRow>& rows);
void write_text_file(const std::string& path, const std::string& text);

struct ScalingFit {
  double exponent = 0;
  double intercept = 0;
  /// Largest |log y - fit| over the rows.
  double max_residual = 0;
  std::size_t points = 0;
};

/// Least-squares fit of log y against log x. Throws std::invalid_argument
/// with fewer than 3 rows or non-positive values.
ScalingFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);
ScalingFit report_scaling(const std::string& csv_path, const std::string& x_column,
                          const std::string& y_column);

}  // namespace phaseforge
