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
#include <stdexcept>
#include <string>
#include <vector>

namespace phaseforge {

enum class Task {
  kQpe,
  kDist,
  kMaxQpeRow,  // row number in ExperimentConfig::row
  kCertifyAdversary,
  kCertifyTrigPoly,
  kLmrErrorScan,
};

/// An invalid or unreadable configuration. The CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// How qpe trials draw their phase.
enum class QpeInstance { kRandom, kDyadic };

struct ExperimentConfig {
  Task task = Task::kQpe;
  int row = 0;  // 1..8 for kMaxQpeRow
  std::vector<std::size_t> dims;
  std::vector<double> deltas;
  std::vector<double> gammas;
  std::vector<double> epsilons;
  std::uint64_t trials = 1;
  std::uint64_t seed = 1;
  std::string output_path;
  QpeInstance instance = QpeInstance::kRandom;

  /// "qpe", "maxqpe_row3", ...
  std::string task_name() const;
  /// Throws ConfigError on empty lists, trials == 0 or out-of-range values.
  void validate() const;
};

/// Parses key=value lines. Lists are comma separated; '#' starts a comment.
/// Missing lists get task-specific defaults before validation.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace phaseforge
