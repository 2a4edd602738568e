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

#include "phaseforge/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "phaseforge/sim/angles.hpp"

namespace phaseforge {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("empty list entry in '" + value + "'");
    out.push_back(item);
  }
  return out;
}

double parse_real(const std::string& key, const std::string& s) {
  // A few symbolic angles are convenient for the qpe and dist tasks.
  if (s == "pi") return kPi;
  if (s == "pi/2") return kPi / 2;
  if (s == "pi/4") return kPi / 4;
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": '" + s + "' is not a number");
  }
  if (used != s.size() || !std::isfinite(v)) throw ConfigError(key + ": '" + s + "' is not a number");
  return v;
}

std::uint64_t parse_count(const std::string& key, const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError(key + ": '" + s + "' is not a non-negative integer");
  }
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ConfigError(key + ": '" + s + "' is out of range");
  }
}

template <typename T, typename F>
std::vector<T> parse_list(const std::string& key, const std::string& value, F parse) {
  std::vector<T> out;
  for (const auto& item : split_list(value)) out.push_back(static_cast<T>(parse(key, item)));
  return out;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

std::string ExperimentConfig::task_name() const {
  switch (task) {
    case Task::kQpe:
      return "qpe";
    case Task::kDist:
      return "dist";
    case Task::kMaxQpeRow:
      return "maxqpe_row" + std::to_string(row);
    case Task::kCertifyAdversary:
      return "certify_adversary";
    case Task::kCertifyTrigPoly:
      return "certify_trigpoly";
    case Task::kLmrErrorScan:
      return "lmr_error_scan";
  }
  return "unknown";
}

void ExperimentConfig::validate() const {
  require(trials >= 1, "trials must be at least 1");
  require(!dims.empty() && !deltas.empty() && !gammas.empty() && !epsilons.empty(),
          "dims, deltas, gammas and epsilons must be nonempty");
  for (double g : gammas) require(g > 0 && g <= 1, "gammas must lie in (0, 1]");
  for (double e : epsilons) require(e > 0 && e < 1, "epsilons must lie in (0, 1)");
  for (std::size_t n : dims) require(n >= 2, "dims must be at least 2");
  switch (task) {
    case Task::kQpe:
      for (double d : deltas) require(d > 0 && d <= kPi, "qpe deltas must lie in (0, pi]");
      break;
    case Task::kDist:
      for (double d : deltas) require(d > 0 && d < 0.5, "dist deltas must lie in (0, 1/2)");
      break;
    case Task::kMaxQpeRow:
      require(row >= 1 && row <= 8, "maxqpe row must be 1..8");
      for (double d : deltas) require(d > 0 && d <= kPi / 4, "maxqpe deltas must lie in (0, pi/4]");
      for (std::size_t n : dims) require(n <= 64, "maxqpe dims must be at most 64");
      if (row == 3 || row == 4) {
        for (std::size_t n : dims) require((n & (n - 1)) == 0, "adviceless rows need a power-of-two N");
      }
      break;
    case Task::kCertifyAdversary:
      for (double d : deltas) require(d >= 0.05 && d <= kPi / 3, "certify_adversary deltas must lie in [0.05, pi/3]");
      for (std::size_t n : dims) require(n <= 16, "certify_adversary dims must be at most 16");
      break;
    case Task::kCertifyTrigPoly:
      for (double d : deltas) require(d >= 0.05 && d <= kPi / 12, "certify_trigpoly deltas must lie in [0.05, pi/12]");
      break;
    case Task::kLmrErrorScan:
      for (std::size_t n : dims) require(n <= 8, "lmr_error_scan dims must be at most 8");
      break;
  }
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  bool have_task = false;
  std::stringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'");
    if (key == "task") {
      have_task = true;
      if (value == "qpe") {
        cfg.task = Task::kQpe;
      } else if (value == "dist") {
        cfg.task = Task::kDist;
      } else if (value.rfind("maxqpe_row", 0) == 0 && value.size() == 11 && value[10] >= '1' && value[10] <= '8') {
        cfg.task = Task::kMaxQpeRow;
        cfg.row = value[10] - '0';
      } else if (value == "certify_adversary") {
        cfg.task = Task::kCertifyAdversary;
      } else if (value == "certify_trigpoly") {
        cfg.task = Task::kCertifyTrigPoly;
      } else if (value == "lmr_error_scan") {
        cfg.task = Task::kLmrErrorScan;
      } else {
        throw ConfigError("unknown task '" + value + "'");
      }
    } else if (key == "dims") {
      cfg.dims = parse_list<std::size_t>(key, value, parse_count);
    } else if (key == "deltas") {
      cfg.deltas = parse_list<double>(key, value, parse_real);
    } else if (key == "gammas") {
      cfg.gammas = parse_list<double>(key, value, parse_real);
    } else if (key == "epsilons") {
      cfg.epsilons = parse_list<double>(key, value, parse_real);
    } else if (key == "trials") {
      cfg.trials = parse_count(key, value);
    } else if (key == "seed") {
      cfg.seed = parse_count(key, value);
    } else if (key == "output_path") {
      cfg.output_path = value;
    } else if (key == "instance") {
      if (value == "random") {
        cfg.instance = QpeInstance::kRandom;
      } else if (value == "dyadic") {
        cfg.instance = QpeInstance::kDyadic;
      } else {
        throw ConfigError("instance must be 'random' or 'dyadic'");
      }
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }
  if (!have_task) throw ConfigError("missing key 'task'");
  // Axes a task does not use default to a single neutral value.
  if (cfg.dims.empty() && (cfg.task == Task::kQpe || cfg.task == Task::kDist || cfg.task == Task::kCertifyTrigPoly)) {
    cfg.dims = {2};
  }
  if (cfg.gammas.empty() && cfg.task != Task::kMaxQpeRow) cfg.gammas = {1.0};
  if (cfg.gammas.empty() && cfg.task == Task::kMaxQpeRow && cfg.row % 2 == 1) cfg.gammas = {1.0};
  if (cfg.epsilons.empty() && cfg.task != Task::kQpe && cfg.task != Task::kDist &&
      cfg.task != Task::kCertifyTrigPoly && cfg.task != Task::kLmrErrorScan) {
    cfg.epsilons = {1.0 / 3};
  }
  if (cfg.deltas.empty() && cfg.task == Task::kLmrErrorScan) cfg.deltas = {kPi};
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

}  // namespace phaseforge
