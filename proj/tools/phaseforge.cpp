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

// Command-line front end: run | report | certify.
//
// Exit codes: 0 when everything ran and every assertion-style task passed,
// 1 on a module error or a failed certification, 2 on bad usage or an
// invalid configuration.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "phaseforge/harness/config.hpp"
#include "phaseforge/harness/experiment.hpp"

namespace {

using phaseforge::ConfigError;
using phaseforge::ExperimentConfig;
using phaseforge::Task;

int emit(const ExperimentConfig& cfg, const phaseforge::ExperimentResult& res, bool certifying) {
  const std::string csv = phaseforge::to_csv(res.rows);
  if (!cfg.output_path.empty()) {
    phaseforge::write_text_file(cfg.output_path, csv);
  } else if (!certifying) {
    std::cout << csv;
  }
  (certifying ? std::cout : std::cerr) << res.report;
  for (const auto& r : res.rows) {
    std::fprintf(stderr, "%s N=%zu delta=%g gamma=%g epsilon=%g: %llu/%llu in %.2f s\n", r.task.c_str(), r.n,
                 r.delta, r.gamma, r.epsilon, static_cast<unsigned long long>(r.successes),
                 static_cast<unsigned long long>(r.trials), r.wall_seconds);
  }
  return res.all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phaseforge: oracle-model phase estimation experiments"};
  app.require_subcommand(1);

  std::string run_config;
  auto* run = app.add_subcommand("run", "Run an experiment and write its CSV");
  run->add_option("config", run_config, "key=value configuration file")->required();

  std::string csv_path, x_col, y_col;
  auto* report = app.add_subcommand("report", "Fit a power law y ~ x^k to a result CSV");
  report->add_option("csv", csv_path, "result CSV")->required();
  report->add_option("--x", x_col, "x column")->required();
  report->add_option("--y", y_col, "y column")->required();

  std::string cert_config;
  auto* certify = app.add_subcommand("certify", "Run a certification task and print its report");
  certify->add_option("config", cert_config, "key=value configuration file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*report) {
      const auto fit = phaseforge::report_scaling(csv_path, x_col, y_col);
      std::printf("exponent=%.6f\nintercept=%.6f\nmax_residual=%.6f\npoints=%zu\n", fit.exponent, fit.intercept,
                  fit.max_residual, fit.points);
      return 0;
    }
    const bool certifying = static_cast<bool>(*certify);
    const ExperimentConfig cfg = phaseforge::load_config(certifying ? cert_config : run_config);
    if (certifying && cfg.task != Task::kCertifyAdversary && cfg.task != Task::kCertifyTrigPoly) {
      throw ConfigError("certify needs task=certify_adversary or task=certify_trigpoly");
    }
    return emit(cfg, phaseforge::run_experiment(cfg), certifying);
  } catch (const ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    if (*report) {
      std::cerr << "report: " << e.what() << "\n";
      return 2;
    }
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
