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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "phaseforge/certify/records.hpp"
#include "phaseforge/harness/config.hpp"
#include "phaseforge/harness/experiment.hpp"
#include "phaseforge/lmr/lmr.hpp"
#include "phaseforge/sim/angles.hpp"

namespace phaseforge {
namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("phaseforge_" + name)).string();
}

TEST(Config, ParsesListsCommentsAndSymbols) {
  const ExperimentConfig cfg = parse_config(
      "# sweep\n"
      "task = maxqpe_row6\n"
      "dims=2, 4,8   # three sizes\n"
      "deltas=0.1\n"
      "gammas=0.5,0.25\n"
      "\n"
      "trials=12\n"
      "seed=99\n"
      "output_path=/tmp/x.csv\n");
  EXPECT_EQ(cfg.task, Task::kMaxQpeRow);
  EXPECT_EQ(cfg.row, 6);
  EXPECT_EQ(cfg.task_name(), "maxqpe_row6");
  EXPECT_EQ(cfg.dims, (std::vector<std::size_t>{2, 4, 8}));
  EXPECT_EQ(cfg.gammas, (std::vector<double>{0.5, 0.25}));
  EXPECT_EQ(cfg.trials, 12u);
  EXPECT_EQ(cfg.seed, 99u);
  EXPECT_EQ(cfg.output_path, "/tmp/x.csv");
  EXPECT_EQ(cfg.epsilons.size(), 1u);

  const ExperimentConfig q = parse_config("task=qpe\ndeltas=pi/2,pi\nepsilons=0.1\ninstance=dyadic\n");
  EXPECT_DOUBLE_EQ(q.deltas[0], kPi / 2);
  EXPECT_DOUBLE_EQ(q.deltas[1], kPi);
  EXPECT_EQ(q.instance, QpeInstance::kDyadic);
}

TEST(Config, EveryTaskNameRoundTrips) {
  for (const std::string name : {"qpe", "dist", "certify_adversary", "certify_trigpoly", "lmr_error_scan"}) {
    std::string text = "task=" + name + "\ndims=2\ndeltas=0.1\nepsilons=0.1\n";
    EXPECT_EQ(parse_config(text).task_name(), name);
  }
  for (int row = 1; row <= 8; ++row) {
    const std::string name = "maxqpe_row" + std::to_string(row);
    EXPECT_EQ(parse_config("task=" + name + "\ndims=4\ndeltas=0.1\ngammas=0.5\n").task_name(), name);
  }
}

TEST(Config, RejectsInvalidInput) {
  const char* bad[] = {
      "dims=2\n",                                  // no task
      "task=qpe\ntask=dist\n",                     // duplicate
      "task=qpe\ncolour=blue\n",                   // unknown key
      "task=qpe\ndeltas=0.1\nepsilons=0.1\ntrials=0\n",
      "task=qpe\ndeltas=\nepsilons=0.1\n",         // empty list
      "task=qpe\ndeltas=0.1,,0.2\nepsilons=0.1\n",
      "task=qpe\ndeltas=abc\nepsilons=0.1\n",
      "task=qpe\ndeltas=0.1\nepsilons=1.5\n",
      "task=qpe\ndeltas=0.1\nepsilons=0.1\ntrials=-3\n",
      "task=maxqpe_row9\ndims=2\ndeltas=0.1\n",
      "task=maxqpe_row3\ndims=6\ndeltas=0.1\n",  // not a power of two
      "task=maxqpe_row2\ndims=4\ndeltas=0.1\n",  // advice row without gammas
      "task=dist\ndeltas=0.7\nepsilons=0.1\n",
      "task=qpe\nno equals sign\n",
  };
  for (const char* text : bad) EXPECT_THROW(parse_config(text), ConfigError) << text;
  EXPECT_THROW(load_config("/nonexistent/phaseforge.cfg"), ConfigError);
}

TEST(Experiment, DyadicQpeAlwaysSucceeds) {
  const ExperimentConfig cfg = parse_config("task=qpe\ndeltas=pi/2\nepsilons=0.1\ntrials=100\ninstance=dyadic\n");
  const ExperimentResult res = run_experiment(cfg, 1);
  ASSERT_EQ(res.rows.size(), 1u);
  EXPECT_EQ(res.rows[0].successes, 100u);
  EXPECT_TRUE(res.all_passed);
  EXPECT_GT(res.rows[0].mean_oracle_calls, 0);
}

TEST(Experiment, CsvIsDeterministicAcrossRunsAndThreadCounts) {
  const ExperimentConfig cfg =
      parse_config("task=dist\ndims=2,3\ndeltas=0.2\nepsilons=0.1,0.3\ntrials=40\nseed=17\n");
  const std::string a = to_csv(run_experiment(cfg, 1).rows);
  const std::string b = to_csv(run_experiment(cfg, 1).rows);
  const std::string c = to_csv(run_experiment(cfg, 4).rows);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_EQ(a.substr(0, a.find('\n')),
            "schema_version,task,N,delta,gamma,epsilon,trials,successes,mean_oracle_calls,"
            "mean_advice_unitary_calls,mean_advice_copies,seed");
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 5);

  ExperimentConfig other = cfg;
  other.seed = 18;
  EXPECT_NE(a, to_csv(run_experiment(other, 1).rows));
}

TEST(Experiment, DistDecidesCorrectly) {
  const ExperimentResult res =
      run_experiment(parse_config("task=dist\ndeltas=0.25\nepsilons=0.05\ntrials=200\nseed=2\n"), 1);
  EXPECT_GE(res.rows[0].successes, 190u);
}

TEST(Experiment, AdvicelessRowUsesNoAdvice) {
  const ExperimentResult res =
      run_experiment(parse_config("task=maxqpe_row1\ndims=4\ndeltas=0.1\ntrials=40\nseed=4\n"), 1);
  const ResultRow& r = res.rows[0];
  EXPECT_GE(r.successes, 30u);
  EXPECT_EQ(r.mean_advice_unitary_calls, 0.0);
  EXPECT_EQ(r.mean_advice_copies, 0.0);
}

TEST(Experiment, CopiesRowChargesCopies) {
  const ExperimentResult res =
      run_experiment(parse_config("task=maxqpe_row2\ndims=4\ndeltas=0.1\ngammas=0.5\ntrials=10\nseed=4\n"), 1);
  EXPECT_GT(res.rows[0].mean_advice_copies, 0.0);
  EXPECT_EQ(res.rows[0].mean_advice_unitary_calls, 0.0);
}

TEST(Experiment, LmrScanMeetsEta) {
  const ExperimentResult res =
      run_experiment(parse_config("task=lmr_error_scan\ndims=2,4\nepsilons=0.2\ntrials=3\n"), 1);
  for (const auto& r : res.rows) {
    EXPECT_EQ(r.successes, 3u);
    EXPECT_EQ(r.mean_advice_copies, static_cast<double>(lmr_reflection_steps(0.2)));
  }
}

TEST(Experiment, AdversaryCertificationReport) {
  const ExperimentResult res =
      run_experiment(parse_config("task=certify_adversary\ndims=4\ndeltas=0.2\n"), 1);
  EXPECT_TRUE(res.all_passed);
  const Records rec = parse_records(res.report);
  EXPECT_EQ(rec.get("certificate_passed"), "true");
  EXPECT_EQ(rec.get("violations"), "0");
  EXPECT_NEAR(std::stod(rec.get("initial_progress")), 3.0, 1e-12);
  EXPECT_NEAR(std::stod(rec.get("family_angle")), 0.6, 1e-15);
}

TEST(Experiment, TrigPolyCertificationReport) {
  const ExperimentResult res = run_experiment(
      parse_config("task=certify_trigpoly\ndeltas=0.25\nepsilons=0.3\ntrials=6\n"), 1);
  EXPECT_TRUE(res.all_passed);
  EXPECT_EQ(res.rows[0].successes, 6u);
  EXPECT_EQ(parse_records(res.report).get("all_passed"), "true");
}

TEST(Threads, EnvironmentOverride) {
  ::setenv("PHASEFORGE_THREADS", "3", 1);
  EXPECT_EQ(harness_threads(), 3u);
  ::setenv("PHASEFORGE_THREADS", "zero", 1);
  EXPECT_GE(harness_threads(), 1u);
  ::unsetenv("PHASEFORGE_THREADS");
}

TEST(Scaling, PowerLawFits) {
  const ScalingFit sqrt_fit = fit_power_law({2, 4, 8, 16}, {3 * std::sqrt(2.0), 6, 3 * std::sqrt(8.0), 12});
  EXPECT_NEAR(sqrt_fit.exponent, 0.5, 1e-12);
  EXPECT_NEAR(sqrt_fit.max_residual, 0, 1e-12);
  EXPECT_NEAR(fit_power_law({1, 2, 3}, {5, 5, 5}).exponent, 0.0, 1e-9);
  EXPECT_THROW(fit_power_law({1, 2}, {1, 2}), std::invalid_argument);
  EXPECT_THROW(fit_power_law({2, 2, 2}, {1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(fit_power_law({1, 2, 3}, {1, 0, 3}), std::invalid_argument);
}

TEST(Scaling, ReadsCsvColumns) {
  const std::string path = temp_path("scaling.csv");
  std::vector<ResultRow> rows;
  for (double delta : {0.2, 0.1, 0.05}) {
    ResultRow r;
    r.task = "qpe";
    r.n = 2;
    r.delta = delta;
    r.trials = 1;
    r.mean_oracle_calls = 7 / delta;
    r.mean_advice_copies = 4;
    rows.push_back(r);
  }
  write_text_file(path, to_csv(rows));
  EXPECT_NEAR(report_scaling(path, "delta", "mean_oracle_calls").exponent, -1.0, 1e-9);
  EXPECT_NEAR(report_scaling(path, "delta", "mean_advice_copies").exponent, 0.0, 1e-9);
  EXPECT_THROW(report_scaling(path, "delta", "nope"), std::invalid_argument);

  rows[1].n = 4;  // a second axis varies
  write_text_file(path, to_csv(rows));
  EXPECT_THROW(report_scaling(path, "delta", "mean_oracle_calls"), std::invalid_argument);
  rows.pop_back();
  rows[1].n = 2;
  write_text_file(path, to_csv(rows));
  EXPECT_THROW(report_scaling(path, "delta", "mean_oracle_calls"), std::invalid_argument);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace phaseforge
