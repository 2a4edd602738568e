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

#include "phaseforge/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "phaseforge/certify/adversary.hpp"
#include "phaseforge/certify/trig_poly.hpp"
#include "phaseforge/lmr/lmr.hpp"
#include "phaseforge/maxfind/max_find.hpp"
#include "phaseforge/maxqpe/drivers.hpp"
#include "phaseforge/qpe/median_qpe.hpp"
#include "phaseforge/sim/angles.hpp"
#include "phaseforge/sim/instances.hpp"

namespace phaseforge {

namespace {

struct TrialOutcome {
  bool success = false;
  CostLedger ledger;
};

using TrialFn = std::function<TrialOutcome(Rng&)>;

struct Tuple {
  std::size_t n;
  double delta;
  double gamma;
  double epsilon;
};

// Runs trials 0..count-1 on `threads` workers. Trial k always uses stream k,
// and outcomes are reduced in trial order.
std::vector<TrialOutcome> run_trials(const TrialFn& fn, std::uint64_t count, std::uint64_t tuple_seed,
                                     unsigned threads) {
  std::vector<TrialOutcome> out(count);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t k = next.fetch_add(1);
      if (k >= count) return;
      try {
        Rng rng = make_rng(tuple_seed, k);
        out[k] = fn(rng);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    }
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1U, threads), count));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

ResultRow summarize(const std::string& task, const Tuple& p, const std::vector<TrialOutcome>& outcomes,
                    std::uint64_t seed) {
  ResultRow row;
  row.task = task;
  row.n = p.n;
  row.delta = p.delta;
  row.gamma = p.gamma;
  row.epsilon = p.epsilon;
  row.trials = outcomes.size();
  row.seed = seed;
  double oracle = 0, unitary = 0, copies = 0;
  for (const auto& o : outcomes) {
    row.successes += o.success ? 1 : 0;
    oracle += static_cast<double>(o.ledger.oracle_calls());
    unitary += static_cast<double>(o.ledger.advice_unitary_calls());
    copies += static_cast<double>(o.ledger.advice_copies_consumed());
  }
  const double t = static_cast<double>(outcomes.size());
  row.mean_oracle_calls = oracle / t;
  row.mean_advice_unitary_calls = unitary / t;
  row.mean_advice_copies = copies / t;
  return row;
}

TrialFn qpe_trial(const ExperimentConfig& cfg, const Tuple& p) {
  return [&cfg, p](Rng& rng) {
    double theta;
    if (cfg.instance == QpeInstance::kDyadic) {
      const std::size_t grid = std::size_t{1} << median_qpe_bits(p.delta);
      theta = grid_angle(std::uniform_int_distribution<std::size_t>(0, grid - 1)(rng), grid);
    } else {
      theta = kTwoPi * uniform01(rng);
    }
    TrialOutcome o;
    const PureState eigen = PureState::basis(RegisterLayout({{"system", p.n}}), 0);
    const double est = median_qpe(u_theta(theta, p.n), eigen, p.delta, p.epsilon, o.ledger, rng).estimate;
    o.success = circular_distance(est, theta) <= p.delta + 1e-12;
    return o;
  };
}

// Even trials get the identity (answer 1), odd trials a phase outside
// [-3 delta, 3 delta] (answer 0).
TrialFn dist_trial(const Tuple& p) {
  return [p](Rng& rng) {
    TrialOutcome o;
    const bool identity = std::uniform_int_distribution<int>(0, 1)(rng) == 0;
    const double theta = identity ? 0.0 : 3 * p.delta + (kTwoPi - 6 * p.delta) * uniform01(rng);
    const bool answer = dist_solver(u_theta(theta, p.n), p.delta, p.epsilon, o.ledger, rng);
    o.success = answer == identity;
    return o;
  };
}

TrialFn maxqpe_trial(int row, const Tuple& p) {
  return [row, p](Rng& rng) {
    TrialOutcome o;
    const MaxQpeInstance inst = make_maxqpe_instance(p.n, p.delta, row_has_known_basis(row), rng);
    const double est = run_maxqpe_row(row, inst, p.gamma, p.delta, o.ledger, rng);
    o.success = circular_distance(est, inst.theta_max) <= p.delta;
    return o;
  };
}

// Reflection about a random pure state of dimension N from copies at
// accuracy eta = epsilon.
TrialFn lmr_trial(const Tuple& p) {
  return [p](Rng& rng) {
    TrialOutcome o;
    const auto d = static_cast<Eigen::Index>(p.n);
    std::normal_distribution<double> g(0.0, 1.0);
    Vector v(d);
    for (auto& x : v) x = Complex(g(rng), g(rng));
    v /= v.norm();
    const RegisterLayout layout({{"system", p.n}});
    AdviceSource src = AdviceSource::copies(PureState(layout, v), UINT64_MAX, 1.0);
    const QuantumChannel ch = reflection_from_copies(src, p.epsilon, o.ledger);
    const Matrix exact = Matrix::Identity(d, d) - 2 * v * v.adjoint();
    o.success = channel_distance(ch, QuantumChannel::unitary(exact)) <= p.epsilon;
    return o;
  };
}

ResultRow certify_adversary_row(const Tuple& p, std::uint64_t seed, Records& rec, bool& passed) {
  const double angle = 3 * p.delta;
  const auto bits = static_cast<unsigned>(std::ceil(std::log2(kTwoPi / p.delta)));
  const std::size_t rounds = (max_find_budget(1.0 / static_cast<double>(p.n)) - 1) / 2;
  const OracleCircuit alg = adviceless_transcript(p.n, bits, rounds);
  const ProgressTrace tr = adversary_progress(alg, p.n, angle, p.gamma, 0, alg.cost());
  const StepBoundReport rep = verify_step_bound(tr);
  const double expected = initial_progress(p.n, p.gamma, 0);
  const bool initial_ok = std::abs(tr.values.front() - expected) <= 1e-12;
  passed = initial_ok && rep.passed;

  rec.add("task", "certify_adversary")
      .add("N", static_cast<std::uint64_t>(p.n))
      .add("precision_delta", p.delta)
      .add("family_angle", angle)
      .add("gamma", p.gamma)
      .add("t_advice", std::uint64_t{0})
      .add("phase_bits", static_cast<std::uint64_t>(bits))
      .add("rounds", static_cast<std::uint64_t>(rounds))
      .add("cost", alg.cost())
      .add("initial_progress", tr.values.front())
      .add("initial_progress_expected", expected)
      .add("initial_progress_ok", initial_ok)
      .add("final_progress", tr.values.back())
      .add("final_progress_ratio", tr.values.back() / static_cast<double>(p.n - 1));
  double min_overlap = 1;
  for (double x : tr.final_overlaps) min_overlap = std::min(min_overlap, x);
  rec.add("final_overlap_min", min_overlap);
  rec.append(rep.records());
  rec.add("certificate_passed", passed);

  ResultRow row;
  row.task = "certify_adversary";
  row.n = p.n;
  row.delta = p.delta;
  row.gamma = p.gamma;
  row.epsilon = p.epsilon;
  row.trials = 1;
  row.successes = passed ? 1 : 0;
  row.mean_oracle_calls = static_cast<double>(alg.cost());
  row.seed = seed;
  return row;
}

ResultRow certify_trigpoly_row(const Tuple& p, std::uint64_t trials, std::uint64_t tuple_seed,
                               std::uint64_t seed, Records& rec, bool& passed) {
  std::uint64_t degree_ok = 0;
  double max_beyond = 0, max_round_trip = 0;
  for (std::uint64_t k = 0; k < trials; ++k) {
    Rng rng = make_rng(tuple_seed, k);
    const std::uint64_t t = 1 + k % 3;
    const OracleCircuit c = random_oracle_circuit(t, rng);
    const std::size_t d = 2 * t + 2;
    const Samples s = acceptance_poly_samples(
        c, [](std::size_t x) { return x % 2 == 0; }, 2 * d + 1, [](double th) { return u_theta(th); });
    const TrigPolyFit fit = fit_trig_poly(s, d);
    const DegreeReport rep = verify_degree(fit, t);
    const double rt = round_trip_error(fit, s);
    max_beyond = std::max(max_beyond, rep.max_beyond);
    max_round_trip = std::max(max_round_trip, rt);
    if (rep.passed && rt <= 1e-10) ++degree_ok;
  }
  const DistGrowthCertificate cert = dist_growth_certificate(p.delta, p.epsilon, tuple_seed);
  passed = degree_ok == trials && cert.passed;

  rec.add("task", "certify_trigpoly")
      .add("random_circuits", trials)
      .add("degree_checks_passed", degree_ok)
      .add("max_coefficient_beyond_2t", max_beyond)
      .add("max_round_trip_error", max_round_trip);
  rec.append(cert.records());
  rec.add("all_passed", passed);

  ResultRow row;
  row.task = "certify_trigpoly";
  row.n = p.n;
  row.delta = p.delta;
  row.gamma = p.gamma;
  row.epsilon = p.epsilon;
  row.trials = trials;
  row.successes = degree_ok;
  row.mean_oracle_calls = static_cast<double>(cert.measured_cost);
  row.seed = seed;
  return row;
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

unsigned harness_threads() {
  if (const char* env = std::getenv("PHASEFORGE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned threads) {
  cfg.validate();
  if (threads == 0) threads = harness_threads();
  ExperimentResult result;
  const std::string task = cfg.task_name();
  std::uint64_t index = 0;
  for (std::size_t n : cfg.dims) {
    for (double delta : cfg.deltas) {
      for (double gamma : cfg.gammas) {
        for (double epsilon : cfg.epsilons) {
          const Tuple p{n, delta, gamma, epsilon};
          const std::uint64_t tuple_seed = derive_seed(cfg.seed, index++);
          const auto start = std::chrono::steady_clock::now();
          ResultRow row;
          if (cfg.task == Task::kCertifyAdversary || cfg.task == Task::kCertifyTrigPoly) {
            Records rec;
            bool passed = false;
            row = cfg.task == Task::kCertifyAdversary
                      ? certify_adversary_row(p, cfg.seed, rec, passed)
                      : certify_trigpoly_row(p, cfg.trials, tuple_seed, cfg.seed, rec, passed);
            result.report += rec.str() + "\n";
            result.all_passed = result.all_passed && passed;
          } else {
            TrialFn fn;
            switch (cfg.task) {
              case Task::kQpe:
                fn = qpe_trial(cfg, p);
                break;
              case Task::kDist:
                fn = dist_trial(p);
                break;
              case Task::kMaxQpeRow:
                fn = maxqpe_trial(cfg.row, p);
                break;
              default:
                fn = lmr_trial(p);
                break;
            }
            row = summarize(task, p, run_trials(fn, cfg.trials, tuple_seed, threads), cfg.seed);
          }
          row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
          result.rows.push_back(row);
        }
      }
    }
  }
  return result;
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << "schema_version,task,N,delta,gamma,epsilon,trials,successes,mean_oracle_calls,"
         "mean_advice_unitary_calls,mean_advice_copies,seed\n";
  for (const auto& r : rows) {
    out << kCsvSchemaVersion << ',' << r.task << ',' << r.n << ',' << format_real(r.delta) << ','
        << format_real(r.gamma) << ',' << format_real(r.epsilon) << ',' << r.trials << ',' << r.successes
        << ',' << format_real(r.mean_oracle_calls) << ',' << format_real(r.mean_advice_unitary_calls) << ','
        << format_real(r.mean_advice_copies) << ',' << r.seed << '\n';
  }
  return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

ScalingFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("x and y differ in length");
  if (x.size() < 3) throw std::invalid_argument("a scaling fit needs at least 3 rows");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw std::invalid_argument("scaling fit needs positive values");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
    sx += lx.back();
    sy += ly.back();
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx <= 0) throw std::invalid_argument("x column is constant");
  ScalingFit fit;
  fit.points = x.size();
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    fit.max_residual = std::max(fit.max_residual, std::abs(ly[i] - fit.intercept - fit.exponent * lx[i]));
  }
  return fit;
}

ScalingFit report_scaling(const std::string& csv_path, const std::string& x_column,
                          const std::string& y_column) {
  std::ifstream f(csv_path);
  if (!f) throw std::invalid_argument("cannot read '" + csv_path + "'");
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  std::string line;
  if (!std::getline(f, line)) throw std::invalid_argument("empty CSV");
  const auto header = split(line);
  auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::invalid_argument("no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t xi = column(x_column), yi = column(y_column);
  std::vector<std::size_t> fixed;
  for (const char* name : {"task", "N", "delta", "gamma", "epsilon"}) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it != header.end() && *it != x_column) fixed.push_back(static_cast<std::size_t>(it - header.begin()));
  }
  std::vector<double> x, y;
  std::vector<std::string> first;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) throw std::invalid_argument("ragged CSV row");
    if (first.empty()) first = cells;
    for (std::size_t c : fixed) {
      if (cells[c] != first[c]) {
        throw std::invalid_argument("rows vary in '" + header[c] + "' as well as in '" + x_column + "'");
      }
    }
    x.push_back(std::stod(cells[xi]));
    y.push_back(std::stod(cells[yi]));
  }
  return fit_power_law(x, y);
}

}  // namespace phaseforge
