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

#include "phaseforge/certify/trig_poly.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "phaseforge/qpe/median_qpe.hpp"
#include "phaseforge/sim/angles.hpp"
#include "phaseforge/sim/instances.hpp"

namespace phaseforge {

namespace {

// In-place unnormalized DFT: sign -1 gives sum_j x_j e^{-2 pi i jk/n}.
void fft_in_place(std::vector<Complex>& data, int sign) {
  static std::mutex planner;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner);
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf, sign,
                            FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner);
  fftw_destroy_plan(plan);
}

}  // namespace

Complex TrigPolyFit::coefficient(long k) const {
  const auto d = static_cast<long>(degree);
  if (k < -d || k > d) return 0;
  return coefficients[static_cast<std::size_t>(k + d)];
}

Complex TrigPolyFit::evaluate(double theta) const {
  Complex acc = 0;
  const auto d = static_cast<long>(degree);
  for (long k = -d; k <= d; ++k) acc += coefficient(k) * std::polar(1.0, static_cast<double>(k) * theta);
  return acc;
}

double TrigPolyFit::reality_defect() const {
  double worst = 0;
  const auto d = static_cast<long>(degree);
  for (long k = 0; k <= d; ++k) worst = std::max(worst, std::abs(coefficient(-k) - std::conj(coefficient(k))));
  return worst;
}

double TrigPolyFit::coefficient_sum() const {
  double s = 0;
  for (const Complex& a : coefficients) s += std::abs(a);
  return s;
}

std::vector<double> equispaced_angles(std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = grid_angle(i, count);
  return out;
}

Samples sample_function(const std::function<double(double)>& f, std::size_t count) {
  Samples out;
  for (double theta : equispaced_angles(count)) out.emplace_back(theta, f(theta));
  return out;
}

Samples acceptance_poly_samples(const OracleCircuit& alg, const std::function<bool(std::size_t)>& accept,
                                std::size_t count,
                                const std::function<BlackBoxUnitary(double)>& family) {
  if (alg.has_measurement()) throw std::invalid_argument("acceptance sampling needs a unitary circuit");
  std::vector<bool> accepting(alg.layout().dim());
  for (std::size_t x = 0; x < accepting.size(); ++x) accepting[x] = accept(x);
  Samples out;
  for (double theta : equispaced_angles(count)) {
    CostLedger scratch;
    const PureState s = alg.run_from_zero(family(theta), scratch);
    double p = 0;
    for (std::size_t x = 0; x < accepting.size(); ++x) {
      if (accepting[x]) p += std::norm(s.amplitude(x));
    }
    out.emplace_back(theta, p);
  }
  return out;
}

TrigPolyFit fit_trig_poly(const Samples& samples, std::size_t degree) {
  const std::size_t n = 2 * degree + 1;
  if (samples.size() != n) {
    throw std::invalid_argument("a degree-" + std::to_string(degree) + " fit needs " +
                                std::to_string(n) + " samples, got " + std::to_string(samples.size()));
  }
  TrigPolyFit fit;
  fit.degree = degree;
  std::vector<Complex> data(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double expected = grid_angle(j, n);
    if (std::abs(samples[j].first - expected) > 1e-12 * std::max(1.0, expected)) {
      throw std::invalid_argument("samples are not on the equispaced grid 2 pi j / (2d + 1)");
    }
    fit.sample_grid.push_back(samples[j].first);
    data[j] = samples[j].second;
  }
  fft_in_place(data, FFTW_FORWARD);
  fit.coefficients.resize(n);
  const auto d = static_cast<long>(degree);
  const auto nn = static_cast<long>(n);
  for (long k = -d; k <= d; ++k) {
    fit.coefficients[static_cast<std::size_t>(k + d)] = data[static_cast<std::size_t>((k + nn) % nn)] / static_cast<double>(n);
  }
  return fit;
}

std::vector<Complex> evaluate_on_grid(const TrigPolyFit& fit, std::size_t points) {
  const auto d = static_cast<long>(fit.degree);
  if (points < 2 * fit.degree + 1) {
    std::vector<Complex> out;
    for (double theta : equispaced_angles(points)) out.push_back(fit.evaluate(theta));
    return out;
  }
  const auto l = static_cast<long>(points);
  std::vector<Complex> data(points, 0.0);
  for (long k = -d; k <= d; ++k) data[static_cast<std::size_t>((k + l) % l)] = fit.coefficient(k);
  fft_in_place(data, FFTW_BACKWARD);
  return data;
}

double round_trip_error(const TrigPolyFit& fit, const Samples& samples) {
  double worst = 0;
  const std::vector<Complex> values = evaluate_on_grid(fit, samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) {
    if (std::abs(samples[j].first - grid_angle(j, samples.size())) > 1e-12 * std::max(1.0, samples[j].first)) {
      worst = std::max(worst, std::abs(fit.evaluate(samples[j].first) - samples[j].second));
    } else {
      worst = std::max(worst, std::abs(values[j] - samples[j].second));
    }
  }
  return worst;
}

Records DegreeReport::records() const {
  Records r;
  r.add("cost", cost)
      .add("fit_degree", static_cast<std::uint64_t>(fit_degree))
      .add("max_coefficient_beyond_2t", max_beyond)
      .add("tolerance", tolerance)
      .add("passed", passed);
  return r;
}

DegreeReport verify_degree(const TrigPolyFit& fit, std::uint64_t cost, double tol) {
  DegreeReport rep;
  rep.cost = cost;
  rep.fit_degree = fit.degree;
  rep.tolerance = tol;
  const auto d = static_cast<long>(fit.degree);
  const auto limit = static_cast<long>(2 * cost);
  for (long k = -d; k <= d; ++k) {
    if (std::labs(k) > limit) rep.max_beyond = std::max(rep.max_beyond, std::abs(fit.coefficient(k)));
  }
  rep.passed = rep.max_beyond <= tol;
  return rep;
}

Records GrowthReport::records() const {
  Records r;
  r.add("applicable", applicable)
      .add("s", s)
      .add("grid_points", static_cast<std::uint64_t>(grid_points))
      .add("exceptional_measure", exceptional_measure)
      .add("sup_grid", sup_grid)
      .add("coefficient_sum", coefficient_sum)
      .add("log_bound", log_bound)
      .add("holds", holds)
      .add("certified", certified);
  return r;
}

GrowthReport growth_bound_check(const TrigPolyFit& fit, double s, std::size_t grid_points) {
  if (!(s > 0 && s <= kPi / 2)) throw std::invalid_argument("s must lie in (0, pi/2]");
  if (grid_points < 1) throw std::invalid_argument("grid needs at least one point");
  GrowthReport rep;
  rep.s = s;
  rep.grid_points = grid_points;
  const std::vector<Complex> values = evaluate_on_grid(fit, grid_points);
  std::size_t outside = 0;
  for (const Complex& v : values) {
    const double a = std::abs(v);
    rep.sup_grid = std::max(rep.sup_grid, a);
    if (a > 1 + 1e-12) ++outside;
  }
  rep.exceptional_measure = kTwoPi * static_cast<double>(outside) / static_cast<double>(grid_points);
  rep.coefficient_sum = fit.coefficient_sum();
  rep.log_bound = 4 * static_cast<double>(fit.degree) * s;
  rep.applicable = rep.exceptional_measure <= s;
  rep.holds = rep.applicable && std::log(rep.sup_grid) <= rep.log_bound + 1e-12;
  rep.certified = rep.applicable && std::log(rep.coefficient_sum) <= rep.log_bound + 1e-12;
  return rep;
}

Records DistGrowthCertificate::records() const {
  Records r;
  r.add("delta", delta)
      .add("epsilon", epsilon)
      .add("degree", degree)
      .add("measured_cost", measured_cost)
      .add("q_at_zero", q_at_zero)
      .add("round_trip_error", round_trip)
      .add("reality_defect", reality_defect);
  r.append(growth.records());
  r.add("implied_cost_bound", implied_cost_bound).add("passed", passed);
  return r;
}

DistGrowthCertificate dist_growth_certificate(double delta, double epsilon, std::uint64_t seed,
                                              std::size_t grid_points) {
  DistGrowthCertificate c;
  c.delta = delta;
  c.epsilon = epsilon;
  c.degree = median_qpe_cost(delta, epsilon);

  const std::size_t count = 2 * c.degree + 1;
  Samples samples = sample_function(
      [&](double theta) {
        CostLedger scratch;
        return dist_acceptance_probability(u_theta(theta), delta, epsilon, scratch) / epsilon;
      },
      count);
  const TrigPolyFit fit = fit_trig_poly(samples, c.degree);
  c.q_at_zero = samples.front().second;
  c.round_trip = round_trip_error(fit, samples);
  c.reality_defect = fit.reality_defect();
  c.growth = growth_bound_check(fit, 6 * delta, grid_points);
  c.implied_cost_bound = std::log(1 / (2 * epsilon)) / (24 * delta);

  CostLedger ledger;
  Rng rng(seed);
  (void)dist_solver(u_theta(0), delta, epsilon, ledger, rng);
  c.measured_cost = ledger.oracle_calls();

  c.passed = c.growth.holds && c.q_at_zero >= (1 - epsilon) / epsilon - 1e-9 &&
             std::log(1 / (2 * epsilon)) <= c.growth.log_bound &&
             static_cast<double>(c.measured_cost) >= c.implied_cost_bound;
  return c;
}

}  // namespace phaseforge
