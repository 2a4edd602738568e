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

#include <functional>
#include <utility>
#include <vector>

#include "phaseforge/certify/circuit.hpp"
#include "phaseforge/certify/records.hpp"

namespace phaseforge {

using Samples = std::vector<std::pair<double, double>>;

/// p(theta) = sum_{k=-d}^{d} a_k e^{ik theta}.
struct TrigPolyFit {
  std::size_t degree = 0;
  std::vector<Complex> coefficients;  // a_{-d}, ..., a_d
  std::vector<double> sample_grid;

  Complex coefficient(long k) const;
  Complex evaluate(double theta) const;
  /// max_k |a_{-k} - conj(a_k)|: zero for real-valued polynomials.
  double reality_defect() const;
  /// sum_k |a_k|, an upper bound on sup |p| over the real line.
  double coefficient_sum() const;
};

/// 2 pi i / count for i = 0..count-1.
std::vector<double> equispaced_angles(std::size_t count);

/// f on equispaced_angles(count).
Samples sample_function(const std::function<double(double)>& f, std::size_t count);

/// Acceptance probability of `alg` started from |0> with the oracle
/// `family(theta)`, at each of `count` equispaced angles. A basis state x
/// is accepting when accept(x) is true. The structure of `alg` is the same
/// for every angle, so these are exact samples of one function.
Samples acceptance_poly_samples(const OracleCircuit& alg, const std::function<bool(std::size_t)>& accept,
                                std::size_t count,
                                const std::function<BlackBoxUnitary(double)>& family);

/// Discrete Fourier inversion on 2d + 1 equispaced samples. Throws
/// std::invalid_argument on a wrong count or a non-equispaced grid.
TrigPolyFit fit_trig_poly(const Samples& samples, std::size_t degree);

/// Values of the fit at `points` equispaced angles. Uses one FFT when
/// points >= 2d + 1.
std::vector<Complex> evaluate_on_grid(const TrigPolyFit& fit, std::size_t points);

/// Largest |fit(theta) - p| over the samples.
double round_trip_error(const TrigPolyFit& fit, const Samples& samples);

struct DegreeReport {
  std::uint64_t cost = 0;
  std::size_t fit_degree = 0;
  double max_beyond = 0;  // max |a_k| over |k| > 2 cost
  double tolerance = 0;
  bool passed = true;

  Records records() const;
};

/// Checks |a_k| <= tol for |k| > 2 cost.
DegreeReport verify_degree(const TrigPolyFit& fit, std::uint64_t cost, double tol = 1e-8);

struct GrowthReport {
  bool applicable = false;
  double s = 0;
  std::size_t grid_points = 0;
  double exceptional_measure = 0;  // measure of {|p| > 1} on the grid
  double sup_grid = 0;
  double coefficient_sum = 0;
  double log_bound = 0;  // 4 d s
  bool holds = false;    // log(sup_grid) <= log_bound
  bool certified = false;  // log(coefficient_sum) <= log_bound

  Records records() const;
};

/// Consistency check of sup |p| <= exp(4 d s) for a fit that is bounded by
/// 1 outside a set of measure at most s, measured on `grid_points` points.
GrowthReport growth_bound_check(const TrigPolyFit& fit, double s, std::size_t grid_points = 100000);

/// The acceptance polynomial of dist_solver on u_theta, divided by epsilon,
/// checked with s = 6 delta.
struct DistGrowthCertificate {
  double delta = 0;
  double epsilon = 0;
  std::uint64_t degree = 0;         // oracle cost of one dist_solver call
  std::uint64_t measured_cost = 0;  // ledger count of a real run
  double q_at_zero = 0;
  double round_trip = 0;
  double reality_defect = 0;
  GrowthReport growth;
  double implied_cost_bound = 0;  // ln(1 / (2 epsilon)) / (24 delta)
  bool passed = false;

  Records records() const;
};

DistGrowthCertificate dist_growth_certificate(double delta, double epsilon, std::uint64_t seed = 1,
                                              std::size_t grid_points = 100000);

}  // namespace phaseforge
