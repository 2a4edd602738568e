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

#include "phaseforge/certify/adversary.hpp"
#include "phaseforge/certify/circuit.hpp"
#include "phaseforge/certify/records.hpp"
#include "phaseforge/certify/trig_poly.hpp"
#include "phaseforge/sim/angles.hpp"
#include "phaseforge/sim/instances.hpp"

namespace phaseforge {
namespace {

Matrix hadamard() {
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

// Controlled U_theta on a |0> target between two Hadamards on the control.
// Accepting on control = 0 gives (1 + cos theta) / 2.
OracleCircuit hadamard_test() {
  OracleCircuit c(RegisterLayout({{"control", 2}, {"target", 2}}));
  c.gate(hadamard(), 0).oracle(1, false, QubitRef{0, 0}).gate(hadamard(), 0);
  return c;
}

bool control_zero(std::size_t x) { return x / 2 == 0; }

// Plain O(n^2) inversion, independent of the FFT path.
std::vector<Complex> naive_coefficients(const Samples& samples, long d) {
  std::vector<Complex> out;
  const double n = static_cast<double>(samples.size());
  for (long k = -d; k <= d; ++k) {
    Complex acc = 0;
    for (const auto& [theta, p] : samples) acc += p * std::polar(1.0, -static_cast<double>(k) * theta);
    out.push_back(acc / n);
  }
  return out;
}

BlackBoxUnitary family(double theta) { return u_theta(theta); }

// ---------------------------------------------------------------- adversary

TEST(Adversary, InitialMeasureMatchesClosedForm) {
  for (std::size_t n : {2, 3, 4, 8}) {
    for (double gamma : {0.0, 0.25, 0.5, 0.9, 1.0}) {
      for (std::uint64_t t : {0, 1, 2, 3}) {
        if (std::pow(static_cast<double>(n), static_cast<double>(t)) * 2 > 4096) continue;
        std::vector<Register> regs;
        for (std::uint64_t i = 0; i < t; ++i) regs.push_back({"advice", n});
        regs.push_back({"work", 2});
        OracleCircuit idle{RegisterLayout(regs)};
        const ProgressTrace tr = adversary_progress(idle, n, 0.3, gamma, t, 10);
        ASSERT_EQ(tr.values.size(), 1u);
        EXPECT_NEAR(tr.values[0], initial_progress(n, gamma, t), 1e-12)
            << "n=" << n << " gamma=" << gamma << " t=" << t;
      }
    }
  }
}

TEST(Adversary, FourInputsTwoCopies) {
  EXPECT_NEAR(initial_progress(4, 0.5, 2), 2.25, 1e-15);
  OracleCircuit idle(RegisterLayout({{"a", 4}, {"b", 4}}));
  EXPECT_NEAR(adversary_progress(idle, 4, 0.3, 0.5, 2, 0).values[0], 2.25, 1e-12);
}

TEST(Adversary, StepBoundEndpoints) {
  EXPECT_NEAR(progress_step_bound(5, kPi), 4.0, 1e-12);
  EXPECT_EQ(progress_step_bound(5, 0.0), 0.0);
  EXPECT_NEAR(progress_step_bound(8, 0.3), 2 * std::sin(0.15) * std::sqrt(7.0), 1e-15);
}

TEST(Adversary, ZeroAngleNeverMakesProgress) {
  OracleCircuit c(RegisterLayout({{"advice", 4}, {"work", 4}}));
  Rng rng(5);
  c.gate(haar_unitary(16, rng), 0, 2).oracle(1).gate(haar_unitary(16, rng), 0, 2).oracle(0, true);
  const ProgressTrace tr = adversary_progress(c, 4, 0.0, 0.6, 1, 10);
  for (double d : tr.per_step_drops) EXPECT_NEAR(d, 0.0, 1e-12);
  const StepBoundReport rep = verify_step_bound(tr);
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.bound, 0.0);
}

TEST(Adversary, TraceInvariantsAndCostCap) {
  Rng rng(11);
  OracleCircuit c = random_oracle_circuit(3, rng);
  // The random circuit's oracle register has dimension 2, so the family has N = 2.
  const ProgressTrace tr = adversary_progress(c, 2, 1.0, 0.0, 0, 3);
  EXPECT_EQ(tr.values.size(), 4u);
  EXPECT_NO_THROW(tr.check_invariants());
  for (std::size_t i = 0; i < tr.per_step_drops.size(); ++i) {
    EXPECT_DOUBLE_EQ(tr.per_step_drops[i], tr.values[i] - tr.values[i + 1]);
  }
  EXPECT_TRUE(verify_step_bound(tr).passed);
  EXPECT_THROW(adversary_progress(c, 2, 1.0, 0.0, 0, 2), std::length_error);
}

TEST(Adversary, RejectsMidCircuitMeasurement) {
  OracleCircuit c(RegisterLayout({{"target", 3}}));
  c.oracle(0).measure(0).oracle(0);
  EXPECT_THROW(adversary_progress(c, 3, 0.5, 0.0, 0, 10), std::invalid_argument);
  EXPECT_THROW(c.inverse(), std::logic_error);
}

TEST(Adversary, TargetedCircuitNearlySaturatesTheBound) {
  const ProgressTrace tr = adversary_progress(targeted_drop_circuit(8), 8, kPi, 0.5, 1, 1);
  const StepBoundReport rep = verify_step_bound(tr);
  EXPECT_TRUE(rep.passed);
  EXPECT_GE(rep.max_drop, 0.5 * rep.bound);
  EXPECT_LE(rep.max_drop, rep.bound + 1e-9);
}

TEST(Adversary, RandomCircuitsRespectTheBound) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const double angle = 3 * uniform01(rng);
    OracleCircuit c(RegisterLayout({{"advice", 4}, {"target", 4}, {"work", 2}}));
    for (int q = 0; q < 4; ++q) {
      c.gate(haar_unitary(32, rng), 0, 3);
      c.oracle(q % 2 == 0 ? 1 : 0, q == 3, q == 2 ? std::optional<QubitRef>(QubitRef{2, 0}) : std::nullopt);
    }
    const StepBoundReport rep = verify_step_bound(adversary_progress(c, 4, angle, 0.7, 1, 4));
    EXPECT_TRUE(rep.passed) << "seed " << seed;
    EXPECT_GE(rep.slack, -1e-9);
  }
}

TEST(Adversary, AdvicelessTranscriptOnEightInputs) {
  const OracleCircuit alg = adviceless_transcript(8, 6, 16);
  EXPECT_EQ(alg.cost(), 33u * 63u);
  const ProgressTrace tr = adversary_progress(alg, 8, 0.3, 0.0, 0, alg.cost());
  ASSERT_EQ(tr.values.size(), alg.cost() + 1);
  EXPECT_NEAR(tr.values.front(), 7.0, 1e-12);
  const StepBoundReport rep = verify_step_bound(tr);
  EXPECT_EQ(rep.violations, 0u);
  EXPECT_GT(rep.max_drop, 0.0);
  EXPECT_LT(tr.values.back(), 0.99 * 7);
  EXPECT_EQ(tr.final_overlaps.size(), 7u);
}

TEST(Records, RoundTrip) {
  Records r;
  r.add("name", "trace").add("x", 0.1).add("count", std::uint64_t{7}).add("ok", true);
  const Records back = parse_records("# header\n\n" + r.str());
  EXPECT_EQ(back.items(), r.items());
  EXPECT_EQ(std::stod(back.get("x")), 0.1);
  EXPECT_EQ(back.get("ok"), "true");
  EXPECT_THROW(back.get("missing"), std::out_of_range);
  EXPECT_THROW(parse_records("no equals sign"), std::invalid_argument);
}

// ---------------------------------------------------------------- trig polys

TEST(TrigPoly, HadamardTestSamplesOnePlusCosine) {
  const Samples s = acceptance_poly_samples(hadamard_test(), control_zero, 5, family);
  ASSERT_EQ(s.size(), 5u);
  for (const auto& [theta, p] : s) EXPECT_NEAR(p, (1 + std::cos(theta)) / 2, 1e-12);

  const TrigPolyFit fit = fit_trig_poly(s, 2);
  EXPECT_NEAR(std::abs(fit.coefficient(0) - 0.5), 0, 1e-12);
  EXPECT_NEAR(std::abs(fit.coefficient(1) - 0.25), 0, 1e-12);
  EXPECT_NEAR(std::abs(fit.coefficient(-1) - 0.25), 0, 1e-12);
  EXPECT_NEAR(std::abs(fit.coefficient(2)), 0, 1e-12);
  EXPECT_NEAR(std::abs(fit.coefficient(-2)), 0, 1e-12);
  EXPECT_TRUE(verify_degree(fit, 1).passed);
}

TEST(TrigPoly, OracleFreeCircuitIsConstant) {
  OracleCircuit c(RegisterLayout({{"target", 2}, {"work", 3}}));
  Rng rng(2);
  c.gate(haar_unitary(6, rng), 0, 2);
  const Samples s = acceptance_poly_samples(c, [](std::size_t x) { return x % 3 == 1; }, 9, family);
  for (const auto& sample : s) EXPECT_NEAR(sample.second, s.front().second, 1e-13);
  const TrigPolyFit fit = fit_trig_poly(s, 4);
  const DegreeReport rep = verify_degree(fit, 0);
  EXPECT_TRUE(rep.passed);
  EXPECT_LE(rep.max_beyond, 1e-13);
}

TEST(TrigPoly, ElementaryFits) {
  const TrigPolyFit c = fit_trig_poly(sample_function([](double t) { return std::cos(t); }, 3), 1);
  EXPECT_NEAR(std::abs(c.coefficient(1) - 0.5), 0, 1e-15);
  EXPECT_NEAR(std::abs(c.coefficient(-1) - 0.5), 0, 1e-15);
  EXPECT_NEAR(std::abs(c.coefficient(0)), 0, 1e-15);

  const TrigPolyFit one = fit_trig_poly(sample_function([](double) { return 1.0; }, 7), 3);
  EXPECT_NEAR(std::abs(one.coefficient(0) - 1.0), 0, 1e-15);
  for (long k : {-3, -2, -1, 1, 2, 3}) EXPECT_NEAR(std::abs(one.coefficient(k)), 0, 1e-15);
  EXPECT_EQ(one.coefficient(4), Complex(0));
}

TEST(TrigPoly, FftAgreesWithNaiveInversion) {
  Rng rng(9);
  for (std::size_t d : {0, 1, 5, 16, 40}) {
    Samples s;
    for (double theta : equispaced_angles(2 * d + 1)) s.emplace_back(theta, uniform01(rng));
    const TrigPolyFit fit = fit_trig_poly(s, d);
    const auto naive = naive_coefficients(s, static_cast<long>(d));
    for (std::size_t i = 0; i < naive.size(); ++i) EXPECT_NEAR(std::abs(fit.coefficients[i] - naive[i]), 0, 1e-13);
    EXPECT_LE(round_trip_error(fit, s), 1e-12);
    EXPECT_LE(fit.reality_defect(), 1e-13);
  }
}

TEST(TrigPoly, RejectsBadGrids) {
  EXPECT_THROW(fit_trig_poly(sample_function([](double) { return 0.0; }, 4), 2), std::invalid_argument);
  Samples shifted = sample_function([](double) { return 0.0; }, 5);
  shifted[2].first += 0.01;
  EXPECT_THROW(fit_trig_poly(shifted, 2), std::invalid_argument);
}

TEST(TrigPoly, GridEvaluationMatchesDirectSum) {
  Rng rng(4);
  Samples s;
  for (double theta : equispaced_angles(21)) s.emplace_back(theta, uniform01(rng));
  const TrigPolyFit fit = fit_trig_poly(s, 10);
  for (std::size_t points : {7, 21, 64, 1001}) {
    const auto values = evaluate_on_grid(fit, points);
    for (std::size_t i = 0; i < points; ++i) {
      EXPECT_NEAR(std::abs(values[i] - fit.evaluate(grid_angle(i, points))), 0, 1e-12);
    }
  }
}

TEST(TrigPoly, RandomCircuitsHaveDegreeTwiceTheirCost) {
  for (std::uint64_t t : {1, 2, 3}) {
    // U_theta has eigenphases {theta, 0}, so every amplitude only spans
    // exponents in [-#inverse, #forward] and the degree is at most t.
    double top = 0;
    double above_t = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Rng rng(derive_seed(seed, t));
      const OracleCircuit c = random_oracle_circuit(t, rng);
      const std::size_t d = 2 * t + 2;
      const Samples s = acceptance_poly_samples(c, [](std::size_t x) { return x % 2 == 0; }, 2 * d + 1, family);
      const TrigPolyFit fit = fit_trig_poly(s, d);
      EXPECT_TRUE(verify_degree(fit, t).passed) << "t=" << t << " seed=" << seed;
      EXPECT_LE(round_trip_error(fit, s), 1e-10);
      EXPECT_LE(fit.reality_defect(), 1e-9);
      top = std::max(top, std::abs(fit.coefficient(static_cast<long>(t))));
      for (long k = static_cast<long>(t) + 1; k <= static_cast<long>(d); ++k) {
        above_t = std::max(above_t, std::abs(fit.coefficient(k)));
      }
    }
    EXPECT_GT(top, 1e-4) << "t=" << t;
    EXPECT_LE(above_t, 1e-12) << "t=" << t;
  }
}

TEST(TrigPoly, DegreeCheckFlagsTooLowADeclaredCost) {
  const TrigPolyFit fit = fit_trig_poly(acceptance_poly_samples(hadamard_test(), control_zero, 5, family), 2);
  // Cost 0 claims a constant, but a_{+-1} = 1/4.
  const DegreeReport rep = verify_degree(fit, 0);
  EXPECT_FALSE(rep.passed);
  EXPECT_NEAR(rep.max_beyond, 0.25, 1e-12);
}

TEST(Growth, ConstantHoldsWithEquality) {
  const TrigPolyFit one = fit_trig_poly(sample_function([](double) { return 1.0; }, 1), 0);
  const GrowthReport rep = growth_bound_check(one, 0.3);
  EXPECT_TRUE(rep.applicable);
  EXPECT_TRUE(rep.holds);
  EXPECT_NEAR(rep.sup_grid, 1.0, 1e-15);
  EXPECT_EQ(rep.log_bound, 0.0);
  EXPECT_EQ(rep.exceptional_measure, 0.0);
}

TEST(Growth, HighFrequencyCosine) {
  for (int n : {1, 5, 20}) {
    const std::size_t d = static_cast<std::size_t>(n);
    const TrigPolyFit fit =
        fit_trig_poly(sample_function([n](double t) { return std::cos(n * t); }, 2 * d + 1), d);
    const GrowthReport rep = growth_bound_check(fit, kPi / 2);
    EXPECT_TRUE(rep.holds);
    EXPECT_TRUE(rep.certified);
    EXPECT_NEAR(rep.sup_grid, 1.0, 1e-9);
    EXPECT_NEAR(rep.log_bound, 2 * kPi * n, 1e-12);
  }
}

TEST(Growth, LargeExceptionalSetIsNotApplicable) {
  const TrigPolyFit fit = fit_trig_poly(sample_function([](double t) { return 2 * std::cos(t); }, 3), 1);
  const GrowthReport rep = growth_bound_check(fit, 0.1);
  EXPECT_FALSE(rep.applicable);
  EXPECT_FALSE(rep.holds);
  EXPECT_NEAR(rep.exceptional_measure, 4 * kPi / 3, 1e-3);
  EXPECT_THROW(growth_bound_check(fit, 2.0), std::invalid_argument);
}

TEST(Growth, CoarseDistSolverCertificate) {
  const DistGrowthCertificate c = dist_growth_certificate(0.25, 0.3, 3);
  EXPECT_EQ(c.degree, 23u * 127u);
  EXPECT_EQ(c.measured_cost, c.degree);
  EXPECT_GE(c.q_at_zero, (1 - 0.3) / 0.3);
  EXPECT_LE(c.round_trip, 1e-10);
  EXPECT_TRUE(c.growth.applicable);
  EXPECT_LE(c.growth.exceptional_measure, 1.5);
  EXPECT_TRUE(c.passed);
  EXPECT_NEAR(c.implied_cost_bound, std::log(1 / 0.6) / 6, 1e-15);
}

}  // namespace
}  // namespace phaseforge
