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

#include "phaseforge/sim/advice.hpp"
#include "phaseforge/sim/angles.hpp"
#include "phaseforge/sim/density_state.hpp"
#include "phaseforge/sim/instances.hpp"
#include "phaseforge/sim/measure.hpp"
#include "phaseforge/sim/oracle.hpp"
#include "test_util.hpp"

namespace phaseforge {
namespace {

using testing::max_abs_diff;
using testing::random_state;

RegisterLayout one(std::size_t n) { return RegisterLayout({{"sys", n}}); }

TEST(RegisterLayout, StridesAndDigits) {
  RegisterLayout l({{"a", 3}, {"b", 4}, {"c", 2}});
  EXPECT_EQ(l.dim(), 24u);
  EXPECT_EQ(l.stride(0), 8u);
  EXPECT_EQ(l.stride(1), 2u);
  EXPECT_EQ(l.stride(2), 1u);
  const std::size_t x = 2 * 8 + 3 * 2 + 1;
  EXPECT_EQ(l.digit(x, 0), 2u);
  EXPECT_EQ(l.digit(x, 1), 3u);
  EXPECT_EQ(l.digit(x, 2), 1u);
  EXPECT_EQ(l.with_digit(x, 1, 0), 2u * 8 + 1);
  EXPECT_EQ(l.index_of("b"), 1u);
  EXPECT_THROW(l.index_of("zz"), DimensionError);
  EXPECT_THROW(RegisterLayout({{"bad", 0}}), DimensionError);
  EXPECT_THROW(l.check_qubit({0, 0}), DimensionError);  // dimension 3 is not a qubit register
  EXPECT_NO_THROW(l.check_qubit({1, 1}));
}

TEST(ApplyOracle, IdentityLeavesStateAndChargesOne) {
  Rng rng(1);
  PureState psi = random_state(one(4), rng);
  const Vector before = psi.amplitudes();
  CostLedger ledger;
  apply_oracle(psi, BlackBoxUnitary::diagonal({0, 0, 0, 0}), 0, false, std::nullopt, ledger);
  EXPECT_LT(max_abs_diff(psi.amplitudes(), before), 1e-15);
  EXPECT_EQ(ledger.oracle_calls(), 1u);
}

TEST(ApplyOracle, UThetaPiFlipsZero) {
  PureState psi = PureState::basis(one(2), 0);
  CostLedger ledger;
  apply_oracle(psi, u_theta(kPi), 0, false, std::nullopt, ledger);
  EXPECT_NEAR(psi.amplitude(0).real(), -1.0, 1e-15);
  EXPECT_NEAR(std::abs(psi.amplitude(1)), 0.0, 1e-15);
  EXPECT_EQ(ledger.oracle_calls(), 1u);
}

TEST(ApplyOracle, ControlledMatchesExplicitFourByFour) {
  // Control qubit first, target second: CU = diag(I, U) in this ordering.
  const BlackBoxUnitary m = m_j_delta(2, 1, kPi / 2);
  RegisterLayout l({{"ctrl", 2}, {"sys", 2}});
  Vector v = Vector::Zero(4);
  v[1] = v[3] = 1 / std::sqrt(2.0);  // (|0>+|1>)/sqrt2 (x) |1>
  PureState psi(l, v);
  CostLedger ledger;
  apply_oracle(psi, m, 1, false, QubitRef{0, 0}, ledger);

  Matrix cu = Matrix::Identity(4, 4);
  cu(3, 3) = Complex(0, 1);
  const Vector expected = cu * v;
  EXPECT_LT(max_abs_diff(psi.amplitudes(), expected), 1e-15);
  EXPECT_NEAR(psi.amplitude(3).imag(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(ledger.oracle_calls(), 1u);

  // Dense form of the same oracle on the same input.
  PureState psi2(l, v);
  apply_oracle(psi2, BlackBoxUnitary::dense(m.matrix()), 1, false, QubitRef{0, 0}, ledger);
  EXPECT_LT(max_abs_diff(psi2.amplitudes(), expected), 1e-15);
}

TEST(ApplyOracle, ForwardThenInverseRestoresAndChargesTwo) {
  Rng rng(2);
  RegisterLayout l({{"ctrl", 2}, {"sys", 3}, {"work", 2}});
  const BlackBoxUnitary u = BlackBoxUnitary::dense(haar_unitary(3, rng));
  for (int trial = 0; trial < 5; ++trial) {
    PureState psi = random_state(l, rng);
    const Vector before = psi.amplitudes();
    CostLedger ledger;
    std::optional<QubitRef> ctrl;
    if (trial % 2) ctrl = QubitRef{0, 0};
    apply_oracle(psi, u, 1, false, ctrl, ledger);
    apply_oracle(psi, u, 1, true, ctrl, ledger);
    EXPECT_LT(max_abs_diff(psi.amplitudes(), before), 1e-9);
    EXPECT_EQ(ledger.oracle_calls(), 2u);
  }
}

TEST(ApplyOracle, DiagonalAndDenseFormsAgree) {
  Rng rng(3);
  RegisterLayout l({{"p", 4}, {"sys", 3}});
  const std::vector<double> phases = {0.3, 2.0, 5.5};
  const BlackBoxUnitary d = BlackBoxUnitary::diagonal(phases);
  const BlackBoxUnitary m = BlackBoxUnitary::dense(d.matrix());
  for (unsigned bit = 0; bit < 2; ++bit) {
    PureState a = random_state(l, rng);
    PureState b = a;
    CostLedger ledger;
    apply_oracle(a, d, 1, bit == 1, QubitRef{0, bit}, ledger);
    apply_oracle(b, m, 1, bit == 1, QubitRef{0, bit}, ledger);
    EXPECT_LT(max_abs_diff(a.amplitudes(), b.amplitudes()), 1e-12);
  }
}

TEST(ApplyOracle, RejectsMismatchAndNonUnitary) {
  PureState psi = PureState::basis(one(3));
  CostLedger ledger;
  EXPECT_THROW(apply_oracle(psi, u_theta(1.0, 2), 0, false, std::nullopt, ledger), DimensionError);
  EXPECT_EQ(ledger.oracle_calls(), 0u);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 0) = 2.0;
  EXPECT_THROW(BlackBoxUnitary::dense(bad), InvariantViolation);
  RegisterLayout l({{"c", 3}, {"sys", 2}});
  PureState phi = PureState::basis(l);
  EXPECT_THROW(apply_oracle(phi, u_theta(1.0), 1, false, QubitRef{0, 0}, ledger), DimensionError);
}

TEST(PureState, GroupApplicationMatchesKroneckerEmbedding) {
  Rng rng(4);
  RegisterLayout l({{"a", 2}, {"b", 3}, {"c", 2}, {"d", 2}});
  PureState psi = random_state(l, rng);
  const Matrix g = haar_unitary(6, rng);
  const Vector expected = embed_group(g, l, 1, 2) * psi.amplitudes();
  psi.apply_group(g, 1, 2);
  EXPECT_LT(max_abs_diff(psi.amplitudes(), expected), 1e-12);
  psi.check_normalized();
}

TEST(PureState, ControlledDenseMatchesBlockMatrix) {
  Rng rng(5);
  RegisterLayout l({{"sys", 3}, {"ctrl", 4}});
  PureState psi = random_state(l, rng);
  const Matrix g = haar_unitary(3, rng);
  // Build the controlled operator explicitly from basis actions.
  Matrix full = Matrix::Zero(12, 12);
  for (std::size_t x = 0; x < 12; ++x) {
    const std::size_t s = x / 4, c = x % 4;
    for (std::size_t t = 0; t < 3; ++t) {
      const std::size_t y = t * 4 + c;
      full(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) =
          (c & 2) ? g(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s))
                  : Complex(t == s ? 1.0 : 0.0);
    }
  }
  const Vector expected = full * psi.amplitudes();
  psi.apply_controlled(g, 0, QubitRef{1, 1});
  EXPECT_LT(max_abs_diff(psi.amplitudes(), expected), 1e-12);
}

TEST(PureState, NormPreservedUnderRandomCircuits) {
  Rng rng(6);
  RegisterLayout l({{"a", 2}, {"b", 4}, {"c", 3}});
  PureState psi = random_state(l, rng);
  CostLedger ledger;
  const BlackBoxUnitary u = BlackBoxUnitary::dense(haar_unitary(4, rng));
  for (int i = 0; i < 50; ++i) {
    psi.apply(haar_unitary(3, rng), 2);
    apply_oracle(psi, u, 1, i % 3 == 0, QubitRef{0, 0}, ledger);
    psi.apply_group(haar_unitary(8, rng), 0, 2);
    psi.apply_permutation([&](std::size_t x) { return (x + 5) % l.dim(); });
    EXPECT_NEAR(psi.norm(), 1.0, 1e-9);
  }
  EXPECT_EQ(ledger.oracle_calls(), 50u);
}

TEST(PureState, PermutationMustBeBijective) {
  PureState psi = PureState::basis(one(4));
  EXPECT_THROW(psi.apply_permutation([](std::size_t) { return 0; }), InvariantViolation);
}

TEST(FrorInstance, GammaOneCollapsesToMarkedIndex) {
  FrorInstance inst = make_fror_instance(2, kPi / 2, 1, 1.0, 1);
  const Matrix expected = Vector(Eigen::Vector2cd(1.0, Complex(0, 1))).asDiagonal();
  EXPECT_LT(max_abs_diff(inst.oracle.matrix(), expected), 1e-15);
  EXPECT_EQ(inst.advice.budget(), 1u);
  EXPECT_NEAR(std::abs(inst.advice.copy_state().amplitude(1)), 1.0, 1e-15);
}

TEST(FrorInstance, ZeroInputIsIdentityWithZeroAdvice) {
  FrorInstance inst = make_fror_instance(4, 0.3, 0, 0.5, 3);
  EXPECT_LT(max_abs_diff(inst.oracle.matrix(), Matrix::Identity(4, 4)), 1e-15);
  const PureState joint = tensor_power(inst.advice.copy_state(), inst.advice.budget());
  EXPECT_EQ(joint.dim(), 64u);
  EXPECT_NEAR(std::abs(joint.amplitude(0)), 1.0, 1e-15);
}

TEST(FrorInstance, AdviceOverlapWithZeroInput) {
  FrorInstance inst = make_fror_instance(4, 0.3, 2, 0.5, 2);
  const PureState joint = tensor_power(inst.advice.copy_state(), 2);
  const PureState zero = tensor_power(fror_advice_state(4, 0, 0.5), 2);
  const double expected = std::pow(1 - 0.25, 2 / 2.0);
  EXPECT_NEAR(std::abs(joint.inner(zero)), expected, 1e-15);
  EXPECT_NEAR(expected, 0.75, 1e-15);
}

TEST(FrorInstance, RejectsBadArguments) {
  EXPECT_THROW(make_fror_instance(4, 0.3, 4, 0.5, 1), std::invalid_argument);
  EXPECT_THROW(make_fror_instance(4, 0.3, 1, 0.4, 1), std::invalid_argument);
  EXPECT_THROW(make_fror_instance(4, 0.3, 1, 1.1, 1), std::invalid_argument);
  EXPECT_THROW(make_fror_instance(1, 0.3, 0, 1.0, 1), std::invalid_argument);
}

TEST(AdviceSource, CopiesRunOut) {
  AdviceSource a = AdviceSource::copies(PureState::basis(one(2)), 2, 1.0);
  CostLedger ledger;
  a.take_copy(ledger);
  a.take_copy(ledger);
  EXPECT_THROW(a.take_copy(ledger), BudgetExhausted);
  EXPECT_EQ(ledger.advice_copies_consumed(), 2u);
}

TEST(AdviceSource, PreparerChargesPerUse) {
  Rng rng(7);
  const Vector alpha = testing::random_unit_vector(4, rng);
  const Matrix a = unitary_with_first_column(alpha);
  EXPECT_LT(unitarity_defect(a), 1e-12);
  EXPECT_LT(max_abs_diff(Vector(a.col(0)), alpha), 1e-12);
  AdviceSource src = AdviceSource::preparer(a, one(4), 0.5, 3);
  PureState psi = PureState::basis(one(4));
  CostLedger ledger;
  src.apply_preparer(psi, 0, 1, false, ledger);
  EXPECT_LT(max_abs_diff(psi.amplitudes(), alpha), 1e-12);
  src.apply_preparer(psi, 0, 1, true, ledger);
  EXPECT_NEAR(std::abs(psi.amplitude(0)), 1.0, 1e-12);
  EXPECT_EQ(ledger.advice_unitary_calls(), 2u);
  EXPECT_EQ(ledger.oracle_calls(), 6u);
}

TEST(Measure, BasisStateIsCertain) {
  const MeasurementResult r = measure_register(PureState::basis(one(3), 0), 0, std::uint64_t{9});
  EXPECT_EQ(r.outcome, 0u);
  EXPECT_NEAR(r.probability, 1.0, 1e-15);
}

TEST(Measure, SeededOutcomeIsReproducible) {
  PureState plus(one(2), Eigen::Vector2cd(1 / std::sqrt(2.0), 1 / std::sqrt(2.0)));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_EQ(measure_register(plus, 0, seed).outcome, measure_register(plus, 0, seed).outcome);
  }
}

TEST(Measure, EmpiricalFrequencyWithinThreeSigma) {
  PureState psi(one(2), Eigen::Vector2cd(std::sqrt(0.36), std::sqrt(0.64)));
  Rng rng(11);
  const std::size_t n = 100000;
  std::size_t ones = 0;
  for (std::size_t i = 0; i < n; ++i) ones += measure_register(psi, 0, rng).outcome;
  const double freq = static_cast<double>(ones) / n;
  EXPECT_NEAR(freq, 0.64, 3 * std::sqrt(0.64 * 0.36 / n));
}

TEST(Measure, CollapsedStateIsRenormalized) {
  Rng rng(12);
  RegisterLayout l({{"a", 3}, {"b", 2}});
  PureState psi = random_state(l, rng);
  const MeasurementResult r = measure_register(psi, 1, rng);
  r.collapsed.check_normalized();
  EXPECT_NEAR(r.probability, psi.marginal(1)[r.outcome], 1e-15);
  EXPECT_NEAR(r.collapsed.marginal(1)[r.outcome], 1.0, 1e-12);
}

TEST(Measure, ProjectionOntoImpossibleOutcomeThrows) {
  PureState psi = PureState::basis(one(2), 0);
  EXPECT_THROW(psi.project(0, 1), InvariantViolation);
}

TEST(CircularDistance, Examples) {
  EXPECT_DOUBLE_EQ(circular_distance(0, 0), 0.0);
  EXPECT_NEAR(circular_distance(0.1, kTwoPi - 0.1), 0.2, 1e-12);
  EXPECT_NEAR(circular_distance(kPi / 2, 3 * kPi / 2), kPi, 1e-12);
  EXPECT_NEAR(circular_distance(-0.1, 0.1 + 4 * kPi), 0.2, 1e-12);
  EXPECT_NEAR(wrap_angle(-0.5), kTwoPi - 0.5, 1e-12);
}

TEST(CircularDistance, RangeAndSymmetry) {
  Rng rng(13);
  std::uniform_real_distribution<double> u(-20, 20);
  for (int i = 0; i < 1000; ++i) {
    const double a = u(rng), b = u(rng);
    const double d = circular_distance(a, b);
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, kPi + 1e-12);
    EXPECT_NEAR(d, circular_distance(b, a), 1e-12);
  }
}

TEST(DensityState, InvariantsAndPartialTrace) {
  Rng rng(14);
  RegisterLayout l({{"a", 2}, {"b", 3}});
  const PureState psi = random_state(l, rng);
  DensityState rho = DensityState::from_pure(psi);
  rho.check_invariants();
  rho.apply(haar_unitary(3, rng), 1);
  rho.check_invariants();
  const DensityState ra = rho.partial_trace({0});
  ra.check_invariants();
  // Reduced diagonal equals the register marginal.
  const auto p = rho.marginal(0);
  EXPECT_NEAR(ra.matrix()(0, 0).real(), p[0], 1e-12);
  const DensityState rb = rho.partial_trace({1});
  EXPECT_EQ(rb.dim(), 3u);
  rb.check_invariants();
  Matrix bad = Matrix::Identity(2, 2);
  EXPECT_THROW(DensityState(one(2), bad).check_invariants(), InvariantViolation);
}

TEST(Spectrum, DenseUnitaryDiagonalizes) {
  Rng rng(15);
  const Matrix w = haar_unitary(4, rng);
  Vector d(4);
  const std::vector<double> phases = {0.5, 1.5, 3.0, 6.0};
  for (int i = 0; i < 4; ++i) d[i] = std::polar(1.0, phases[static_cast<std::size_t>(i)]);
  const Matrix u = w * d.asDiagonal() * w.adjoint();
  const Spectrum s = BlackBoxUnitary::dense(u).spectrum();
  std::vector<double> got = s.phases;
  std::sort(got.begin(), got.end());
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(got[i], phases[i], 1e-9);
  Vector dd(4);
  for (int i = 0; i < 4; ++i) dd[i] = std::polar(1.0, s.phases[static_cast<std::size_t>(i)]);
  EXPECT_LT(max_abs_diff(Matrix(s.vectors * dd.asDiagonal() * s.vectors.adjoint()), u), 1e-9);
}

TEST(Rng, DerivedStreamsAreDistinctAndStable) {
  EXPECT_EQ(derive_seed(1, 0), derive_seed(1, 0));
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}

}  // namespace
}  // namespace phaseforge
