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
#include <unsupported/Eigen/MatrixFunctions>

#include "phaseforge/lmr/lmr.hpp"
#include "phaseforge/qpe/qft.hpp"
#include "phaseforge/sim/instances.hpp"
#include "test_util.hpp"

namespace phaseforge {
namespace {

using testing::max_abs_diff;

RegisterLayout qudit(std::size_t d) { return RegisterLayout({{"q", d}}); }

Matrix random_density(std::size_t d, Rng& rng) {
  Matrix g(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  std::normal_distribution<double> n(0, 1);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = Complex(n(rng), n(rng));
  Matrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

Matrix pure(const Vector& v) { return v * v.adjoint(); }

Matrix swap_matrix(std::size_t d) {
  Matrix s = Matrix::Zero(static_cast<Eigen::Index>(d * d), static_cast<Eigen::Index>(d * d));
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) s(static_cast<Eigen::Index>(b * d + a), static_cast<Eigen::Index>(a * d + b)) = 1;
  }
  return s;
}

AdviceSource copies_of(const Vector& v, std::uint64_t budget) {
  return AdviceSource::copies(PureState(qudit(static_cast<std::size_t>(v.size())), v), budget, 1.0);
}

TEST(PartialSwap, ZeroStepLeavesSystemUnchanged) {
  Rng rng(1);
  const DensityState sys(qudit(3), random_density(3, rng));
  const DensityState cp(qudit(3), random_density(3, rng));
  EXPECT_LT(max_abs_diff(partial_swap_step(sys, cp, 0.0).matrix(), sys.matrix()), 1e-14);
}

TEST(PartialSwap, MaximallyMixedCopyDepolarizes) {
  // The generator I/d is a global phase, so only the second-order term
  // survives: X -> cos^2 X + sin^2 Tr(X) I/d.
  Rng rng(2);
  const Matrix x = random_density(2, rng);
  const DensityState sys(qudit(2), x);
  const auto mixed = DensityState::maximally_mixed(qudit(2));
  for (double dt : {0.1, 0.7, 2.0}) {
    const double c = std::cos(dt), s = std::sin(dt);
    const Matrix expect = c * c * x + s * s * Matrix::Identity(2, 2) / 2.0;
    EXPECT_LT(max_abs_diff(partial_swap_step(sys, mixed, dt).matrix(), expect), 1e-12);
  }
  EXPECT_LT(max_abs_diff(partial_swap_step(sys, mixed, kPi / 2).matrix(), mixed.matrix()), 1e-12);
}

TEST(PartialSwap, MatchesMatrixExponentialOfSwap) {
  Vector plus(2), zero(2);
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  zero << 1, 0;
  const double dt = 0.1;
  const Matrix u = (Complex(0, -dt) * swap_matrix(2)).exp();
  const Matrix joint = u * kron(pure(plus), pure(zero)) * u.adjoint();
  Matrix expect = Matrix::Zero(2, 2);
  for (int a = 0; a < 2; ++a) {
    for (int a2 = 0; a2 < 2; ++a2) expect(a, a2) = joint(2 * a, 2 * a2) + joint(2 * a + 1, 2 * a2 + 1);
  }
  const auto out = partial_swap_step(DensityState(qudit(2), pure(plus)), DensityState(qudit(2), pure(zero)), dt);
  EXPECT_LT(max_abs_diff(out.matrix(), expect), 1e-12);
}

TEST(PartialSwap, ClosedFormChannelMatchesLiteralStep) {
  Rng rng(3);
  for (std::size_t d : {2U, 3U, 4U}) {
    const Matrix sigma = random_density(d, rng);
    const Matrix x = random_density(d, rng);
    const double dt = 0.37;
    const auto literal = partial_swap_step(DensityState(qudit(d), x), DensityState(qudit(d), sigma), dt);
    EXPECT_LT(max_abs_diff(partial_swap_channel(sigma, dt).apply(x), literal.matrix()), 1e-12);
  }
}

TEST(Channel, ChoiOfUnitaryIsRankOneAndDistancesAreNormalized) {
  const Matrix x = pauli_x();
  const auto id = QuantumChannel::identity(2);
  const auto flip = QuantumChannel::unitary(x);
  EXPECT_NEAR(channel_distance(id, id), 0.0, 1e-15);
  EXPECT_NEAR(channel_distance(id, flip), 2.0, 1e-12);
  EXPECT_NEAR(flip.choi().trace().real(), 2.0, 1e-12);
  Vector vec_x(4);
  vec_x << 0, 1, 1, 0;  // vec of X in the |i>|a> ordering of the Choi matrix
  EXPECT_LT(max_abs_diff(flip.choi(), Matrix(vec_x * vec_x.adjoint())), 1e-12);
}

TEST(Channel, DistanceIsSymmetricAndObeysTriangleInequality) {
  Rng rng(4);
  const auto a = QuantumChannel::unitary(haar_unitary(3, rng));
  const auto b = partial_swap_channel(random_density(3, rng), 0.4);
  const auto c = compose(a, b);
  EXPECT_NEAR(channel_distance(a, b), channel_distance(b, a), 1e-12);
  EXPECT_LE(channel_distance(a, c), channel_distance(a, b) + channel_distance(b, c) + 1e-12);
}

TEST(Lmr, ZeroTimeIsIdentityAndMixedCopyOnlyDepolarizes) {
  CostLedger ledger;
  Vector v(2);
  v << 0.6, Complex(0, 0.8);
  auto src = copies_of(v, 100);
  EXPECT_LT(max_abs_diff(lmr_exponentiate(src, 0.0, 10, ledger).liouville(), Matrix::Identity(4, 4)), 1e-15);
  EXPECT_EQ(ledger.advice_copies_consumed(), 10U);
  // A maximally mixed copy leaves only depolarization of strength
  // 1 - cos^{2n}(t/n), which vanishes as n grows.
  const double t = 0.9;
  for (std::uint64_t n : {10U, 1000U}) {
    const auto mixed = partial_swap_channel(Matrix::Identity(2, 2) / 2.0, -t / n).power(n);
    const double keep = std::pow(std::cos(t / n), 2.0 * n);
    const Matrix x = pure(v);
    EXPECT_LT(max_abs_diff(mixed.apply(x), keep * x + (1 - keep) * Matrix::Identity(2, 2) / 2.0), 1e-12);
  }
}

TEST(Lmr, ConvergesToConjugationByExponential) {
  // Oracle: Eigen's matrix exponential of i t sigma.
  Rng rng(5);
  const Vector v = testing::random_unit_vector(3, rng);
  const Matrix sigma = pure(v);
  const double t = 1.3;
  const auto target = QuantumChannel::unitary((Complex(0, t) * sigma).exp());
  CostLedger ledger;
  auto src = copies_of(v, 100000);
  const double e1 = channel_distance(lmr_exponentiate(src, t, 2000, ledger), target);
  const double e2 = channel_distance(lmr_exponentiate(src, t, 4000, ledger), target);
  EXPECT_LT(e2, 2e-3);
  EXPECT_NEAR(e1 / e2, 2.0, 0.05);
  EXPECT_EQ(ledger.advice_copies_consumed(), 6000U);
}

TEST(Lmr, QubitReflectionErrorHalvesWithDoubledSteps) {
  Vector zero(2);
  zero << 1, 0;
  const auto exact = QuantumChannel::unitary(Matrix::Identity(2, 2) - 2 * pure(zero));
  CostLedger ledger;
  auto src = copies_of(zero, 1000);
  const double e64 = channel_distance(lmr_exponentiate(src, kPi, 64, ledger), exact);
  const double e128 = channel_distance(lmr_exponentiate(src, kPi, 128, ledger), exact);
  const double e256 = channel_distance(lmr_exponentiate(src, kPi, 256, ledger), exact);
  EXPECT_LE(e256, 0.15);
  EXPECT_GE(e64 / e128, 1.7);
  EXPECT_LE(e64 / e128, 2.3);
  EXPECT_GE(e128 / e256, 1.7);
  EXPECT_LE(e128 / e256, 2.3);
}

TEST(Lmr, ChannelsStayPhysicalOnRandomInputs) {
  Rng rng(6);
  for (std::size_t d : {2U, 4U}) {
    const Vector v = testing::random_unit_vector(d, rng);
    CostLedger ledger;
    auto src = copies_of(v, 1000);
    const auto ch = lmr_exponentiate(src, kPi, 37, ledger);
    ch.check_invariants();
    for (int k = 0; k < 5; ++k) {
      DensityState out = ch.apply(DensityState(qudit(d), random_density(d, rng)));
      out.check_invariants(1e-9, 1e-8);
    }
  }
}

TEST(Reflection, MeetsEtaAcrossDimensions) {
  Rng rng(7);
  for (std::size_t d : {2U, 4U, 8U}) {
    const Vector v = testing::random_unit_vector(d, rng);
    const auto exact = QuantumChannel::unitary(Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)) - 2 * pure(v));
    for (double eta : {0.2, 0.05, 0.01}) {
      CostLedger ledger;
      auto src = copies_of(v, 1U << 20);
      const auto ch = reflection_from_copies(src, eta, ledger);
      EXPECT_LE(channel_distance(ch, exact), eta) << "d=" << d << " eta=" << eta;
      EXPECT_EQ(ledger.advice_copies_consumed(), lmr_reflection_steps(eta));
    }
  }
}

TEST(Reflection, ActsOnBasisStatesAsExpected) {
  Vector zero(2), one(2), plus(2), minus(2);
  zero << 1, 0;
  one << 0, 1;
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  minus << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
  const double eta = 0.01;
  CostLedger ledger;
  auto src = copies_of(zero, 1U << 20);
  const auto ch = reflection_from_copies(src, eta, ledger);
  EXPECT_LE(trace_distance(ch.apply(pure(one)), pure(one)), eta);
  EXPECT_LE(trace_distance(ch.apply(pure(plus)), pure(minus)), eta);
  // Twice is close to the identity.
  EXPECT_LE(channel_distance(compose(ch, ch), QuantumChannel::identity(2)), 2 * eta);
}

TEST(Reflection, CopyAccounting) {
  const double gamma = 0.25;
  const double eta = gamma / 100;
  EXPECT_EQ(lmr_reflection_steps(eta),
            static_cast<std::uint64_t>(std::ceil(kLmrConstant * kPi * kPi * 400)));
  EXPECT_THROW(lmr_reflection_steps(0.0), std::invalid_argument);
  EXPECT_THROW(lmr_reflection_steps(0.5), std::invalid_argument);
  Vector zero(2);
  zero << 1, 0;
  CostLedger ledger;
  auto src = copies_of(zero, 5);
  EXPECT_THROW(lmr_exponentiate(src, kPi, 6, ledger), BudgetExhausted);
  EXPECT_EQ(ledger.advice_copies_consumed(), 0U);
}

TEST(ControlledLmr, MatchesControlledExactReflectionInTheLimit) {
  // Target qubit, two-level control register; reflect where the control is 0.
  Rng rng(9);
  const Vector v = testing::random_unit_vector(2, rng);
  RegisterLayout layout({{"sys", 2}, {"ctl", 2}});
  const Matrix r = Matrix::Identity(2, 2) - 2 * pure(v);
  Matrix exact = Matrix::Identity(4, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) exact(2 * i, 2 * j) = r(i, j);  // ctl digit 0
  }
  const Matrix rho0 = random_density(4, rng);
  DensityState rho(layout, rho0);
  apply_controlled_lmr(rho, 0, pure(v), kPi, 20000, {true, false});
  rho.check_invariants(1e-9, 1e-8);
  EXPECT_LT(trace_distance(rho.matrix(), exact * rho0 * exact.adjoint()), 1e-3);
}

TEST(ControlledLmr, AllActiveEqualsTheUncontrolledChannel) {
  Rng rng(10);
  const Vector v = testing::random_unit_vector(2, rng);
  RegisterLayout layout({{"a", 3}, {"sys", 2}});
  const Matrix rho0 = random_density(6, rng);
  DensityState rho(layout, rho0);
  apply_controlled_lmr(rho, 1, pure(v), kPi, 50, std::vector<bool>(3, true));
  // Reference: lift the system channel to the joint space via the literal
  // superoperator on I_3 (x) sys.
  const auto ch = partial_swap_channel(pure(v), -kPi / 50).power(50);
  Matrix expect(6, 6);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      Matrix e = Matrix::Zero(2, 2);
      // Block (i/2, j/2) of rho0 transported through the channel.
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) e(a, b) = rho0(2 * (i / 2) + a, 2 * (j / 2) + b);
      }
      expect(i, j) = ch.apply(e)(i % 2, j % 2);
    }
  }
  EXPECT_LT(max_abs_diff(rho.matrix(), expect), 1e-12);
}

}  // namespace
}  // namespace phaseforge
