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

#include "phaseforge/certify/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "phaseforge/maxqpe/drivers.hpp"
#include "phaseforge/qpe/qft.hpp"
#include "phaseforge/sim/instances.hpp"

namespace phaseforge {

namespace {

Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

PureState initial_state(const RegisterLayout& layout, std::size_t n, std::size_t j, double gamma,
                        std::uint64_t t) {
  const Vector advice = tensor_power(fror_advice_state(n, j, gamma), t).amplitudes();
  const std::size_t rest = layout.dim() / static_cast<std::size_t>(advice.size());
  Vector amps = Vector::Zero(ix(layout.dim()));
  for (Eigen::Index i = 0; i < advice.size(); ++i) amps(i * ix(rest)) = advice(i);
  return PureState(layout, std::move(amps));
}

double progress(const std::vector<PureState>& states, std::vector<double>* overlaps = nullptr) {
  double p = 0;
  for (std::size_t j = 1; j < states.size(); ++j) {
    const double o = std::abs(states[0].inner(states[j]));
    if (overlaps) overlaps->push_back(o);
    p += o;
  }
  return p;
}

}  // namespace

void ProgressTrace::check_invariants() const {
  if (values.size() != per_step_drops.size() + 1) {
    throw InvariantViolation("progress trace needs one more value than drops");
  }
  for (std::size_t i = 0; i < per_step_drops.size(); ++i) {
    if (std::abs(per_step_drops[i] - (values[i] - values[i + 1])) > 1e-12) {
      throw InvariantViolation("drop " + std::to_string(i) + " does not match its values");
    }
  }
}

double initial_progress(std::size_t n, double gamma, std::uint64_t t_advice) {
  return static_cast<double>(n - 1) * std::pow(1 - gamma * gamma, static_cast<double>(t_advice) / 2);
}

double progress_step_bound(std::size_t n, double angle) {
  return 2 * std::abs(std::sin(angle / 2)) * std::sqrt(static_cast<double>(n - 1));
}

ProgressTrace adversary_progress(const OracleCircuit& alg, std::size_t n, double angle,
                                 double gamma, std::uint64_t t_advice, std::uint64_t cost_cap) {
  if (n < 2) throw std::invalid_argument("the family needs N >= 2");
  if (alg.has_measurement()) {
    throw std::invalid_argument("intermediate measurement is not supported in certification mode");
  }
  if (alg.cost() > cost_cap) {
    throw std::length_error("algorithm cost " + std::to_string(alg.cost()) + " exceeds the cap");
  }
  const RegisterLayout& layout = alg.layout();
  if (layout.size() < t_advice) throw DimensionError("layout has fewer registers than advice copies");
  for (std::uint64_t i = 0; i < t_advice; ++i) {
    if (layout[i].dim != n) throw DimensionError("advice registers must have dimension N");
  }

  std::vector<BlackBoxUnitary> inputs;
  std::vector<PureState> states;
  inputs.push_back(BlackBoxUnitary::diagonal(std::vector<double>(n, 0.0), "identity"));
  states.push_back(initial_state(layout, n, 0, gamma, t_advice));
  for (std::size_t j = 1; j < n; ++j) {
    inputs.push_back(m_j_delta(n, j, angle));
    states.push_back(initial_state(layout, n, j, gamma, t_advice));
  }

  ProgressTrace trace;
  trace.n = n;
  trace.angle = angle;
  trace.gamma = gamma;
  trace.t_advice = t_advice;
  CostLedger scratch;
  for (std::size_t s = 0; s < alg.steps().size(); ++s) {
    if (alg.steps()[s].kind == OracleCircuit::Kind::kOracle) trace.values.push_back(progress(states));
    for (std::size_t j = 0; j < n; ++j) alg.apply_step(s, states[j], inputs[j], scratch);
  }
  trace.values.push_back(progress(states, &trace.final_overlaps));
  for (std::size_t i = 0; i + 1 < trace.values.size(); ++i) {
    trace.per_step_drops.push_back(trace.values[i] - trace.values[i + 1]);
  }
  return trace;
}

Records StepBoundReport::records() const {
  Records r;
  r.add("step_bound", bound)
      .add("max_drop", max_drop)
      .add("slack", slack)
      .add("violations", static_cast<std::uint64_t>(violations))
      .add("passed", passed);
  return r;
}

StepBoundReport verify_step_bound(const ProgressTrace& trace) {
  StepBoundReport rep;
  rep.bound = progress_step_bound(trace.n, trace.angle);
  for (double d : trace.per_step_drops) {
    rep.max_drop = std::max(rep.max_drop, d);
    if (d > rep.bound + 1e-9) ++rep.violations;
  }
  rep.slack = rep.bound - rep.max_drop;
  rep.passed = rep.violations == 0;
  return rep;
}

OracleCircuit adviceless_transcript(std::size_t n, unsigned bits, std::size_t rounds) {
  if (bits < 1 || bits > 12) throw std::invalid_argument("estimate bits must lie in 1..12");
  const std::size_t grid = std::size_t{1} << bits;
  const RegisterLayout layout({{"system", n}, {"mirror", n}, {"estimate", grid}});

  OracleCircuit v(layout);
  v.gate(maximally_entangled_preparer(n).preparer_body().unitary, 0, 2);
  v.gate(qft(bits), 2);
  for (unsigned b = 0; b < bits; ++b) v.oracle_power(0, std::uint64_t{1} << b, false, QubitRef{2, b});
  v.gate(qft(bits).adjoint(), 2);

  OracleCircuit out = v;
  const OracleCircuit v_inv = v.inverse();
  for (std::size_t i = 0; i < rounds; ++i) {
    out.phase([layout](std::size_t x) { return Complex(layout.digit(x, 2) > 0 ? -1.0 : 1.0); });
    out.append(v_inv);
    out.phase([](std::size_t x) { return Complex(x == 0 ? -1.0 : 1.0); });
    out.append(v);
  }
  return out;
}

OracleCircuit targeted_drop_circuit(std::size_t n) {
  if (n < 2) throw std::invalid_argument("the family needs N >= 2");
  Vector u = Vector::Zero(ix(n));
  for (std::size_t k = 1; k < n; ++k) u(ix(k)) = 1 / std::sqrt(static_cast<double>(n - 1));
  Vector v = Vector::Unit(ix(n), 0) - u;
  v /= v.norm();
  const Matrix householder = Matrix::Identity(ix(n), ix(n)) - 2.0 * v * v.adjoint();
  OracleCircuit c(RegisterLayout({{"advice", n}}));
  c.gate(householder, 0);
  c.oracle(0);
  return c;
}

}  // namespace phaseforge
