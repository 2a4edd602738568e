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

#include "phaseforge/qpe/qft.hpp"

#include <fftw3.h>

#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <string>

namespace phaseforge {

namespace {

void check_qubits(unsigned m) {
  if (m < 1 || m > kMaxQftQubits) {
    throw std::out_of_range("QFT supports 1..12 qubits, got " + std::to_string(m));
  }
}

Matrix build_qft(unsigned m) {
  const std::size_t n = std::size_t{1} << m;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Matrix f(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      // Reduce jk mod n first so the angle stays exact for large n.
      const std::size_t e = (j * k) % n;
      f(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
          std::polar(scale, kTwoPi * static_cast<double>(e) / static_cast<double>(n));
    }
  }
  return f;
}

Matrix build_hadamard_all(unsigned m) {
  const std::size_t n = std::size_t{1} << m;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Matrix h(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const double sign = (std::popcount(j & k) & 1) ? -1.0 : 1.0;
      h(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = sign * scale;
    }
  }
  return h;
}

template <Matrix (*Build)(unsigned)>
const Matrix& cached(unsigned m) {
  static std::array<std::optional<Matrix>, kMaxQftQubits + 1> cache;
  static std::mutex mu;
  check_qubits(m);
  std::lock_guard lock(mu);
  if (!cache[m]) cache[m] = Build(m);
  return *cache[m];
}

// Below this size a dense product is cheaper than an FFT call.
constexpr std::size_t kFftThreshold = 32;

struct FftPlan {
  fftw_plan plan;
  fftw_complex* buf;
};

// FFTW planning is not thread-safe, execution on distinct buffers is.
// Plans are created once per (size, direction) and never destroyed.
const FftPlan& fft_plan(std::size_t n, int sign) {
  static std::map<std::pair<std::size_t, int>, FftPlan> plans;
  static std::mutex mu;
  std::lock_guard lock(mu);
  auto it = plans.find({n, sign});
  if (it == plans.end()) {
    auto* buf = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    it = plans.emplace(std::make_pair(n, sign), FftPlan{p, buf}).first;
  }
  return it->second;
}

}  // namespace

void apply_qft(PureState& state, std::size_t reg, bool inverse) {
  const std::size_t d = state.layout()[reg].dim;
  if (!std::has_single_bit(d) || d < 2) throw DimensionError("QFT register must have dimension 2^m");
  const auto m = static_cast<unsigned>(std::countr_zero(d));
  if (d < kFftThreshold) {
    state.apply(inverse ? Matrix(qft(m).adjoint()) : qft(m), reg);
    return;
  }
  // omega = e^{+2 pi i / d} is FFTW's backward sign.
  const FftPlan& plan = fft_plan(d, inverse ? FFTW_FORWARD : FFTW_BACKWARD);
  const std::size_t s = state.layout().stride(reg);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  Complex* a = state.mutable_amplitudes().data();
  std::vector<Complex> buf(d);
  auto* fbuf = reinterpret_cast<fftw_complex*>(buf.data());
  for (std::size_t off = 0; off < state.dim(); off += d * s) {
    for (std::size_t inner = 0; inner < s; ++inner) {
      for (std::size_t k = 0; k < d; ++k) buf[k] = a[off + inner + k * s];
      fftw_execute_dft(plan.plan, fbuf, fbuf);
      for (std::size_t k = 0; k < d; ++k) a[off + inner + k * s] = buf[k] * scale;
    }
  }
}

const Matrix& qft(unsigned m) { return cached<build_qft>(m); }

const Matrix& hadamard_all(unsigned m) { return cached<build_hadamard_all>(m); }

Matrix hadamard() { return hadamard_all(1); }

Matrix pauli_x() {
  Matrix x = Matrix::Zero(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  return x;
}

}  // namespace phaseforge
