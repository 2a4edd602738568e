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

#include "phaseforge/sim/pure_state.hpp"
#include "phaseforge/sim/types.hpp"

namespace phaseforge {

inline constexpr unsigned kMaxQftQubits = 12;

/// Quantum Fourier transform on m qubits: entries omega^{jk} / sqrt(2^m).
/// Results are cached per m; 1 <= m <= 12.
const Matrix& qft(unsigned m);

/// Hadamard on each of m qubits.
const Matrix& hadamard_all(unsigned m);

/// Applies the QFT (or its inverse) to register `reg`, whose dimension must
/// be a power of two. Large registers go through FFTW instead of a dense
/// matrix product; the result is the same unitary.
void apply_qft(PureState& state, std::size_t reg, bool inverse);

/// Single-qubit gates.
Matrix hadamard();
Matrix pauli_x();

}  // namespace phaseforge
