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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace phaseforge {

struct Register {
  std::string name;
  std::size_t dim;
};

/// One qubit inside a register whose dimension is a power of two.
/// Bit 0 is the least significant bit of the register's basis index.
struct QubitRef {
  std::size_t reg;
  unsigned bit;
};

/// Ordered tensor-product layout. The first register is the most
/// significant digit of the joint basis index.
class RegisterLayout {
 public:
  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<Register> registers);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return registers_.size(); }
  const Register& operator[](std::size_t reg) const { return registers_.at(reg); }
  const std::vector<Register>& registers() const { return registers_; }

  std::size_t index_of(std::string_view name) const;
  bool contains(std::string_view name) const;

  /// Product of the dimensions of all registers after `reg`.
  std::size_t stride(std::size_t reg) const { return strides_.at(reg); }
  /// Combined dimension of registers [first, first + count).
  std::size_t group_dim(std::size_t first, std::size_t count) const;

  /// Digit of register `reg` in a joint basis index.
  std::size_t digit(std::size_t index, std::size_t reg) const {
    return (index / strides_[reg]) % registers_[reg].dim;
  }
  /// Joint index with the digit of `reg` replaced.
  std::size_t with_digit(std::size_t index, std::size_t reg, std::size_t value) const {
    return index + (value - digit(index, reg)) * strides_[reg];
  }
  bool qubit_set(std::size_t index, QubitRef q) const {
    return (digit(index, q.reg) >> q.bit) & 1U;
  }
  void check_qubit(QubitRef q) const;

  RegisterLayout appended(Register r) const;
  RegisterLayout concatenated(const RegisterLayout& other) const;

  bool operator==(const RegisterLayout& other) const;

 private:
  std::vector<Register> registers_;
  std::vector<std::size_t> strides_;
  std::size_t dim_ = 1;
};

}  // namespace phaseforge
