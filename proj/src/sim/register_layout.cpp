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

#include "phaseforge/sim/register_layout.hpp"

#include <bit>

#include "phaseforge/sim/types.hpp"

namespace phaseforge {

RegisterLayout::RegisterLayout(std::vector<Register> registers)
    : registers_(std::move(registers)), strides_(registers_.size()) {
  std::size_t stride = 1;
  for (std::size_t i = registers_.size(); i-- > 0;) {
    if (registers_[i].dim == 0) {
      throw DimensionError("register '" + registers_[i].name + "' has dimension 0");
    }
    strides_[i] = stride;
    stride *= registers_[i].dim;
  }
  dim_ = stride;
}

std::size_t RegisterLayout::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    if (registers_[i].name == name) return i;
  }
  throw DimensionError("no register named '" + std::string(name) + "'");
}

bool RegisterLayout::contains(std::string_view name) const {
  for (const auto& r : registers_) {
    if (r.name == name) return true;
  }
  return false;
}

std::size_t RegisterLayout::group_dim(std::size_t first, std::size_t count) const {
  if (count == 0 || first + count > registers_.size()) {
    throw DimensionError("register group out of range");
  }
  std::size_t d = 1;
  for (std::size_t i = first; i < first + count; ++i) d *= registers_[i].dim;
  return d;
}

void RegisterLayout::check_qubit(QubitRef q) const {
  if (q.reg >= registers_.size()) throw DimensionError("control register out of range");
  const std::size_t d = registers_[q.reg].dim;
  if (!std::has_single_bit(d) || (std::size_t{1} << q.bit) >= d) {
    throw DimensionError("control must be a qubit of a power-of-two register");
  }
}

RegisterLayout RegisterLayout::appended(Register r) const {
  auto regs = registers_;
  regs.push_back(std::move(r));
  return RegisterLayout(std::move(regs));
}

RegisterLayout RegisterLayout::concatenated(const RegisterLayout& other) const {
  auto regs = registers_;
  regs.insert(regs.end(), other.registers_.begin(), other.registers_.end());
  return RegisterLayout(std::move(regs));
}

bool RegisterLayout::operator==(const RegisterLayout& other) const {
  if (registers_.size() != other.registers_.size()) return false;
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    if (registers_[i].dim != other.registers_[i].dim ||
        registers_[i].name != other.registers_[i].name) {
      return false;
    }
  }
  return true;
}

}  // namespace phaseforge
