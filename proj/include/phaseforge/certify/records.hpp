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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace phaseforge {

/// Ordered key=value lines. Doubles are written with 17 significant digits
/// so a record round-trips exactly.
class Records {
 public:
  Records& add(const std::string& key, const std::string& value);
  Records& add(const std::string& key, const char* value) { return add(key, std::string(value)); }
  Records& add(const std::string& key, double value);
  Records& add(const std::string& key, std::uint64_t value);
  Records& add(const std::string& key, bool value);
  Records& append(const Records& other);

  const std::vector<std::pair<std::string, std::string>>& items() const { return items_; }
  /// Value of the first entry with this key; throws std::out_of_range if none.
  const std::string& get(const std::string& key) const;
  /// One "key=value" line per entry, each ending in '\n'.
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

/// Parses the output of Records::str. Blank lines and lines starting with
/// '#' are skipped; other lines without '=' throw std::invalid_argument.
Records parse_records(const std::string& text);

}  // namespace phaseforge
