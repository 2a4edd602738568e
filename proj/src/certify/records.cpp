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

#include "phaseforge/certify/records.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace phaseforge {

Records& Records::add(const std::string& key, const std::string& value) {
  if (key.empty() || key.find_first_of("=\n") != std::string::npos) {
    throw std::invalid_argument("bad record key '" + key + "'");
  }
  if (value.find('\n') != std::string::npos) throw std::invalid_argument("record value spans lines");
  items_.emplace_back(key, value);
  return *this;
}

Records& Records::add(const std::string& key, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return add(key, std::string(buf));
}

Records& Records::add(const std::string& key, std::uint64_t value) {
  return add(key, std::to_string(value));
}

Records& Records::add(const std::string& key, bool value) {
  return add(key, std::string(value ? "true" : "false"));
}

Records& Records::append(const Records& other) {
  items_.insert(items_.end(), other.items_.begin(), other.items_.end());
  return *this;
}

const std::string& Records::get(const std::string& key) const {
  for (const auto& [k, v] : items_) {
    if (k == key) return v;
  }
  throw std::out_of_range("no record '" + key + "'");
}

std::string Records::str() const {
  std::string out;
  for (const auto& [k, v] : items_) out += k + "=" + v + "\n";
  return out;
}

Records parse_records(const std::string& text) {
  Records r;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("record line without '=': " + line);
    r.add(line.substr(0, eq), line.substr(eq + 1));
  }
  return r;
}

}  // namespace phaseforge
