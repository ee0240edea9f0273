// Copyright 2026 The tcore Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tc {

using ConfigValue = std::variant<bool, std::int64_t, double, std::string>;

/// Name of the type held by `value`: "bool", "integer", "float" or "string".
std::string_view type_name(const ConfigValue& value);

/// Canonical text of one value. Floats always carry a '.' or exponent and
/// round-trip exactly; strings are double quoted.
std::string to_text(const ConfigValue& value);

/// Infers the type of a literal: true/false, decimal integer, float,
/// "quoted string" or bare string.
ConfigValue parse_value(std::string_view text);

/// Flat, key-sorted map of scalar settings. Nesting is expressed with dotted
/// keys ("solver.tolerance").
///
/// Typed getters never coerce: asking for a float when the key holds an
/// integer is a ConfigError naming the key.
///
/// Text form, one setting per line:
///
///     # comment
///     dt = 0.004
///     scheme = "apic"
class ConfigMap {
 public:
  ConfigMap() = default;

  void set(std::string key, ConfigValue value);
  bool contains(std::string_view key) const;
  bool erase(std::string_view key);
  std::optional<ConfigValue> find(std::string_view key) const;

  bool get_bool(std::string_view key) const;
  std::int64_t get_int(std::string_view key) const;
  double get_float(std::string_view key) const;
  std::string get_string(std::string_view key) const;

  bool get_bool(std::string_view key, bool fallback) const;
  std::int64_t get_int(std::string_view key, std::int64_t fallback) const;
  double get_float(std::string_view key, double fallback) const;
  std::string get_string(std::string_view key, std::string fallback) const;

  /// Copies every entry of `overrides` into this map; existing keys are replaced.
  void merge(const ConfigMap& overrides);

  std::vector<std::string> keys() const;
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  const std::map<std::string, ConfigValue, std::less<>>& entries() const { return values_; }

  /// Throws ConfigError naming the first key that is not in `allowed`.
  void require_known_keys(const std::vector<std::string>& allowed) const;

  std::string to_text() const;

  /// Parses the text form. `source` names the origin in error messages.
  static ConfigMap parse(std::string_view text, std::string_view source = "<config>");
  /// Reads and parses a file; IoError if it cannot be read.
  static ConfigMap load(const std::string& path);
  /// Parses a single "key=value" assignment as given to --set.
  static std::pair<std::string, ConfigValue> parse_assignment(std::string_view assignment);

  friend bool operator==(const ConfigMap&, const ConfigMap&) = default;

 private:
  const ConfigValue& at(std::string_view key) const;

  std::map<std::string, ConfigValue, std::less<>> values_;
};

}  // namespace tc
