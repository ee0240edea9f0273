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
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "tcore/common/error.h"

namespace tc::serial {

using Bytes = std::vector<std::uint8_t>;

enum class TypeCode : std::uint8_t {
  u8 = 1,
  i64 = 2,
  f64 = 3,
  f64_array = 4,
  bytes = 5,
  nested = 6,
};

enum class ErrorKind {
  not_a_snapshot,
  unsupported_version,
  corrupt_payload,
  unexpected_end,
  malformed,
  unsupported_field,
};

class SerializationError : public Error {
 public:
  SerializationError(ErrorKind kind, const std::string& message) : Error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

struct Field;

/// Ordered list of uniquely keyed fields. Field order is declaration order
/// and is preserved by encoding.
class Record {
 public:
  Record() = default;

  /// Appends a field; throws if `key` is already present at this level.
  template <typename T>
  Record& set(std::string key, const T& value);
  Record& set_field(Field field);

  bool contains(std::string_view key) const;
  const Field* find(std::string_view key) const;
  const std::vector<Field>& fields() const { return fields_; }
  std::size_t size() const { return fields_.size(); }
  bool empty() const { return fields_.empty(); }

  std::uint8_t get_u8(std::string_view key) const;
  std::int64_t get_i64(std::string_view key) const;
  double get_f64(std::string_view key) const;
  const std::vector<double>& get_f64_array(std::string_view key) const;
  const Bytes& get_bytes(std::string_view key) const;
  std::string get_string(std::string_view key) const;
  const Record& get_record(std::string_view key) const;

  /// Bitwise equality: doubles compare by their IEEE-754 bit patterns.
  friend bool operator==(const Record& a, const Record& b);

 private:
  void append(Field field);

  std::vector<Field> fields_;
};

using Value = std::variant<std::uint8_t, std::int64_t, double, std::vector<double>, Bytes, Record>;

struct Field {
  std::string key;
  Value value;
};

TypeCode type_code(const Value& value);

template <typename T>
Record& Record::set(std::string key, const T& value) {
  if constexpr (std::is_same_v<T, bool>) {
    append({std::move(key), Value(static_cast<std::uint8_t>(value ? 1 : 0))});
  } else if constexpr (std::is_same_v<T, std::uint8_t>) {
    append({std::move(key), Value(value)});
  } else if constexpr (std::is_integral_v<T> && std::is_signed_v<T>) {
    append({std::move(key), Value(static_cast<std::int64_t>(value))});
  } else if constexpr (std::is_integral_v<T>) {
    if (value > static_cast<std::make_unsigned_t<std::int64_t>>(
                    std::numeric_limits<std::int64_t>::max())) {
      throw SerializationError(ErrorKind::unsupported_field,
                               "field '" + key + "': unsigned value does not fit in i64");
    }
    append({std::move(key), Value(static_cast<std::int64_t>(value))});
  } else if constexpr (std::is_same_v<T, double>) {
    append({std::move(key), Value(value)});
  } else if constexpr (std::is_same_v<T, std::vector<double>>) {
    append({std::move(key), Value(value)});
  } else if constexpr (std::is_same_v<T, Bytes>) {
    append({std::move(key), Value(value)});
  } else if constexpr (std::is_convertible_v<const T&, std::string_view>) {
    const std::string_view s(value);
    append({std::move(key), Value(Bytes(s.begin(), s.end()))});
  } else if constexpr (std::is_same_v<T, Record>) {
    append({std::move(key), Value(value)});
  } else {
    static_assert(sizeof(T) == 0, "type has no tagged wire representation");
  }
  return *this;
}

}  // namespace tc::serial
