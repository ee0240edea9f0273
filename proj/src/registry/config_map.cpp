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

#include "tcore/registry/config_map.h"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "tcore/common/error.h"

namespace tc {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool valid_key(std::string_view key) {
  if (key.empty()) return false;
  return std::all_of(key.begin(), key.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '.' || c == '-';
  });
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::string_view digits = s;
  if (digits.front() == '+') digits.remove_prefix(1);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) return std::nullopt;
  return v;
}

std::optional<double> parse_float(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::string_view body = s;
  if (body.front() == '+') body.remove_prefix(1);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
  if (ec != std::errc() || ptr != body.data() + body.size()) return std::nullopt;
  return v;
}

std::optional<std::string> parse_quoted(std::string_view s) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"') return std::nullopt;
  std::string out;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    char c = s[i];
    if (c == '\\') {
      if (i + 2 >= s.size()) return std::nullopt;
      c = s[++i];
      if (c == 'n') c = '\n';
      else if (c != '\\' && c != '"') return std::nullopt;
    } else if (c == '"') {
      return std::nullopt;
    }
    out.push_back(c);
  }
  return out;
}

// Strips a trailing "# comment" that is not inside quotes.
std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '\\' && quoted) {
      ++i;
    } else if (c == '"') {
      quoted = !quoted;
    } else if (c == '#' && !quoted) {
      return line.substr(0, i);
    }
  }
  return line;
}

}  // namespace

std::string_view type_name(const ConfigValue& value) {
  switch (value.index()) {
    case 0: return "bool";
    case 1: return "integer";
    case 2: return "float";
    default: return "string";
  }
}

std::string to_text(const ConfigValue& value) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return fmt::format("{}", v);
        } else if constexpr (std::is_same_v<T, double>) {
          std::string s = fmt::format("{}", v);
          if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
          return s;
        } else {
          std::string out = "\"";
          for (char c : v) {
            if (c == '"' || c == '\\') out.push_back('\\');
            if (c == '\n') {
              out += "\\n";
              continue;
            }
            out.push_back(c);
          }
          out.push_back('"');
          return out;
        }
      },
      value);
}

ConfigValue parse_value(std::string_view text) {
  const auto s = trim(text);
  if (s == "true") return true;
  if (s == "false") return false;
  if (auto i = parse_int(s)) return *i;
  if (auto f = parse_float(s)) return *f;
  if (auto q = parse_quoted(s)) return *q;
  return std::string(s);
}

void ConfigMap::set(std::string key, ConfigValue value) {
  if (!valid_key(key)) throw ConfigError(fmt::format("invalid config key '{}'", key));
  values_.insert_or_assign(std::move(key), std::move(value));
}

bool ConfigMap::contains(std::string_view key) const { return values_.find(key) != values_.end(); }

bool ConfigMap::erase(std::string_view key) {
  auto it = values_.find(key);
  if (it == values_.end()) return false;
  values_.erase(it);
  return true;
}

std::optional<ConfigValue> ConfigMap::find(std::string_view key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

const ConfigValue& ConfigMap::at(std::string_view key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(fmt::format("missing config key '{}'", key));
  return it->second;
}

namespace {

template <typename T>
const T& expect(std::string_view key, const ConfigValue& v, std::string_view wanted) {
  if (const T* p = std::get_if<T>(&v)) return *p;
  std::string hint;
  if (std::holds_alternative<std::int64_t>(v) && wanted == "float") {
    hint = " (write it with a decimal point, e.g. 1.0)";
  }
  auto article = [](std::string_view noun) { return noun.front() == 'i' ? "an" : "a"; };
  throw ConfigError(fmt::format("config key '{}' holds {} {} but {} {} is required{}", key,
                                article(type_name(v)), type_name(v), article(wanted), wanted,
                                hint));
}

}  // namespace

bool ConfigMap::get_bool(std::string_view key) const {
  return expect<bool>(key, at(key), "bool");
}
std::int64_t ConfigMap::get_int(std::string_view key) const {
  return expect<std::int64_t>(key, at(key), "integer");
}
double ConfigMap::get_float(std::string_view key) const {
  return expect<double>(key, at(key), "float");
}
std::string ConfigMap::get_string(std::string_view key) const {
  return expect<std::string>(key, at(key), "string");
}

bool ConfigMap::get_bool(std::string_view key, bool fallback) const {
  return contains(key) ? get_bool(key) : fallback;
}
std::int64_t ConfigMap::get_int(std::string_view key, std::int64_t fallback) const {
  return contains(key) ? get_int(key) : fallback;
}
double ConfigMap::get_float(std::string_view key, double fallback) const {
  return contains(key) ? get_float(key) : fallback;
}
std::string ConfigMap::get_string(std::string_view key, std::string fallback) const {
  return contains(key) ? get_string(key) : std::move(fallback);
}

void ConfigMap::merge(const ConfigMap& overrides) {
  for (const auto& [k, v] : overrides.values_) values_.insert_or_assign(k, v);
}

std::vector<std::string> ConfigMap::keys() const {
  std::vector<std::string> out;
  out.reserve(values_.size());
  for (const auto& [k, v] : values_) out.push_back(k);
  return out;
}

void ConfigMap::require_known_keys(const std::vector<std::string>& allowed) const {
  for (const auto& [k, v] : values_) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      throw ConfigError(fmt::format("unknown config key '{}'", k));
    }
  }
}

std::string ConfigMap::to_text() const {
  std::string out;
  for (const auto& [k, v] : values_) out += fmt::format("{} = {}\n", k, tc::to_text(v));
  return out;
}

ConfigMap ConfigMap::parse(std::string_view text, std::string_view source) {
  ConfigMap map;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    const auto line = trim(strip_comment(raw));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("{}:{}: expected 'key = value'", source, line_no));
    }
    const auto key = trim(line.substr(0, eq));
    if (!valid_key(key)) {
      throw ConfigError(fmt::format("{}:{}: invalid config key '{}'", source, line_no, key));
    }
    if (map.contains(key)) {
      throw ConfigError(fmt::format("{}:{}: key '{}' set twice", source, line_no, key));
    }
    map.set(std::string(key), parse_value(line.substr(eq + 1)));
  }
  return map;
}

ConfigMap ConfigMap::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot read config file '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

std::pair<std::string, ConfigValue> ConfigMap::parse_assignment(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError(fmt::format("expected key=value, got '{}'", assignment));
  }
  const auto key = trim(assignment.substr(0, eq));
  if (!valid_key(key)) throw ConfigError(fmt::format("invalid config key '{}'", key));
  return {std::string(key), parse_value(assignment.substr(eq + 1))};
}

}  // namespace tc
