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

#include <fmt/format.h>

#include <string>
#include <string_view>
#include <utility>

#include "tcore/common/error.h"

namespace tc {

/// Number of replacement fields in `tmpl`. "{{" and "}}" are literal braces;
/// an unmatched brace throws FormatError.
std::size_t count_placeholders(std::string_view tmpl);

/// Replaces each "{}" with the text form of the matching argument. Throws
/// FormatError when the placeholder and argument counts differ.
template <typename... Args>
std::string format(std::string_view tmpl, const Args&... args) {
  const std::size_t fields = count_placeholders(tmpl);
  if (fields != sizeof...(Args)) {
    throw FormatError(fmt::format("template \"{}\" has {} placeholder(s) but {} argument(s)", tmpl,
                                  fields, sizeof...(Args)));
  }
  try {
    return fmt::vformat(tmpl, fmt::make_format_args(args...));
  } catch (const fmt::format_error& e) {
    throw FormatError(fmt::format("template \"{}\": {}", tmpl, e.what()));
  }
}

}  // namespace tc
