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

#include "tcore/diagnostics/log.h"

namespace tc {

std::size_t count_placeholders(std::string_view tmpl) {
  std::size_t fields = 0;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    const char c = tmpl[i];
    if (c == '{') {
      if (i + 1 < tmpl.size() && tmpl[i + 1] == '{') {
        ++i;
        continue;
      }
      const auto close = tmpl.find('}', i + 1);
      if (close == std::string_view::npos) {
        throw FormatError(fmt::format("template \"{}\": unmatched '{{' at {}", tmpl, i));
      }
      ++fields;
      i = close;
    } else if (c == '}') {
      if (i + 1 < tmpl.size() && tmpl[i + 1] == '}') {
        ++i;
        continue;
      }
      throw FormatError(fmt::format("template \"{}\": unmatched '}}' at {}", tmpl, i));
    }
  }
  return fields;
}

namespace log {

std::string_view level_name(Level level) {
  switch (level) {
    case Level::trace: return "trace";
    case Level::debug: return "debug";
    case Level::info: return "info";
    case Level::warn: return "warn";
    case Level::error: return "error";
  }
  return "?";
}

void StreamSink::write(const LogRecord& record) {
  std::lock_guard lock(mutex_);
  out_ << '[' << level_name(record.level) << "] " << record.message << '\n';
}

void MemorySink::write(const LogRecord& record) {
  std::lock_guard lock(mutex_);
  records_.push_back(record);
}

std::vector<LogRecord> MemorySink::records() const {
  std::lock_guard lock(mutex_);
  return records_;
}

void MemorySink::clear() {
  std::lock_guard lock(mutex_);
  records_.clear();
}

void Logger::emit(Level level, std::string message) {
  LogRecord record{level, std::move(message), std::chrono::steady_clock::now(),
                   std::chrono::system_clock::now()};
  for (const auto& sink : sinks_) sink->write(record);
}

}  // namespace log
}  // namespace tc
