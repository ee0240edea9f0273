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

#include <chrono>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "tcore/diagnostics/format.h"

namespace tc::log {

enum class Level { trace = 0, debug, info, warn, error };

std::string_view level_name(Level level);

struct LogRecord {
  Level level = Level::info;
  std::string message;
  std::chrono::steady_clock::time_point monotonic;
  std::chrono::system_clock::time_point wall;
};

class Sink {
 public:
  virtual ~Sink() = default;
  virtual void write(const LogRecord& record) = 0;
};

/// Writes "[level] message" lines. Appends are serialized.
class StreamSink : public Sink {
 public:
  explicit StreamSink(std::ostream& out) : out_(out) {}
  void write(const LogRecord& record) override;

 private:
  std::mutex mutex_;
  std::ostream& out_;
};

/// Keeps records in memory, in emission order.
class MemorySink : public Sink {
 public:
  void write(const LogRecord& record) override;
  std::vector<LogRecord> records() const;
  void clear();

 private:
  mutable std::mutex mutex_;
  std::vector<LogRecord> records_;
};

class Logger {
 public:
  explicit Logger(Level threshold = Level::info) : threshold_(threshold) {}

  void add_sink(std::shared_ptr<Sink> sink) { sinks_.push_back(std::move(sink)); }
  void set_threshold(Level level) { threshold_ = level; }
  Level threshold() const { return threshold_; }
  bool enabled(Level level) const { return level >= threshold_; }

  /// Formats eagerly, so a bad template throws even when the level is
  /// filtered out.
  template <typename... Args>
  void log(Level level, std::string_view tmpl, const Args&... args) {
    std::string message = tc::format(tmpl, args...);
    if (enabled(level)) emit(level, std::move(message));
  }

  template <typename... Args>
  void trace(std::string_view tmpl, const Args&... args) { log(Level::trace, tmpl, args...); }
  template <typename... Args>
  void debug(std::string_view tmpl, const Args&... args) { log(Level::debug, tmpl, args...); }
  template <typename... Args>
  void info(std::string_view tmpl, const Args&... args) { log(Level::info, tmpl, args...); }
  template <typename... Args>
  void warn(std::string_view tmpl, const Args&... args) { log(Level::warn, tmpl, args...); }
  template <typename... Args>
  void error(std::string_view tmpl, const Args&... args) { log(Level::error, tmpl, args...); }

 private:
  void emit(Level level, std::string message);

  Level threshold_;
  std::vector<std::shared_ptr<Sink>> sinks_;
};

}  // namespace tc::log
