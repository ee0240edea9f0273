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

// Scoped hierarchical profiler.
//
// A Session owns one timing tree and is confined to the thread that activates
// it. While a session is active on the current thread, every Scope (or
// tc::profile::scoped call) adds its elapsed time to a node named after it
// under the enclosing scope. Without an active session scopes cost one
// thread-local load and record nothing.
//
//   tc::profile::Session session;
//   {
//     tc::profile::Session::Activation on(session);
//     tc::profile::scoped("step", [&] { ... });
//   }
//   std::cout << tc::profile::format_report(session.tree());

#pragma once

#include <chrono>
#include <cstdint>
#include <exception>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tc::profile {

struct ProfileNode {
  std::string name;
  std::int64_t inclusive_ns = 0;
  std::int64_t call_count = 0;
  std::vector<ProfileNode> children;  // in order of first entry

  const ProfileNode* child(std::string_view child_name) const;
  std::int64_t children_ns() const;
};

class Session {
 public:
  using Clock = std::chrono::steady_clock;

  Session();
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  /// Makes `session` the current session of this thread until destroyed.
  class Activation {
   public:
    explicit Activation(Session& session);
    ~Activation();
    Activation(const Activation&) = delete;
    Activation& operator=(const Activation&) = delete;

   private:
    Session* previous_;
  };

  static Session* current();

  /// Snapshot of the tree. The root is unnamed; its inclusive time is the
  /// sum of its children and its call count is 1.
  ProfileNode tree() const;

  /// Names of the scopes currently open, outermost first.
  std::vector<std::string> open_path() const;

  /// Scope path that was open when an exception first unwound through a
  /// scope of this session; empty if none did.
  const std::vector<std::string>& fault_path() const { return fault_path_; }

  bool empty() const { return root_.children.empty(); }

 private:
  friend class Scope;

  ProfileNode* enter(std::string_view name);
  void leave(ProfileNode* node, std::int64_t elapsed_ns, bool unwinding);

  ProfileNode root_;
  std::vector<ProfileNode*> stack_;
  std::vector<std::string> fault_path_;
};

/// RAII timer. Records into the current thread's session, if any.
class Scope {
 public:
  explicit Scope(std::string_view name);
  ~Scope();
  Scope(const Scope&) = delete;
  Scope& operator=(const Scope&) = delete;

 private:
  Session* session_;
  ProfileNode* node_ = nullptr;
  Session::Clock::time_point start_;
  int uncaught_at_entry_ = 0;
};

/// Runs `body` inside a Scope named `name` and returns its result unchanged.
/// Exceptions propagate; the elapsed time is still recorded.
template <typename Body>
decltype(auto) scoped(std::string_view name, Body&& body) {
  Scope scope(name);
  return std::forward<Body>(body)();
}

struct ReportRow {
  int depth = 0;
  std::string name;
  std::int64_t inclusive_ns = 0;
  double percent_of_parent = 0;
  std::int64_t call_count = 0;  // 0 for self rows
  bool is_self = false;
};

/// Depth-first rows for every node below the root. A "(self)" row follows a
/// node's children when they do not cover the node's whole time, so at every
/// level the sibling percentages plus the self row sum to 100.
std::vector<ReportRow> report_rows(const ProfileNode& root);

/// Fixed-width table, two spaces of indent per depth, with a footer naming
/// the clock resolution. "no samples" for an empty tree.
std::string format_report(const ProfileNode& root);

/// One `path;inclusive_ns;count` line per node, path components joined by '/'.
std::string format_machine_readable(const ProfileNode& root);

/// Adds `source` into `target`, matching children by name (used to combine
/// per-thread sessions).
void merge_into(ProfileNode& target, const ProfileNode& source);

/// Tick period of Session::Clock in nanoseconds.
double clock_resolution_ns();

}  // namespace tc::profile
