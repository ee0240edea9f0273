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

#include "tcore/diagnostics/profiler.h"

#include <fmt/format.h>

#include <algorithm>

namespace tc::profile {
namespace {

thread_local Session* current_session = nullptr;

}  // namespace

const ProfileNode* ProfileNode::child(std::string_view child_name) const {
  for (const auto& c : children) {
    if (c.name == child_name) return &c;
  }
  return nullptr;
}

std::int64_t ProfileNode::children_ns() const {
  std::int64_t sum = 0;
  for (const auto& c : children) sum += c.inclusive_ns;
  return sum;
}

Session::Session() { root_.call_count = 1; }

Session::Activation::Activation(Session& session) : previous_(current_session) {
  current_session = &session;
}

Session::Activation::~Activation() { current_session = previous_; }

Session* Session::current() { return current_session; }

ProfileNode Session::tree() const {
  ProfileNode copy = root_;
  copy.inclusive_ns = copy.children_ns();
  return copy;
}

std::vector<std::string> Session::open_path() const {
  std::vector<std::string> path;
  for (const auto* n : stack_) path.push_back(n->name);
  return path;
}

// Only the innermost node can gain children, so pointers held in stack_
// stay valid: a parent's children vector never grows while a child is open.
ProfileNode* Session::enter(std::string_view name) {
  ProfileNode& parent = stack_.empty() ? root_ : *stack_.back();
  auto it = std::find_if(parent.children.begin(), parent.children.end(),
                         [&](const ProfileNode& c) { return c.name == name; });
  if (it == parent.children.end()) {
    parent.children.push_back(ProfileNode{std::string(name), 0, 0, {}});
    it = std::prev(parent.children.end());
  }
  stack_.push_back(&*it);
  return &*it;
}

void Session::leave(ProfileNode* node, std::int64_t elapsed_ns, bool unwinding) {
  if (unwinding && fault_path_.empty()) fault_path_ = open_path();
  node->inclusive_ns += elapsed_ns;
  node->call_count += 1;
  if (!stack_.empty() && stack_.back() == node) stack_.pop_back();
}

Scope::Scope(std::string_view name) : session_(Session::current()) {
  if (session_ == nullptr) return;
  uncaught_at_entry_ = std::uncaught_exceptions();
  node_ = session_->enter(name);
  start_ = Session::Clock::now();
}

Scope::~Scope() {
  if (session_ == nullptr) return;
  const auto elapsed = Session::Clock::now() - start_;
  const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count();
  session_->leave(node_, ns, std::uncaught_exceptions() > uncaught_at_entry_);
}

namespace {

void collect_rows(const ProfileNode& node, int depth, std::vector<ReportRow>& rows) {
  const std::int64_t parent_ns = node.inclusive_ns;
  auto percent = [&](std::int64_t ns) {
    return parent_ns > 0 ? 100.0 * static_cast<double>(ns) / static_cast<double>(parent_ns) : 0.0;
  };
  for (const auto& c : node.children) {
    rows.push_back({depth, c.name, c.inclusive_ns, percent(c.inclusive_ns), c.call_count, false});
    collect_rows(c, depth + 1, rows);
  }
  const std::int64_t self_ns = parent_ns - node.children_ns();
  if (!node.children.empty() && self_ns > 0) {
    rows.push_back({depth, "(self)", self_ns, percent(self_ns), 0, true});
  }
}

void collect_paths(const ProfileNode& node, const std::string& prefix, std::string& out) {
  for (const auto& c : node.children) {
    const std::string path = prefix.empty() ? c.name : prefix + "/" + c.name;
    out += fmt::format("{};{};{}\n", path, c.inclusive_ns, c.call_count);
    collect_paths(c, path, out);
  }
}

void merge_children(ProfileNode& target, const ProfileNode& source) {
  for (const auto& sc : source.children) {
    auto it = std::find_if(target.children.begin(), target.children.end(),
                           [&](const ProfileNode& c) { return c.name == sc.name; });
    if (it == target.children.end()) {
      target.children.push_back(sc);
    } else {
      merge_into(*it, sc);
    }
  }
}

}  // namespace

std::vector<ReportRow> report_rows(const ProfileNode& root) {
  ProfileNode top = root;
  top.inclusive_ns = std::max(root.inclusive_ns, root.children_ns());
  std::vector<ReportRow> rows;
  collect_rows(top, 0, rows);
  return rows;
}

std::string format_report(const ProfileNode& root) {
  const auto rows = report_rows(root);
  if (rows.empty()) return "no samples\n";

  std::size_t name_width = 4;
  for (const auto& r : rows) {
    name_width = std::max(name_width, 2 * static_cast<std::size_t>(r.depth) + r.name.size());
  }
  std::string out = fmt::format("{:<{}}  {:>12}  {:>7}  {:>8}\n", "name", name_width, "time (ms)",
                                "%", "calls");
  for (const auto& r : rows) {
    const std::string label = std::string(2 * static_cast<std::size_t>(r.depth), ' ') + r.name;
    const std::string calls = r.is_self ? std::string() : fmt::format("{}", r.call_count);
    out += fmt::format("{:<{}}  {:>12.3f}  {:>6.2f}%  {:>8}\n", label, name_width,
                       static_cast<double>(r.inclusive_ns) * 1e-6, r.percent_of_parent, calls);
  }
  out += fmt::format("inclusive times; steady clock resolution {} ns\n", clock_resolution_ns());
  return out;
}

std::string format_machine_readable(const ProfileNode& root) {
  std::string out;
  collect_paths(root, "", out);
  return out;
}

void merge_into(ProfileNode& target, const ProfileNode& source) {
  target.inclusive_ns += source.inclusive_ns;
  target.call_count += source.call_count;
  merge_children(target, source);
}

double clock_resolution_ns() {
  using Period = Session::Clock::period;
  return 1e9 * static_cast<double>(Period::num) / static_cast<double>(Period::den);
}

}  // namespace tc::profile
