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

#include <catch2/catch.hpp>

#include <functional>
#include <random>
#include <stdexcept>
#include <thread>

#include "tcore/diagnostics/profiler.h"

namespace tp = tc::profile;

namespace {

void check_tree_inequality(const tp::ProfileNode& n) {
  REQUIRE(n.inclusive_ns >= n.children_ns());
  for (const auto& c : n.children) {
    REQUIRE(c.call_count >= 1);
    check_tree_inequality(c);
  }
}

void random_script(std::mt19937& rng, int depth) {
  const int calls = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < calls; ++i) {
    const std::string name = std::string(1, static_cast<char>('a' + rng() % 4));
    tp::scoped(name, [&] {
      volatile double sink = 0;
      for (int k = 0; k < static_cast<int>(rng() % 200); ++k) sink = sink + k;
      if (depth < 4 && rng() % 2 == 0) random_script(rng, depth + 1);
    });
  }
}

}  // namespace

TEST_CASE("nesting produces nested nodes") {
  tp::Session s;
  {
    tp::Session::Activation on(s);
    tp::scoped("a", [] { tp::scoped("b", [] {}); });
  }
  const auto t = s.tree();
  REQUIRE(t.children.size() == 1);
  const auto* a = t.child("a");
  REQUIRE(a != nullptr);
  REQUIRE(a->child("b") != nullptr);
  CHECK(a->inclusive_ns >= a->child("b")->inclusive_ns);
}

TEST_CASE("repeated calls aggregate") {
  tp::Session s;
  tp::Session::Activation on(s);
  for (int i = 0; i < 3; ++i) tp::scoped("x", [] {});
  CHECK(s.tree().children.size() == 1);
  CHECK(s.tree().child("x")->call_count == 3);
}

TEST_CASE("children keep first-entry order") {
  tp::Session s;
  tp::Session::Activation on(s);
  tp::scoped("z", [] {});
  tp::scoped("a", [] {});
  tp::scoped("z", [] {});
  const auto t = s.tree();
  REQUIRE(t.children.size() == 2);
  CHECK(t.children[0].name == "z");
  CHECK(t.children[1].name == "a");
}

TEST_CASE("sleep scope is timed within slack") {
  tp::Session s;
  {
    tp::Session::Activation on(s);
    tp::scoped("sleep", [] { std::this_thread::sleep_for(std::chrono::milliseconds(50)); });
  }
  const double ms = static_cast<double>(s.tree().child("sleep")->inclusive_ns) * 1e-6;
  CHECK(ms >= 50.0);
  CHECK(ms <= 75.0);
}

TEST_CASE("tree inequality over randomized scripts") {
  for (unsigned seed = 0; seed < 50; ++seed) {
    std::mt19937 rng(seed);
    tp::Session s;
    {
      tp::Session::Activation on(s);
      random_script(rng, 0);
    }
    check_tree_inequality(s.tree());
  }
}

TEST_CASE("adding a call never decreases ancestors") {
  tp::Session s;
  tp::Session::Activation on(s);
  tp::scoped("outer", [] { tp::scoped("inner", [] {}); });
  const auto before = s.tree();
  tp::scoped("outer", [] { tp::scoped("inner", [] {}); });
  const auto after = s.tree();
  CHECK(after.child("outer")->inclusive_ns >= before.child("outer")->inclusive_ns);
  CHECK(after.inclusive_ns >= before.inclusive_ns);
}

TEST_CASE("passthrough of results and errors") {
  tp::Session s;
  tp::Session::Activation on(s);
  CHECK(tp::scoped("v", [] { return 41 + 1; }) == 42);
  std::string text = "abc";
  std::string& ref = tp::scoped("r", [&]() -> std::string& { return text; });
  CHECK(&ref == &text);
  CHECK_THROWS_AS(tp::scoped("e", []() -> int { throw std::logic_error("x"); }),
                  std::logic_error);
  CHECK(s.tree().child("e")->call_count == 1);
  CHECK(tp::scoped("n", [] { return std::string("no session"); }) == "no session");
}

TEST_CASE("no session means nothing recorded") {
  REQUIRE(tp::Session::current() == nullptr);
  CHECK(tp::scoped("free", [] { return 3; }) == 3);
}

TEST_CASE("fault path records where an exception left") {
  tp::Session s;
  tp::Session::Activation on(s);
  try {
    tp::scoped("step", [] {
      tp::scoped("pressure", [] { throw std::runtime_error("diverged"); });
    });
  } catch (const std::runtime_error&) {
  }
  CHECK(s.fault_path() == std::vector<std::string>{"step", "pressure"});
  CHECK(s.open_path().empty());
}

TEST_CASE("report of a single node") {
  tp::ProfileNode root;
  root.children.push_back({"only", 1000000, 1, {}});
  root.inclusive_ns = 1000000;
  const auto rows = tp::report_rows(root);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].percent_of_parent == Approx(100.0));
}

TEST_CASE("report percentages and self rows") {
  tp::ProfileNode parent{"parent", 1000, 1, {}};
  parent.children.push_back({"a", 500, 2, {}});
  parent.children.push_back({"b", 499, 1, {}});
  tp::ProfileNode root;
  root.children.push_back(parent);
  const auto rows = tp::report_rows(root);
  REQUIRE(rows.size() == 4);
  CHECK(rows[1].name == "a");
  CHECK(rows[1].depth == 1);
  CHECK(rows[1].percent_of_parent == Approx(50.0).margin(0.1));
  CHECK(rows[2].percent_of_parent == Approx(50.0).margin(0.2));
  CHECK(rows[3].is_self);
  CHECK(rows[1].percent_of_parent + rows[2].percent_of_parent + rows[3].percent_of_parent ==
        Approx(100.0).margin(0.1));

  const auto text = tp::format_report(root);
  CHECK(text.find("\n  a ") != std::string::npos);
  CHECK(text.find("\n  (self)") != std::string::npos);
  CHECK(text.find("resolution") != std::string::npos);
}

TEST_CASE("sibling and self percentages sum to 100 on real trees") {
  std::mt19937 rng(8);
  tp::Session s;
  {
    tp::Session::Activation on(s);
    random_script(rng, 0);
  }
  const auto rows = tp::report_rows(s.tree());
  // Sum consecutive rows sharing a parent: walk depth changes.
  std::function<void(std::size_t&, int)> walk = [&](std::size_t& i, int depth) {
    double sum = 0;
    while (i < rows.size() && rows[i].depth == depth) {
      sum += rows[i].percent_of_parent;
      ++i;
      if (i < rows.size() && rows[i].depth > depth) walk(i, depth + 1);
    }
    CHECK(sum == Approx(100.0).margin(0.1));
  };
  std::size_t i = 0;
  walk(i, 0);
}

TEST_CASE("empty session reports no samples") {
  tp::Session s;
  CHECK(tp::format_report(s.tree()) == "no samples\n");
}

TEST_CASE("machine readable lines") {
  tp::ProfileNode root;
  tp::ProfileNode step{"step", 30, 2, {}};
  step.children.push_back({"p2g", 10, 2, {}});
  root.children.push_back(step);
  CHECK(tp::format_machine_readable(root) == "step;30;2\nstep/p2g;10;2\n");
}

TEST_CASE("per-thread sessions merge by name") {
  tp::ProfileNode merged;
  for (int t = 0; t < 2; ++t) {
    std::thread worker([&merged] {
      tp::Session s;
      {
        tp::Session::Activation on(s);
        tp::scoped("work", [] { tp::scoped("inner", [] {}); });
      }
      static std::mutex m;
      std::lock_guard lock(m);
      tp::merge_into(merged, s.tree());
    });
    worker.join();
  }
  REQUIRE(merged.children.size() == 1);
  CHECK(merged.child("work")->call_count == 2);
  CHECK(merged.child("work")->child("inner")->call_count == 2);
}
