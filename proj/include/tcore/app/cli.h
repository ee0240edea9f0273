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

// Command line front end: `tcore run ...` and `tcore bench ...`.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "tcore/math/layout_benchmark.h"
#include "tcore/media/video.h"
#include "tcore/registry/unit_registry.h"

namespace tc::app {

using BenchFunction = std::function<LayoutBenchReport(std::size_t, int, std::uint64_t)>;

/// Replaceable collaborators, for tests.
struct CliEnvironment {
  BenchFunction bench;                      // run_layout_benchmark when empty
  media::CommandRunner* runner = nullptr;   // SystemCommandRunner when null
  const UnitRegistry* registry = nullptr;   // builtin_registry() when null
};

/// `args` excludes the program name. Exit status 0 ok, 1 runtime failure,
/// 2 usage or configuration error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const CliEnvironment& env = {});

/// Prints the report as key=value lines; 0 iff the checksums match.
int run_bench(std::size_t n, int passes, std::uint64_t seed, std::ostream& out, std::ostream& err,
              const BenchFunction& bench = {});

}  // namespace tc::app
