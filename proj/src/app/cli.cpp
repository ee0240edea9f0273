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

#include "tcore/app/cli.h"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <optional>
#include <sstream>

#include "tcore/app/demo.h"
#include "tcore/app/run.h"

namespace tc::app {

int run_bench(std::size_t n, int passes, std::uint64_t seed, std::ostream& out, std::ostream& err,
              const BenchFunction& bench) {
  LayoutBenchReport report;
  try {
    report = bench ? bench(n, passes, seed) : run_layout_benchmark(n, passes, seed);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  std::istringstream pairs(report.to_record_line());
  std::string pair;
  while (pairs >> pair) out << pair << "\n";
  if (!report.checksums_match()) {
    err << fmt::format("error: checksum mismatch (aligned {} vs packed {})\n",
                       report.checksum_aligned, report.checksum_packed);
    return 1;
  }
  return 0;
}

namespace {

void list_demos(const UnitRegistry& registry, std::ostream& out) {
  for (const auto& name : registry.list_units(Demo::kInterface)) {
    const auto demo = registry.create_as<Demo>(Demo::kInterface, name, ConfigMap{});
    out << fmt::format("{:<12}  {}\n", name, demo->description());
  }
}

struct RunArgs {
  std::string demo, config, manifest, out, restore;
  std::vector<std::string> sets;
  std::int64_t frames = 0, frame_every = 0, snapshot_every = 0, seed = 0;
  bool list = false;
  bool profile = true;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const CliEnvironment& env) {
  CLI::App app{"tcore: particle fluid demos and layout benchmark", "tcore"};
  app.require_subcommand(1);

  RunArgs ra;
  auto* run = app.add_subcommand("run", "run a demo, writing frames, snapshots and a profile");
  auto* o_demo = run->add_option("--demo", ra.demo, "demo to run");
  run->add_flag("--list-demos", ra.list, "print the registered demos and exit");
  auto* o_config = run->add_option("--config", ra.config, "settings file (key = value lines)");
  auto* o_manifest =
      run->add_option("--manifest", ra.manifest, "manifest.cfg of an earlier run to repeat");
  o_manifest->excludes(o_config);
  run->add_option("--set", ra.sets, "override one setting, key=value (repeatable)");
  auto* o_frames = run->add_option("--frames", ra.frames, "number of frames");
  auto* o_out = run->add_option("--out", ra.out, "output directory");
  auto* o_frame_every = run->add_option("--frame-every", ra.frame_every, "steps per frame");
  auto* o_snap = run->add_option("--snapshot-every", ra.snapshot_every, "steps per snapshot, 0 = off");
  auto* o_restore = run->add_option("--restore", ra.restore, "resume from a .tcsnap file");
  auto* o_profile = run->add_flag("--profile,!--no-profile", ra.profile, "print the profiler report");
  auto* o_seed = run->add_option("--seed", ra.seed, "random seed for particle placement");

  std::size_t bench_n = 1'000'000;
  int bench_passes = 10;
  std::uint64_t bench_seed = 42;
  auto* bench = app.add_subcommand("bench", "aligned vs packed vector layout benchmark");
  bench->add_option("--n", bench_n, "elements")->capture_default_str();
  bench->add_option("--passes", bench_passes, "timed passes")->capture_default_str();
  bench->add_option("--seed", bench_seed, "data seed")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  if (bench->parsed()) return run_bench(bench_n, bench_passes, bench_seed, out, err, env.bench);

  const UnitRegistry& registry = env.registry ? *env.registry : builtin_registry();
  if (ra.list) {
    list_demos(registry, out);
    return 0;
  }

  ConfigLayers layers;
  ConfigMap resolved;
  try {
    if (!ra.config.empty()) layers.file = ConfigMap::load(ra.config);
    if (!ra.manifest.empty()) layers.file = ConfigMap::load(ra.manifest);
    for (const auto& s : ra.sets) {
      auto [key, value] = ConfigMap::parse_assignment(s);
      layers.sets.set(std::move(key), std::move(value));
    }
    auto flag = [&](CLI::Option* opt, const char* key, auto value) {
      if (opt->count() > 0) layers.flags.set(key, value);
    };
    flag(o_demo, "run.demo", ra.demo);
    flag(o_frames, "run.frames", ra.frames);
    flag(o_out, "run.out", ra.out);
    flag(o_frame_every, "run.frame_every", ra.frame_every);
    flag(o_snap, "run.snapshot_every", ra.snapshot_every);
    flag(o_restore, "run.restore", ra.restore);
    flag(o_profile, "profile", ra.profile);
    flag(o_seed, "seed", ra.seed);
    resolved = resolve_run_config(layers, registry);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  media::SystemCommandRunner system_runner;
  media::CommandRunner& runner = env.runner ? *env.runner : system_runner;
  return execute_run(resolved, layers, registry, {out, err, runner});
}

}  // namespace tc::app
