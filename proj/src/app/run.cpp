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

#include "tcore/app/run.h"

#include <fmt/format.h>

#include <algorithm>

#include "tcore/app/demo.h"
#include "tcore/diagnostics/profiler.h"
#include "tcore/media/image.h"
#include "tcore/serialization/snapshot.h"

namespace tc::app {
namespace fs = std::filesystem;

const std::vector<std::string>& run_config_keys() {
  static const std::vector<std::string> keys = {
      "run.demo",     "run.out",      "run.frames",    "run.frame_every", "run.snapshot_every",
      "run.restore",  "image.width",  "image.height",  "video.enabled",   "video.fps",
      "video.command", "profile"};
  return keys;
}

ConfigMap builtin_defaults() {
  ConfigMap m = sim::to_config_map(sim::SimConfig{});
  m.erase("dx");
  m.set("run.demo", std::string());
  m.set("run.out", std::string("out"));
  m.set("run.frames", std::int64_t{100});
  m.set("run.frame_every", std::int64_t{1});
  m.set("run.snapshot_every", std::int64_t{0});
  m.set("run.restore", std::string());
  m.set("image.width", std::int64_t{256});
  m.set("image.height", std::int64_t{256});
  m.set("video.enabled", false);
  m.set("video.fps", std::int64_t{30});
  m.set("video.command", std::string(media::kDefaultVideoCommand));
  m.set("profile", true);
  return m;
}

namespace {

std::int64_t int_in(const ConfigMap& m, std::string_view key, std::int64_t lo, std::int64_t hi) {
  const auto v = m.get_int(key);
  if (v < lo || v > hi) {
    throw ConfigError(fmt::format("config key '{}' must be in [{}, {}] (got {})", key, lo, hi, v));
  }
  return v;
}

}  // namespace

RunSettings run_settings_from(const ConfigMap& resolved) {
  RunSettings s;
  s.demo = resolved.get_string("run.demo");
  s.out = resolved.get_string("run.out");
  if (s.out.empty()) throw ConfigError("config key 'run.out' is empty");
  s.frames = int_in(resolved, "run.frames", 0, 10'000'000);
  s.frame_every = int_in(resolved, "run.frame_every", 1, 1'000'000);
  s.snapshot_every = int_in(resolved, "run.snapshot_every", 0, 1'000'000'000);
  s.restore = resolved.get_string("run.restore");
  s.image_width = static_cast<int>(int_in(resolved, "image.width", 1, 8192));
  s.image_height = static_cast<int>(int_in(resolved, "image.height", 1, 8192));
  s.video_enabled = resolved.get_bool("video.enabled");
  s.video_fps = static_cast<int>(int_in(resolved, "video.fps", 1, 1000));
  s.video_command = resolved.get_string("video.command");
  s.profile = resolved.get_bool("profile");
  return s;
}

ConfigMap resolve_run_config(const ConfigLayers& layers, const UnitRegistry& registry) {
  ConfigMap top = builtin_defaults();
  top.merge(layers.file);
  top.merge(layers.sets);
  top.merge(layers.flags);
  const auto demo_name = top.get_string("run.demo");
  const auto restore = top.get_string("run.restore");

  ConfigMap resolved = builtin_defaults();
  auto allowed = sim::sim_config_keys();
  allowed.insert(allowed.end(), run_config_keys().begin(), run_config_keys().end());
  if (demo_name.empty()) {
    if (restore.empty()) {
      throw ConfigError(fmt::format("no demo selected; available: {}",
                                    fmt::join(registry.list_units(Demo::kInterface), ", ")));
    }
  } else {
    const auto demo = registry.create_as<Demo>(Demo::kInterface, demo_name, ConfigMap{});
    const auto extra = demo->defaults();
    resolved.merge(extra);
    for (const auto& k : extra.keys()) allowed.push_back(k);
  }
  resolved.merge(layers.file);
  resolved.merge(layers.sets);
  resolved.merge(layers.flags);
  resolved.require_known_keys(allowed);

  if (!resolved.contains("dx")) {
    const auto nx = resolved.get_int("nx");
    if (nx <= 0) throw ConfigError(fmt::format("config key 'nx' must be positive (got {})", nx));
    resolved.set("dx", 1.0 / static_cast<double>(nx));
  }
  sim::sim_config_from(resolved);
  run_settings_from(resolved);
  return resolved;
}

std::unique_ptr<sim::Simulation> create_demo_simulation(const ConfigMap& resolved,
                                                        const UnitRegistry& registry) {
  return profile::scoped("seed", [&] {
    auto simulation = registry.create_as<sim::Simulation>(sim::Simulation::kInterface,
                                                          resolved.get_string("scheme"), resolved);
    const auto demo =
        registry.create_as<Demo>(Demo::kInterface, resolved.get_string("run.demo"), resolved);
    simulation->set_particles(demo->seed(simulation->config(), resolved));
    return simulation;
  });
}

ConfigMap adopt_snapshot_config(const ConfigMap& resolved, const ConfigLayers& layers,
                                const sim::SimConfig& snapshot) {
  const ConfigMap saved = sim::to_config_map(snapshot);
  for (const auto& key : sim::sim_config_keys()) {
    for (const ConfigMap* layer : {&layers.flags, &layers.sets, &layers.file}) {
      const auto value = layer->find(key);
      if (!value) continue;
      ConfigMap probe = saved;
      probe.set(key, *value);
      if (!(sim::sim_config_from(probe) == snapshot)) {
        throw ConfigError(fmt::format("config key '{}' = {} conflicts with the snapshot ({})", key,
                                      to_text(*value), to_text(*saved.find(key))));
      }
      break;
    }
  }
  ConfigMap adopted = resolved;
  adopted.merge(saved);
  return adopted;
}

std::string frame_name(std::int64_t index, std::string_view extension) {
  return fmt::format("frame_{:06d}.{}", index, extension);
}

std::string snapshot_name(std::int64_t step) { return fmt::format("snap_{:06d}.tcsnap", step); }

namespace {

void write_text(const std::string& text, const fs::path& path) {
  serial::write_file_atomic(
      std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()), path);
}

std::string join_path(const std::vector<std::string>& path) {
  return path.empty() ? std::string("(outside any scope)") : fmt::format("{}", fmt::join(path, "/"));
}

int simulate(const ConfigMap& resolved, const ConfigLayers& layers, const UnitRegistry& registry,
             const RunSettings& s, RunIo io) {
  std::error_code ec;
  fs::create_directories(s.out, ec);
  if (ec) throw IoError(fmt::format("cannot create output directory '{}': {}", s.out.string(), ec.message()));

  std::unique_ptr<sim::Simulation> simulation;
  ConfigMap manifest = resolved;
  if (s.restore.empty()) {
    simulation = create_demo_simulation(resolved, registry);
  } else {
    auto state = profile::scoped("read_snapshot", [&] { return sim::read_state_snapshot(s.restore); });
    manifest = adopt_snapshot_config(resolved, layers, state.config);
    simulation = registry.create_as<sim::Simulation>(
        sim::Simulation::kInterface, std::string(sim::scheme_name(state.config.scheme)), manifest);
    simulation->restore(std::move(state));
  }
  write_text(manifest.to_text(), s.out / "manifest.cfg");

  std::vector<fs::path> frames;
  for (std::int64_t f = 0; f < s.frames; ++f) {
    for (std::int64_t k = 0; k < s.frame_every; ++k) {
      simulation->step();
      const auto step = simulation->step_index();
      if (s.snapshot_every > 0 && step % s.snapshot_every == 0) {
        profile::scoped("write_snapshot", [&] {
          sim::write_state_snapshot(simulation->state(), s.out / snapshot_name(step));
        });
      }
    }
    profile::scoped("write_frame", [&] {
      const auto index = simulation->step_index() / s.frame_every;
      const auto image = media::render_particles(simulation->state(), s.image_width, s.image_height);
      frames.push_back(s.out / frame_name(index, "ppm"));
      media::write_ppm(image, frames.back());
      sim::write_particle_dump(simulation->particles(), s.out / frame_name(index, "tcpart"));
    });
  }
  io.out << fmt::format("{} frames, {} particles, step {} written to {}\n", frames.size(),
                        simulation->particles().size(), simulation->step_index(), s.out.string());

  if (s.video_enabled) {
    if (frames.empty()) {
      io.out << "video: no frames to encode\n";
    } else {
      const auto result = profile::scoped("encode_video", [&] {
        return media::encode_video(frames, s.out / "video.mp4", s.video_fps, io.runner,
                                   s.video_command);
      });
      io.out << "video: " << result.message << "\n";
    }
  }
  return 0;
}

}  // namespace

int execute_run(const ConfigMap& resolved, const ConfigLayers& layers,
                const UnitRegistry& registry, RunIo io) {
  RunSettings settings;
  try {
    settings = run_settings_from(resolved);
  } catch (const ConfigError& e) {
    io.err << "error: " << e.what() << "\n";
    return 2;
  }

  profile::Session session;
  int status = 0;
  {
    profile::Session::Activation on(session);
    try {
      status = simulate(resolved, layers, registry, settings, io);
    } catch (const ConfigError& e) {
      io.err << "error: " << e.what() << "\n";
      status = 2;
    } catch (const Error& e) {
      io.err << "error: " << e.what() << "\n"
             << "  in scope: " << join_path(session.fault_path()) << "\n";
      status = 1;
    }
  }

  if (settings.profile && status != 2 && !session.empty()) {
    const auto tree = session.tree();
    const auto report = profile::format_report(tree);
    io.out << report;
    try {
      write_text(report, settings.out / "profile.txt");
      write_text(profile::format_machine_readable(tree), settings.out / "profile.paths");
    } catch (const Error& e) {
      io.err << "warning: " << e.what() << "\n";
    }
  }
  return status;
}

}  // namespace tc::app
