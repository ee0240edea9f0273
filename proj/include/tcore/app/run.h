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

// Demo runs: configuration layering, the run manifest and the step loop.
//
// Settings are resolved from these layers, later layers winning:
//   built-in defaults < demo defaults < config file < --set < dedicated flags
// The resolved map is written to <out>/manifest.cfg before the first step;
// passing it back with --manifest reproduces the run bit for bit.

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "tcore/media/video.h"
#include "tcore/registry/config_map.h"
#include "tcore/registry/unit_registry.h"
#include "tcore/sim/simulation.h"

namespace tc::app {

/// Keys owned by the runner (as opposed to the simulation or a demo).
const std::vector<std::string>& run_config_keys();

/// Simulation defaults (without dx, which follows nx) plus runner defaults.
ConfigMap builtin_defaults();

struct RunSettings {
  std::string demo;
  std::filesystem::path out;
  std::int64_t frames = 0;
  std::int64_t frame_every = 1;
  std::int64_t snapshot_every = 0;  // 0 disables snapshots
  std::string restore;              // empty: start from the demo
  int image_width = 256;
  int image_height = 256;
  bool video_enabled = false;
  int video_fps = 30;
  std::string video_command;
  bool profile = true;
};

/// Throws ConfigError for out-of-range values.
RunSettings run_settings_from(const ConfigMap& resolved);

struct ConfigLayers {
  ConfigMap file;   // --config or --manifest
  ConfigMap sets;   // --set key=value, in order
  ConfigMap flags;  // dedicated flags such as --frames
};

/// Merges the layers over the built-in and demo defaults. Throws ConfigError
/// for an unknown key (naming it), an unknown demo (listing the available
/// ones) or a missing demo when not restoring. dx is filled in from nx when
/// no layer sets it.
ConfigMap resolve_run_config(const ConfigLayers& layers, const UnitRegistry& registry);

/// Simulation unit for the resolved scheme, seeded by the resolved demo.
std::unique_ptr<sim::Simulation> create_demo_simulation(const ConfigMap& resolved,
                                                        const UnitRegistry& registry);

/// Replaces the simulation keys of `resolved` with the snapshot's. A key set
/// explicitly in `layers` that disagrees with the snapshot is a ConfigError.
ConfigMap adopt_snapshot_config(const ConfigMap& resolved, const ConfigLayers& layers,
                                const sim::SimConfig& snapshot);

std::string frame_name(std::int64_t index, std::string_view extension);
std::string snapshot_name(std::int64_t step);

struct RunIo {
  std::ostream& out;
  std::ostream& err;
  media::CommandRunner& runner;
};

/// Runs a resolved configuration. Returns the process exit status: 0 on
/// success, 1 when the simulation or file output fails (the message names
/// the profiler scope path that was open), 2 for a configuration error.
int execute_run(const ConfigMap& resolved, const ConfigLayers& layers,
                const UnitRegistry& registry, RunIo io);

}  // namespace tc::app
