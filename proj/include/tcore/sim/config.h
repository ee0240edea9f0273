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

#include <cstdint>
#include <string>
#include <vector>

#include "tcore/math/vector.h"
#include "tcore/registry/config_map.h"

namespace tc::sim {

enum class Scheme { apic, flip };

std::string_view scheme_name(Scheme scheme);

/// Simulation parameters. Defaults describe a 1 m square box at 32x32.
struct SimConfig {
  int nx = 32;
  int ny = 32;
  double dx = 1.0 / 32.0;
  double dt = 0.002;
  Vec2 gravity{0.0, -9.8};
  Scheme scheme = Scheme::apic;
  double flip_blend = 0.95;
  double cfl_max = 1.0;
  double solver_tol = 1e-8;
  int max_cg_iters = 200;
  std::uint64_t seed = 1;

  double width() const { return nx * dx; }
  double height() const { return ny * dx; }

  /// Throws ConfigError naming the offending setting.
  void validate() const;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// Keys read by sim_config_from(): nx, ny, dx, dt, gravity.x, gravity.y,
/// scheme, flip_blend, cfl_max, solver.tolerance, solver.max_iters, seed.
const std::vector<std::string>& sim_config_keys();

/// Missing keys keep their defaults; present keys must have the right type.
/// The result is validated.
SimConfig sim_config_from(const ConfigMap& config);

/// Every key of sim_config_keys(), suitable for a run manifest.
ConfigMap to_config_map(const SimConfig& config);

}  // namespace tc::sim
