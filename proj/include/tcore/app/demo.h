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

// Built-in demos. A demo is a unit of interface "demo" that contributes
// default settings and seeds the initial particles; the simulation itself is
// created separately from the "simulation" interface.

#pragma once

#include <string_view>

#include "tcore/registry/unit_registry.h"
#include "tcore/sim/config.h"
#include "tcore/sim/particles.h"

namespace tc::app {

class Demo : public Unit {
 public:
  static constexpr std::string_view kInterface = "demo";

  virtual std::string_view description() const = 0;

  /// Keys this demo reads, with their defaults. They may also override
  /// simulation defaults (the rotation demo turns gravity off).
  virtual ConfigMap defaults() const = 0;

  /// Initial particles. `resolved` holds every setting of the run.
  virtual sim::ParticleSet seed(const sim::SimConfig& config, const ConfigMap& resolved) const = 0;
};

/// Water column in the lower left corner.
class DamBreakDemo final : public Demo {
 public:
  explicit DamBreakDemo(const ConfigMap&) {}
  std::string_view unit_name() const override { return "dam-break"; }
  std::string_view description() const override;
  ConfigMap defaults() const override;
  sim::ParticleSet seed(const sim::SimConfig& config, const ConfigMap& resolved) const override;
};

/// Tank filled to a level at rest.
class HydrostaticDemo final : public Demo {
 public:
  explicit HydrostaticDemo(const ConfigMap&) {}
  std::string_view unit_name() const override { return "hydrostatic"; }
  std::string_view description() const override;
  ConfigMap defaults() const override;
  sim::ParticleSet seed(const sim::SimConfig& config, const ConfigMap& resolved) const override;
};

/// Disc in rigid rotation without gravity. APIC particles start with the
/// exact affine velocity, so the disc keeps spinning instead of smearing.
class RotationDemo final : public Demo {
 public:
  explicit RotationDemo(const ConfigMap&) {}
  std::string_view unit_name() const override { return "rotation"; }
  std::string_view description() const override;
  ConfigMap defaults() const override;
  sim::ParticleSet seed(const sim::SimConfig& config, const ConfigMap& resolved) const override;
};

/// Registers the simulation units and the three demos.
void register_builtin_units(UnitRegistry& registry);

/// UnitRegistry::global() with the built-in units added once, then frozen.
const UnitRegistry& builtin_registry();

}  // namespace tc::app
