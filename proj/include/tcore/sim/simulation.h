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
#include <filesystem>
#include <string_view>

#include "tcore/registry/unit_registry.h"
#include "tcore/serialization/record.h"
#include "tcore/sim/config.h"
#include "tcore/sim/mac_grid.h"
#include "tcore/sim/particles.h"
#include "tcore/sim/poisson.h"

namespace tc::sim {

/// Everything a step depends on. Two states that compare bitwise equal
/// produce bitwise equal successors.
struct SimState {
  SimConfig config;
  ParticleSet particles;
  MacGrid2 grid;
  std::int64_t step_index = 0;
  double time = 0;
};

/// The step would move material more than cfl_max cells.
class CflError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

struct StepReport {
  SolveStats solve;
  double max_speed = 0;  // largest face speed after projection
  double cfl = 0;        // max_speed * dt / dx
};

/// Interface "simulation". The two registered units, "apic" and "flip",
/// differ only in the transfer scheme.
class Simulation : public Unit {
 public:
  static constexpr std::string_view kInterface = "simulation";

  const SimState& state() const { return state_; }
  const SimConfig& config() const { return state_.config; }
  const ParticleSet& particles() const { return state_.particles; }
  std::int64_t step_index() const { return state_.step_index; }

  void set_particles(ParticleSet particles);

  /// Replaces the whole state. The state's scheme must match this unit.
  void restore(SimState state);

  /// One step: mark_fluid_cells, p2g, apply_body_forces, enforce_boundaries,
  /// pressure_project, extrapolate_velocity, enforce_boundaries, CFL check,
  /// g2p, advect_particles. Each phase runs in a profiler scope of the same
  /// name. On a CflError or SolverError particles are left untouched.
  StepReport step();

  std::string_view unit_name() const override { return scheme_name(state_.config.scheme); }

 protected:
  Simulation(const ConfigMap& config, Scheme scheme);

 private:
  SimState state_;
};

class ApicSimulation final : public Simulation {
 public:
  explicit ApicSimulation(const ConfigMap& config) : Simulation(config, Scheme::apic) {}
};

class FlipSimulation final : public Simulation {
 public:
  explicit FlipSimulation(const ConfigMap& config) : Simulation(config, Scheme::flip) {}
};

/// Adds "apic" and "flip" under the "simulation" interface.
void register_simulation_units(UnitRegistry& registry);

serial::Record to_record(const SimState& state);
/// Throws SerializationError (malformed) when fields are missing, have the
/// wrong type or inconsistent sizes.
SimState state_from_record(const serial::Record& record);

void write_state_snapshot(const SimState& state, const std::filesystem::path& path);
SimState read_state_snapshot(const std::filesystem::path& path);

/// "TCPART01", u64 count, then count records of f64 x, y, vx, vy; all
/// little-endian.
serial::Bytes particle_dump(const ParticleSet& particles);
void write_particle_dump(const ParticleSet& particles, const std::filesystem::path& path);

}  // namespace tc::sim
