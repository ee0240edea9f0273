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

// Particle-grid transfer and the per-phase grid operations of one step.

#pragma once

#include <array>
#include <cstdint>

#include "tcore/math/vector.h"
#include "tcore/sim/config.h"
#include "tcore/sim/mac_grid.h"
#include "tcore/sim/particles.h"

namespace tc::sim {

/// Quadratic B-spline weights along one axis. `g` is the sample position in
/// node-index units; the stencil covers nodes base, base+1, base+2.
struct AxisWeights {
  int base = 0;
  std::array<double, 3> w{};
};

AxisWeights quadratic_weights(double g);

/// Axis-aligned box in meters.
struct Box {
  Vec2 lo;
  Vec2 hi;
};

/// particles_per_cell jittered samples in every cell whose center lies in
/// `region`. Perfect-square counts are stratified on a k x k sub-grid. Zero
/// velocity and C. Deterministic in (config.seed, stream). Throws ConfigError
/// when the region covers no cell or reaches a border cell.
ParticleSet seed_block(const SimConfig& config, const Box& region, int particles_per_cell,
                       std::uint64_t stream = 0);

/// Border cells solid, cells holding a particle fluid, the rest empty.
void mark_fluid_cells(const ParticleSet& particles, MacGrid2& grid);

/// Clears the grid and splats particle momentum and kernel weight (unit
/// mass), then divides where the weight is positive. For APIC the affine
/// term C (x_i - x_p) is included; FLIP particles carry C = 0. Saves the
/// result in u_saved / v_saved. Throws SimulationError for a particle
/// outside the open domain.
void p2g(const ParticleSet& particles, MacGrid2& grid);

/// v += g * dt on faces with positive weight.
void apply_body_forces(MacGrid2& grid, const SimConfig& config);

/// Zero normal velocity on every face touching a solid cell.
void enforce_boundaries(MacGrid2& grid);

/// Faces touching a fluid cell are known; unknown faces take the mean of
/// known 4-neighbors, one ring per layer. Faces still unknown become 0.
void extrapolate_velocity(MacGrid2& grid, int layers = 2);

/// APIC: v_p = sum w v_i, C_p = 4/dx^2 sum w v_i (x_i - x_p)^T.
/// FLIP: v_p = a (v_p + dv) + (1 - a) v_pic with dv the grid increment since
/// p2g, C_p = 0.
void g2p(const MacGrid2& grid, ParticleSet& particles, const SimConfig& config);

/// Bilinear interpolation of the face velocities; indices are clamped.
Vec2 sample_velocity(const MacGrid2& grid, Vec2 position);

/// Midpoint rule through sample_velocity, then clamp to
/// [1.001 dx, extent - 1.001 dx] on both axes.
void advect_particles(ParticleSet& particles, const MacGrid2& grid, double dt);

/// Largest |u| or |v| over all faces.
double max_face_speed(const MacGrid2& grid);

}  // namespace tc::sim
