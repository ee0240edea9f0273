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

#include "tcore/math/vector.h"
#include "tcore/sim/array2.h"

namespace tc::sim {

enum class CellLabel : std::uint8_t { empty = 0, fluid = 1, solid = 2 };

/// Staggered grid. u(i, j) sits on the left face of cell (i, j) at
/// (i*dx, (j+0.5)*dx); v(i, j) on the bottom face at ((i+0.5)*dx, j*dx).
/// Pressure and labels are cell centered. Border cells are always solid.
struct MacGrid2 {
  int nx = 0;
  int ny = 0;
  double dx = 0;

  Array2<double> u, v;            // face velocities
  Array2<double> mass_u, mass_v;  // accumulated kernel weights
  Array2<double> u_saved, v_saved;  // velocities right after p2g (FLIP increment)
  Array2<double> pressure;
  Array2<CellLabel> label;

  MacGrid2() = default;
  MacGrid2(int nx_, int ny_, double dx_);

  Vec2 u_position(int i, int j) const { return {i * dx, (j + 0.5) * dx}; }
  Vec2 v_position(int i, int j) const { return {(i + 0.5) * dx, j * dx}; }
  Vec2 cell_center(int i, int j) const { return {(i + 0.5) * dx, (j + 0.5) * dx}; }

  /// Out-of-range cells count as solid.
  CellLabel label_at(int i, int j) const {
    return label.in_range(i, j) ? label(i, j) : CellLabel::solid;
  }

  /// Flux form u(i+1)-u(i)+v(j+1)-v(j): the face-area-weighted net outflow
  /// of cell (i, j) in units of dx * m/s.
  double divergence(int i, int j) const {
    return u(i + 1, j) - u(i, j) + v(i, j + 1) - v(i, j);
  }

  void clear_transfer();
};

}  // namespace tc::sim
