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

#include <vector>

#include "tcore/sim/config.h"
#include "tcore/sim/mac_grid.h"
#include "tcore/sim/poisson.h"

namespace tc::sim {

/// Fluid cells unknown, empty cells Dirichlet (p = 0), solid cells and the
/// outside Neumann.
PoissonSystem pressure_system(const MacGrid2& grid);

/// b = -(dx/dt) * divergence on fluid cells, 0 elsewhere.
std::vector<double> pressure_rhs(const MacGrid2& grid, const SimConfig& config);

/// Solves A p = b with MGPCG, stores p in grid.pressure and subtracts
/// (dt/dx) * (p_right - p_left) from every face between a fluid cell and a
/// non-solid cell. Afterwards each fluid cell's divergence is at most
/// solver_tol * ||b||_inf * dt/dx. Throws SolverError on non-convergence.
SolveStats pressure_project(MacGrid2& grid, const SimConfig& config);

/// Largest |divergence| over fluid cells.
double max_fluid_divergence(const MacGrid2& grid);

}  // namespace tc::sim
