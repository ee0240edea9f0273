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

#include "tcore/sim/projection.h"

#include <algorithm>
#include <cmath>

namespace tc::sim {

PoissonSystem pressure_system(const MacGrid2& grid) {
  Array2<CellKind> kinds(grid.nx, grid.ny);
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    switch (grid.label.data()[k]) {
      case CellLabel::fluid: kinds.data()[k] = CellKind::unknown; break;
      case CellLabel::empty: kinds.data()[k] = CellKind::dirichlet; break;
      case CellLabel::solid: kinds.data()[k] = CellKind::neumann; break;
    }
  }
  return PoissonSystem(std::move(kinds), CellKind::neumann);
}

std::vector<double> pressure_rhs(const MacGrid2& grid, const SimConfig& config) {
  std::vector<double> b(grid.label.size(), 0.0);
  const double scale = -grid.dx / config.dt;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      if (grid.label(i, j) == CellLabel::fluid) b[grid.label.index(i, j)] = scale * grid.divergence(i, j);
    }
  }
  return b;
}

SolveStats pressure_project(MacGrid2& grid, const SimConfig& config) {
  const PoissonSystem system = pressure_system(grid);
  const auto b = pressure_rhs(grid, config);
  SolveOptions options;
  options.tolerance = config.solver_tol;
  options.max_iters = config.max_cg_iters;
  SolveStats stats;
  const auto p = solve(system, b, options, &stats);
  grid.pressure.data() = p;

  const double scale = config.dt / grid.dx;
  auto pressure_at = [&](int i, int j) {
    return grid.label_at(i, j) == CellLabel::fluid ? grid.pressure(i, j) : 0.0;
  };
  auto update = [&](CellLabel a, CellLabel b_) {
    return (a == CellLabel::fluid || b_ == CellLabel::fluid) && a != CellLabel::solid &&
           b_ != CellLabel::solid;
  };
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i <= grid.nx; ++i) {
      if (update(grid.label_at(i - 1, j), grid.label_at(i, j))) {
        grid.u(i, j) -= scale * (pressure_at(i, j) - pressure_at(i - 1, j));
      }
    }
  }
  for (int j = 0; j <= grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      if (update(grid.label_at(i, j - 1), grid.label_at(i, j))) {
        grid.v(i, j) -= scale * (pressure_at(i, j) - pressure_at(i, j - 1));
      }
    }
  }
  return stats;
}

double max_fluid_divergence(const MacGrid2& grid) {
  double m = 0;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      if (grid.label(i, j) == CellLabel::fluid) m = std::max(m, std::abs(grid.divergence(i, j)));
    }
  }
  return m;
}

}  // namespace tc::sim
