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

#include "tcore/sim/transfer.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "tcore/common/error.h"

namespace tc::sim {
namespace {

// Grid of one velocity component: node (i, j) sits at ((i + ox) dx, (j + oy) dx).
struct Component {
  Array2<double>* vel;
  Array2<double>* mass;
  double ox;
  double oy;
};

struct ConstComponent {
  const Array2<double>* vel;
  const Array2<double>* saved;
  double ox;
  double oy;
};

double unit_uniform(std::mt19937_64& rng) {
  // Open interval (0, 1), identical on every platform.
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

template <typename Fn>
void for_stencil(const Array2<double>& arr, double dx, double ox, double oy, Vec2 x, Fn&& fn) {
  const AxisWeights wx = quadratic_weights(x.x / dx - ox);
  const AxisWeights wy = quadratic_weights(x.y / dx - oy);
  for (int b = 0; b < 3; ++b) {
    const int j = wy.base + b;
    for (int a = 0; a < 3; ++a) {
      const int i = wx.base + a;
      if (!arr.in_range(i, j)) continue;
      fn(i, j, wx.w[static_cast<std::size_t>(a)] * wy.w[static_cast<std::size_t>(b)],
         Vec2{(i + ox) * dx, (j + oy) * dx});
    }
  }
}

double bilinear(const Array2<double>& arr, double gx, double gy) {
  const int i0 = std::clamp(static_cast<int>(std::floor(gx)), 0, arr.nx() - 2);
  const int j0 = std::clamp(static_cast<int>(std::floor(gy)), 0, arr.ny() - 2);
  const double tx = std::clamp(gx - i0, 0.0, 1.0);
  const double ty = std::clamp(gy - j0, 0.0, 1.0);
  const double a = arr(i0, j0) + tx * (arr(i0 + 1, j0) - arr(i0, j0));
  const double b = arr(i0, j0 + 1) + tx * (arr(i0 + 1, j0 + 1) - arr(i0, j0 + 1));
  return a + ty * (b - a);
}

bool face_u_known(const MacGrid2& g, int i, int j) {
  return g.label_at(i - 1, j) == CellLabel::fluid || g.label_at(i, j) == CellLabel::fluid;
}

bool face_v_known(const MacGrid2& g, int i, int j) {
  return g.label_at(i, j - 1) == CellLabel::fluid || g.label_at(i, j) == CellLabel::fluid;
}

void extrapolate_component(Array2<double>& vel, Array2<std::uint8_t> known, int layers) {
  for (int layer = 0; layer < layers; ++layer) {
    Array2<std::uint8_t> next = known;
    for (int j = 0; j < vel.ny(); ++j) {
      for (int i = 0; i < vel.nx(); ++i) {
        if (known(i, j)) continue;
        double sum = 0;
        int count = 0;
        const int di[4] = {-1, 1, 0, 0};
        const int dj[4] = {0, 0, -1, 1};
        for (int k = 0; k < 4; ++k) {
          const int ii = i + di[k], jj = j + dj[k];
          if (known.in_range(ii, jj) && known(ii, jj)) {
            sum += vel(ii, jj);
            ++count;
          }
        }
        if (count > 0) {
          vel(i, j) = sum / count;
          next(i, j) = 1;
        }
      }
    }
    known = std::move(next);
  }
  for (std::size_t k = 0; k < vel.size(); ++k) {
    if (!known.data()[k]) vel.data()[k] = 0.0;
  }
}

}  // namespace

AxisWeights quadratic_weights(double g) {
  AxisWeights out;
  out.base = static_cast<int>(std::floor(g - 0.5));
  const double fx = g - out.base;
  out.w[0] = 0.5 * (1.5 - fx) * (1.5 - fx);
  out.w[1] = 0.75 - (fx - 1.0) * (fx - 1.0);
  out.w[2] = 0.5 * (fx - 0.5) * (fx - 0.5);
  return out;
}

ParticleSet seed_block(const SimConfig& config, const Box& region, int particles_per_cell,
                       std::uint64_t stream) {
  if (particles_per_cell < 1) {
    throw ConfigError(fmt::format("particles_per_cell must be at least 1 (got {})", particles_per_cell));
  }
  const double dx = config.dx;
  auto first_cell = [&](double lo) { return static_cast<int>(std::ceil(lo / dx - 0.5)); };
  auto end_cell = [&](double hi) { return static_cast<int>(std::floor(hi / dx - 0.5)) + 1; };
  const int i0 = first_cell(region.lo.x), i1 = end_cell(region.hi.x);
  const int j0 = first_cell(region.lo.y), j1 = end_cell(region.hi.y);
  if (i1 <= i0 || j1 <= j0) throw ConfigError("seed region covers no cell");
  if (i0 < 1 || j0 < 1 || i1 > config.nx - 1 || j1 > config.ny - 1) {
    throw ConfigError(fmt::format(
        "seed region cells [{}, {}) x [{}, {}) reach the solid border of the {}x{} domain", i0, i1,
        j0, j1, config.nx, config.ny));
  }

  std::mt19937_64 rng(config.seed * 0x9E3779B97F4A7C15ull + stream);
  const int k = static_cast<int>(std::lround(std::sqrt(static_cast<double>(particles_per_cell))));
  const bool stratified = k * k == particles_per_cell;
  ParticleSet set;
  for (int j = j0; j < j1; ++j) {
    for (int i = i0; i < i1; ++i) {
      for (int s = 0; s < particles_per_cell; ++s) {
        const double sx = stratified ? (s % k + unit_uniform(rng)) / k : unit_uniform(rng);
        const double sy = stratified ? (s / k + unit_uniform(rng)) / k : unit_uniform(rng);
        set.add({(i + sx) * dx, (j + sy) * dx});
      }
    }
  }
  return set;
}

void mark_fluid_cells(const ParticleSet& particles, MacGrid2& grid) {
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const bool border = i == 0 || j == 0 || i == grid.nx - 1 || j == grid.ny - 1;
      grid.label(i, j) = border ? CellLabel::solid : CellLabel::empty;
    }
  }
  for (const Vec2 x : particles.position) {
    const int i = static_cast<int>(std::floor(x.x / grid.dx));
    const int j = static_cast<int>(std::floor(x.y / grid.dx));
    if (grid.label.in_range(i, j) && grid.label(i, j) == CellLabel::empty) {
      grid.label(i, j) = CellLabel::fluid;
    }
  }
}

void p2g(const ParticleSet& particles, MacGrid2& grid) {
  const double w = grid.nx * grid.dx, h = grid.ny * grid.dx;
  for (std::size_t p = 0; p < particles.size(); ++p) {
    const Vec2 x = particles.position[p];
    if (!(x.x > 0 && x.x < w && x.y > 0 && x.y < h)) {
      throw SimulationError(fmt::format(
          "particle {} at ({}, {}) is outside the domain [0, {}] x [0, {}]", p, x.x, x.y, w, h));
    }
  }
  grid.clear_transfer();
  Component comps[2] = {{&grid.u, &grid.mass_u, 0.0, 0.5}, {&grid.v, &grid.mass_v, 0.5, 0.0}};
  for (std::size_t p = 0; p < particles.size(); ++p) {
    const Vec2 xp = particles.position[p];
    const Vec2 vp = particles.velocity[p];
    const Mat2& c = particles.affine[p];
    for (int axis = 0; axis < 2; ++axis) {
      Component& comp = comps[axis];
      const double base_v = axis == 0 ? vp.x : vp.y;
      const double gx = axis == 0 ? c.xx : c.yx;
      const double gy = axis == 0 ? c.xy : c.yy;
      for_stencil(*comp.vel, grid.dx, comp.ox, comp.oy, xp, [&](int i, int j, double wt, Vec2 xi) {
        const Vec2 d = xi - xp;
        (*comp.vel)(i, j) += wt * (base_v + gx * d.x + gy * d.y);
        (*comp.mass)(i, j) += wt;
      });
    }
  }
  for (auto [vel, mass] : {std::pair{&grid.u, &grid.mass_u}, std::pair{&grid.v, &grid.mass_v}}) {
    for (std::size_t k = 0; k < vel->size(); ++k) {
      const double m = mass->data()[k];
      if (m > 0) vel->data()[k] /= m;
    }
  }
  grid.u_saved = grid.u;
  grid.v_saved = grid.v;
}

void apply_body_forces(MacGrid2& grid, const SimConfig& config) {
  const double du = config.gravity.x * config.dt;
  const double dv = config.gravity.y * config.dt;
  for (std::size_t k = 0; k < grid.u.size(); ++k) {
    if (grid.mass_u.data()[k] > 0) grid.u.data()[k] += du;
  }
  for (std::size_t k = 0; k < grid.v.size(); ++k) {
    if (grid.mass_v.data()[k] > 0) grid.v.data()[k] += dv;
  }
}

void enforce_boundaries(MacGrid2& grid) {
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i <= grid.nx; ++i) {
      if (grid.label_at(i - 1, j) == CellLabel::solid || grid.label_at(i, j) == CellLabel::solid) {
        grid.u(i, j) = 0.0;
      }
    }
  }
  for (int j = 0; j <= grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      if (grid.label_at(i, j - 1) == CellLabel::solid || grid.label_at(i, j) == CellLabel::solid) {
        grid.v(i, j) = 0.0;
      }
    }
  }
}

void extrapolate_velocity(MacGrid2& grid, int layers) {
  Array2<std::uint8_t> known_u(grid.nx + 1, grid.ny), known_v(grid.nx, grid.ny + 1);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i <= grid.nx; ++i) known_u(i, j) = face_u_known(grid, i, j) ? 1 : 0;
  }
  for (int j = 0; j <= grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) known_v(i, j) = face_v_known(grid, i, j) ? 1 : 0;
  }
  extrapolate_component(grid.u, std::move(known_u), layers);
  extrapolate_component(grid.v, std::move(known_v), layers);
}

void g2p(const MacGrid2& grid, ParticleSet& particles, const SimConfig& config) {
  const ConstComponent comps[2] = {{&grid.u, &grid.u_saved, 0.0, 0.5},
                                   {&grid.v, &grid.v_saved, 0.5, 0.0}};
  const double c_scale = 4.0 / (grid.dx * grid.dx);
  const bool flip = config.scheme == Scheme::flip;
  const double alpha = config.flip_blend;
  for (std::size_t p = 0; p < particles.size(); ++p) {
    const Vec2 xp = particles.position[p];
    double pic[2] = {0, 0}, old[2] = {0, 0};
    Vec2 grad[2];
    for (int axis = 0; axis < 2; ++axis) {
      const ConstComponent& comp = comps[axis];
      for_stencil(*comp.vel, grid.dx, comp.ox, comp.oy, xp, [&](int i, int j, double wt, Vec2 xi) {
        const double vi = (*comp.vel)(i, j);
        pic[axis] += wt * vi;
        if (flip) {
          old[axis] += wt * (*comp.saved)(i, j);
        } else {
          const Vec2 d = xi - xp;
          grad[axis].x += wt * vi * d.x;
          grad[axis].y += wt * vi * d.y;
        }
      });
    }
    if (flip) {
      const Vec2 vp = particles.velocity[p];
      particles.velocity[p] = {alpha * (vp.x + (pic[0] - old[0])) + (1.0 - alpha) * pic[0],
                               alpha * (vp.y + (pic[1] - old[1])) + (1.0 - alpha) * pic[1]};
      particles.affine[p] = Mat2{};
    } else {
      particles.velocity[p] = {pic[0], pic[1]};
      particles.affine[p] = Mat2{c_scale * grad[0].x, c_scale * grad[0].y, c_scale * grad[1].x,
                                 c_scale * grad[1].y};
    }
  }
}

Vec2 sample_velocity(const MacGrid2& grid, Vec2 x) {
  const double gx = x.x / grid.dx, gy = x.y / grid.dx;
  return {bilinear(grid.u, gx, gy - 0.5), bilinear(grid.v, gx - 0.5, gy)};
}

void advect_particles(ParticleSet& particles, const MacGrid2& grid, double dt) {
  const double margin = 1.001 * grid.dx;
  const double xmax = grid.nx * grid.dx - margin, ymax = grid.ny * grid.dx - margin;
  for (auto& x : particles.position) {
    const Vec2 mid = x + (0.5 * dt) * sample_velocity(grid, x);
    const Vec2 next = x + dt * sample_velocity(grid, mid);
    x = {std::clamp(next.x, margin, xmax), std::clamp(next.y, margin, ymax)};
  }
}

double max_face_speed(const MacGrid2& grid) {
  double m = 0;
  for (double s : grid.u.data()) m = std::max(m, std::abs(s));
  for (double s : grid.v.data()) m = std::max(m, std::abs(s));
  return m;
}

}  // namespace tc::sim
