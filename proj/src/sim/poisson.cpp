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

#include "tcore/sim/poisson.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <optional>

namespace tc::sim {
namespace {

constexpr double kJacobiOmega = 2.0 / 3.0;
constexpr int kSmoothSweeps = 2;
constexpr int kCoarsestSweeps = 50;
constexpr int kCoarsestSize = 4;

CellKind kind_at(const Array2<CellKind>& kinds, CellKind outside, int i, int j) {
  return kinds.in_range(i, j) ? kinds(i, j) : outside;
}

Array2<Stencil> unit_stencils(const Array2<CellKind>& kinds, CellKind outside, double scale) {
  Array2<Stencil> st(kinds.nx(), kinds.ny());
  for (int j = 0; j < kinds.ny(); ++j) {
    for (int i = 0; i < kinds.nx(); ++i) {
      if (kinds(i, j) != CellKind::unknown) continue;
      Stencil& s = st(i, j);
      auto couple = [&](int ii, int jj, double& off) {
        switch (kind_at(kinds, outside, ii, jj)) {
          case CellKind::unknown: off = -scale; s.diag += scale; break;
          case CellKind::dirichlet: s.diag += scale; break;
          case CellKind::neumann: break;
        }
      };
      couple(i - 1, j, s.west);
      couple(i + 1, j, s.east);
      couple(i, j - 1, s.south);
      couple(i, j + 1, s.north);
    }
  }
  return st;
}

void apply_stencils(const Array2<CellKind>& kinds, const Array2<Stencil>& st,
                    const std::vector<double>& x, std::vector<double>& y) {
  const int nx = kinds.nx(), ny = kinds.ny();
  y.assign(x.size(), 0.0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t k = kinds.index(i, j);
      if (kinds.data()[k] != CellKind::unknown) continue;
      const Stencil& s = st.data()[k];
      double acc = s.diag * x[k];
      if (s.west != 0) acc += s.west * x[k - 1];
      if (s.east != 0) acc += s.east * x[k + 1];
      if (s.south != 0) acc += s.south * x[k - static_cast<std::size_t>(nx)];
      if (s.north != 0) acc += s.north * x[k + static_cast<std::size_t>(nx)];
      y[k] = acc;
    }
  }
}

double inf_norm(const std::vector<double>& v) {
  double m = 0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

void remove_means(const std::vector<std::vector<std::size_t>>& comps, std::vector<double>& v) {
  for (const auto& comp : comps) {
    double sum = 0;
    for (std::size_t k : comp) sum += v[k];
    const double mean = sum / static_cast<double>(comp.size());
    for (std::size_t k : comp) v[k] -= mean;
  }
}

struct Level {
  Array2<CellKind> kinds;
  Array2<Stencil> stencils;
  // Scratch, sized nx*ny.
  std::vector<double> x, b, r, tmp;
};

Array2<CellKind> coarsen(const Array2<CellKind>& fine) {
  const int cnx = (fine.nx() + 1) / 2, cny = (fine.ny() + 1) / 2;
  Array2<CellKind> coarse(cnx, cny, CellKind::neumann);
  for (int J = 0; J < cny; ++J) {
    for (int I = 0; I < cnx; ++I) {
      bool any_dirichlet = false, any_unknown = false;
      for (int b = 0; b < 2; ++b) {
        for (int a = 0; a < 2; ++a) {
          const int i = 2 * I + a, j = 2 * J + b;
          if (!fine.in_range(i, j)) continue;
          any_dirichlet |= fine(i, j) == CellKind::dirichlet;
          any_unknown |= fine(i, j) == CellKind::unknown;
        }
      }
      coarse(I, J) = any_dirichlet  ? CellKind::dirichlet
                     : any_unknown ? CellKind::unknown
                                   : CellKind::neumann;
    }
  }
  return coarse;
}

// Calls fn(coarse_index, weight) for the coarse cells feeding fine cell (i, j).
template <typename Fn>
void prolongation_row(const Array2<CellKind>& coarse, int i, int j, Fn&& fn) {
  const int I = i / 2, J = j / 2;
  const int si = (i % 2 == 0) ? -1 : 1, sj = (j % 2 == 0) ? -1 : 1;
  const struct {
    int di, dj;
    double w;
  } taps[4] = {{0, 0, 9.0 / 16.0}, {si, 0, 3.0 / 16.0}, {0, sj, 3.0 / 16.0}, {si, sj, 1.0 / 16.0}};
  for (const auto& t : taps) {
    const int ci = I + t.di, cj = J + t.dj;
    if (!coarse.in_range(ci, cj) || coarse(ci, cj) != CellKind::unknown) continue;
    fn(coarse.index(ci, cj), t.w);
  }
}

class Multigrid {
 public:
  explicit Multigrid(const PoissonSystem& system) {
    levels_.push_back(make_level(system.kinds(), system.stencils()));
    Array2<CellKind> kinds = system.kinds();
    double scale = 1.0;
    while (std::min(kinds.nx(), kinds.ny()) > kCoarsestSize) {
      kinds = coarsen(kinds);
      scale *= 0.25;
      levels_.push_back(make_level(kinds, unit_stencils(kinds, system.outside(), scale)));
    }
  }

  int level_count() const { return static_cast<int>(levels_.size()); }

  void apply(const std::vector<double>& r, std::vector<double>& z) {
    levels_[0].b = r;
    vcycle(0);
    z = levels_[0].x;
  }

 private:
  static Level make_level(Array2<CellKind> kinds, Array2<Stencil> stencils) {
    const std::size_t n = kinds.size();
    return Level{std::move(kinds), std::move(stencils), std::vector<double>(n),
                 std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
  }

  static void jacobi(Level& L, int sweeps) {
    for (int s = 0; s < sweeps; ++s) {
      apply_stencils(L.kinds, L.stencils, L.x, L.tmp);
      for (std::size_t k = 0; k < L.x.size(); ++k) {
        const double d = L.stencils.data()[k].diag;
        if (L.kinds.data()[k] != CellKind::unknown || d == 0) continue;
        L.x[k] += kJacobiOmega * (L.b[k] - L.tmp[k]) / d;
      }
    }
  }

  void vcycle(std::size_t l) {
    Level& L = levels_[l];
    std::fill(L.x.begin(), L.x.end(), 0.0);
    if (l + 1 == levels_.size()) {
      jacobi(L, kCoarsestSweeps);
      return;
    }
    jacobi(L, kSmoothSweeps);
    apply_stencils(L.kinds, L.stencils, L.x, L.tmp);
    for (std::size_t k = 0; k < L.r.size(); ++k) {
      L.r[k] = L.kinds.data()[k] == CellKind::unknown ? L.b[k] - L.tmp[k] : 0.0;
    }

    Level& C = levels_[l + 1];
    std::fill(C.b.begin(), C.b.end(), 0.0);
    for (int j = 0; j < L.kinds.ny(); ++j) {
      for (int i = 0; i < L.kinds.nx(); ++i) {
        const std::size_t k = L.kinds.index(i, j);
        if (L.kinds.data()[k] != CellKind::unknown) continue;
        const double rk = L.r[k];
        prolongation_row(C.kinds, i, j, [&](std::size_t c, double w) { C.b[c] += 0.25 * w * rk; });
      }
    }
    vcycle(l + 1);
    for (int j = 0; j < L.kinds.ny(); ++j) {
      for (int i = 0; i < L.kinds.nx(); ++i) {
        const std::size_t k = L.kinds.index(i, j);
        if (L.kinds.data()[k] != CellKind::unknown) continue;
        double e = 0;
        prolongation_row(C.kinds, i, j, [&](std::size_t c, double w) { e += w * C.x[c]; });
        L.x[k] += e;
      }
    }
    jacobi(L, kSmoothSweeps);
  }

  std::vector<Level> levels_;
};

}  // namespace

PoissonSystem::PoissonSystem(Array2<CellKind> kinds, CellKind outside)
    : kinds_(std::move(kinds)), outside_(outside) {
  stencils_ = unit_stencils(kinds_, outside_, 1.0);
  find_floating_components();
}

PoissonSystem::PoissonSystem(Array2<CellKind> kinds, Array2<Stencil> stencils)
    : kinds_(std::move(kinds)), stencils_(std::move(stencils)), outside_(CellKind::neumann) {
  if (stencils_.nx() != kinds_.nx() || stencils_.ny() != kinds_.ny()) {
    throw SolverError("stencil array does not match the cell grid");
  }
  const int nx = kinds_.nx(), ny = kinds_.ny();
  auto unknown = [&](int i, int j) {
    return kinds_.in_range(i, j) && kinds_(i, j) == CellKind::unknown;
  };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!unknown(i, j)) {
        stencils_(i, j) = Stencil{};
        continue;
      }
      const Stencil& s = stencils_(i, j);
      const struct {
        double off;
        int ii, jj;
        double Stencil::*back;
      } links[4] = {{s.west, i - 1, j, &Stencil::east},
                    {s.east, i + 1, j, &Stencil::west},
                    {s.south, i, j - 1, &Stencil::north},
                    {s.north, i, j + 1, &Stencil::south}};
      for (const auto& l : links) {
        if (l.off == 0) continue;
        if (!unknown(l.ii, l.jj)) {
          throw SolverError(fmt::format("cell ({}, {}) couples to non-unknown cell ({}, {})", i, j,
                                        l.ii, l.jj));
        }
        const double back = stencils_(l.ii, l.jj).*l.back;
        if (back != l.off) {
          throw SolverError(fmt::format(
              "operator is not symmetric: coupling ({}, {})->({}, {}) is {} but the reverse is {}",
              i, j, l.ii, l.jj, l.off, back));
        }
      }
    }
  }
  find_floating_components();
}

PoissonSystem PoissonSystem::all_unknown(int nx, int ny) {
  return PoissonSystem(Array2<CellKind>(nx, ny, CellKind::unknown), CellKind::dirichlet);
}

void PoissonSystem::apply(const std::vector<double>& x, std::vector<double>& y) const {
  apply_stencils(kinds_, stencils_, x, y);
}

void PoissonSystem::find_floating_components() {
  floating_.clear();
  const int nx = kinds_.nx();
  std::vector<std::uint8_t> seen(kinds_.size(), 0);
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < kinds_.size(); ++start) {
    if (seen[start] || !is_unknown(start)) continue;
    std::vector<std::size_t> comp;
    bool grounded = false;
    stack.push_back(start);
    seen[start] = 1;
    while (!stack.empty()) {
      const std::size_t k = stack.back();
      stack.pop_back();
      comp.push_back(k);
      const Stencil& s = stencils_.data()[k];
      const double row_sum = s.diag + s.west + s.east + s.south + s.north;
      if (row_sum > 1e-12 * std::abs(s.diag)) grounded = true;
      const std::pair<double, std::size_t> nbrs[4] = {
          {s.west, k - 1}, {s.east, k + 1}, {s.south, k - static_cast<std::size_t>(nx)},
          {s.north, k + static_cast<std::size_t>(nx)}};
      for (const auto& [off, n] : nbrs) {
        if (off == 0 || seen[n]) continue;
        seen[n] = 1;
        stack.push_back(n);
      }
    }
    if (!grounded) {
      std::sort(comp.begin(), comp.end());
      floating_.push_back(std::move(comp));
    }
  }
}

int multigrid_levels(int nx, int ny) {
  int levels = 1;
  while (std::min(nx, ny) > kCoarsestSize) {
    nx = (nx + 1) / 2;
    ny = (ny + 1) / 2;
    ++levels;
  }
  return levels;
}

std::vector<double> solve(const PoissonSystem& system, const std::vector<double>& rhs,
                          const SolveOptions& options, SolveStats* stats_out) {
  const std::size_t n = system.size();
  if (rhs.size() != n) {
    throw SolverError(fmt::format("right-hand side has {} entries, system has {}", rhs.size(), n));
  }
  SolveStats stats;
  std::vector<double> b(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    if (system.is_unknown(k)) b[k] = rhs[k];
  }
  remove_means(system.floating_components(), b);
  std::vector<double> x(n, 0.0);
  const double bnorm = inf_norm(b);
  if (bnorm == 0) {
    if (stats_out) *stats_out = stats;
    return x;
  }

  std::optional<Multigrid> mg;
  if (options.preconditioner == Preconditioner::multigrid) {
    mg.emplace(system);
    stats.levels = mg->level_count();
  }
  auto precondition = [&](const std::vector<double>& r, std::vector<double>& z) {
    if (mg) {
      mg->apply(r, z);
    } else {
      z = r;
    }
    remove_means(system.floating_components(), z);
  };

  std::vector<double> r = b, z(n), p(n), q(n);
  precondition(r, z);
  p = z;
  double rz = dot(r, z);
  stats.residual_history.push_back(1.0);
  bool converged = false;
  for (int it = 1; it <= options.max_iters; ++it) {
    system.apply(p, q);
    const double pq = dot(p, q);
    if (!(pq > 0)) {
      throw SolverError(fmt::format("conjugate gradient breakdown at iteration {} (p.Ap = {})", it, pq),
                        stats.residual_history);
    }
    const double alpha = rz / pq;
    for (std::size_t k = 0; k < n; ++k) {
      x[k] += alpha * p[k];
      r[k] -= alpha * q[k];
    }
    double rel = inf_norm(r) / bnorm;
    if (rel <= options.tolerance) {
      system.apply(x, q);
      for (std::size_t k = 0; k < n; ++k) r[k] = system.is_unknown(k) ? b[k] - q[k] : 0.0;
      rel = inf_norm(r) / bnorm;
      if (rel <= options.tolerance) {
        stats.residual_history.push_back(rel);
        stats.iterations = it;
        stats.relative_residual = rel;
        converged = true;
        break;
      }
    }
    stats.residual_history.push_back(rel);
    precondition(r, z);
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
  }
  if (!converged) {
    throw SolverError(
        fmt::format("pressure solve did not converge in {} iterations (relative residual {:.3e}, "
                    "tolerance {:.3e})",
                    options.max_iters, stats.residual_history.back(), options.tolerance),
        stats.residual_history);
  }
  remove_means(system.floating_components(), x);
  if (stats_out) *stats_out = stats;
  return x;
}

}  // namespace tc::sim
