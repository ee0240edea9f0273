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

// Cell-centered 5-point Poisson systems and their conjugate gradient solvers.
//
// Unknowns live on the cells of an nx x ny grid marked `unknown`. A
// neighbor marked `dirichlet` holds value 0 and adds 1 to the diagonal; a
// `neumann` neighbor is dropped. The operator is (A p)_c = diag_c p_c -
// sum over unknown neighbors of p_n, symmetric positive semi-definite.
// Vectors are full nx*ny arrays (index i + nx*j); entries of non-unknown
// cells are ignored on input and zero on output.

#pragma once

#include <cstdint>
#include <vector>

#include "tcore/common/error.h"
#include "tcore/sim/array2.h"

namespace tc::sim {

enum class CellKind : std::uint8_t { unknown = 0, dirichlet = 1, neumann = 2 };

/// Off-diagonal coefficients and diagonal of one row.
struct Stencil {
  double diag = 0;
  double west = 0;
  double east = 0;
  double south = 0;
  double north = 0;
};

class PoissonSystem {
 public:
  /// Unit 5-point operator from cell kinds. `outside` is the kind of the
  /// cells beyond the grid edge.
  PoissonSystem(Array2<CellKind> kinds, CellKind outside);

  /// Explicit per-cell stencils for the unknown cells. Throws SolverError if
  /// the coupling between two unknown cells differs in the two directions,
  /// or if a row couples to a cell that is not unknown.
  PoissonSystem(Array2<CellKind> kinds, Array2<Stencil> stencils);

  /// nx x ny all-unknown grid with Dirichlet outside.
  static PoissonSystem all_unknown(int nx, int ny);

  int nx() const { return kinds_.nx(); }
  int ny() const { return kinds_.ny(); }
  std::size_t size() const { return kinds_.size(); }
  const Array2<CellKind>& kinds() const { return kinds_; }
  const Array2<Stencil>& stencils() const { return stencils_; }
  CellKind outside() const { return outside_; }
  bool is_unknown(std::size_t k) const { return kinds_.data()[k] == CellKind::unknown; }

  /// y = A x on unknown cells, 0 elsewhere.
  void apply(const std::vector<double>& x, std::vector<double>& y) const;

  /// Connected sets of unknown cells that have no Dirichlet contact. On these
  /// the operator is singular (constants are in its null space).
  const std::vector<std::vector<std::size_t>>& floating_components() const { return floating_; }

 private:
  void find_floating_components();

  Array2<CellKind> kinds_;
  Array2<Stencil> stencils_;
  CellKind outside_ = CellKind::dirichlet;
  std::vector<std::vector<std::size_t>> floating_;
};

enum class Preconditioner { none, multigrid };

struct SolveOptions {
  double tolerance = 1e-8;  // on ||r||_inf / ||b||_inf
  int max_iters = 200;
  Preconditioner preconditioner = Preconditioner::multigrid;
};

struct SolveStats {
  int iterations = 0;
  double relative_residual = 0;           // final true residual, infinity norm
  std::vector<double> residual_history;   // ||r||_inf / ||b||_inf per iteration, starting at 1
  int levels = 0;                         // multigrid levels, 0 without preconditioner
};

/// Non-convergence or breakdown; carries the residual history.
class SolverError : public SimulationError {
 public:
  SolverError(const std::string& message, std::vector<double> history = {})
      : SimulationError(message), history_(std::move(history)) {}
  const std::vector<double>& residual_history() const { return history_; }

 private:
  std::vector<double> history_;
};

/// Preconditioned conjugate gradient from a zero initial guess. Converged
/// when the recomputed residual satisfies ||b - A x||_inf <= tolerance *
/// ||b||_inf. On floating components the right-hand side is first projected
/// to zero mean and the solution is returned with zero mean. A zero
/// right-hand side returns zero after 0 iterations.
///
/// The multigrid preconditioner is one V-cycle: damped Jacobi (omega 2/3),
/// 2 pre- and 2 post-sweeps, bilinear prolongation P, restriction P^T / 4,
/// 5-point operators rediscretized on every level, coarsening until
/// min(nx, ny) <= 4, and 50 Jacobi sweeps on the coarsest level.
std::vector<double> solve(const PoissonSystem& system, const std::vector<double>& rhs,
                          const SolveOptions& options, SolveStats* stats = nullptr);

/// Number of multigrid levels built for an nx x ny grid.
int multigrid_levels(int nx, int ny);

}  // namespace tc::sim
