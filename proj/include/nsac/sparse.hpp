#pragma once

#include <Eigen/Sparse>

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsac/basis.hpp"
#include "nsac/dof_map.hpp"
#include "nsac/mesh.hpp"
#include "nsac/quadrature.hpp"

namespace nsac {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;
using Vector = Eigen::VectorXd;
using Triplet = Eigen::Triplet<double, int>;

/// Assembled linear system A x = b in compressed-row storage.
struct SparseSystem {
  SparseMatrix matrix;
  Vector rhs;
  Vector solution;

  std::size_t size() const { return static_cast<std::size_t>(rhs.size()); }
};

/// LU factorization failed. `pivot_index` is the offending column in the
/// original numbering, or -1 when the backend does not report one.
class FactorizationError : public std::runtime_error {
 public:
  FactorizationError(const std::string& what, long pivot_index)
      : std::runtime_error(what), pivot_index_(pivot_index) {}
  long pivot_index() const { return pivot_index_; }

 private:
  long pivot_index_;
};

/// Shape function value and physical gradient at a quadrature point.
struct ShapePoint {
  double value = 0.0;
  std::array<double, 2> grad{};
};

/// What a bilinear kernel sees at one quadrature point.
struct KernelPoint {
  std::size_t cell = 0;
  std::size_t q = 0;
  Point2 x;
};

/// Kernel integrand for test function i (component ci) against trial
/// function j (component cj). The assembler multiplies by the quadrature
/// weight times the cell area.
using BilinearKernel =
    std::function<double(const KernelPoint&, int ci, const ShapePoint& test, int cj, const ShapePoint& trial)>;

namespace detail {
const TabulatedBasis& tabulation_for(const DofMap& dofs, const QuadratureRule& rule);
void check_compatible(const Mesh& mesh, const DofMap& dofs);
}  // namespace detail

/// Generic cell-by-cell assembly: entry (i, j) = sum over cells and quadrature
/// points of w * area * kernel(test_i, trial_j). Cells and points are visited
/// in a fixed order, so repeated calls give bit-identical matrices.
template <class Kernel>
SparseMatrix assemble_bilinear(const Mesh& mesh, const DofMap& trial, const DofMap& test, Kernel&& kernel,
                               const QuadratureRule& rule = default_triangle_rule()) {
  detail::check_compatible(mesh, trial);
  detail::check_compatible(mesh, test);
  const TabulatedBasis& tb_trial = detail::tabulation_for(trial, rule);
  const TabulatedBasis& tb_test = detail::tabulation_for(test, rule);
  const int nt = trial.nodes_per_cell * trial.components;
  const int ns = test.nodes_per_cell * test.components;

  std::vector<Triplet> triplets;
  triplets.reserve(mesh.n_triangles() * static_cast<std::size_t>(nt) * ns);
  std::vector<double> local(static_cast<std::size_t>(nt) * ns);
  std::vector<ShapePoint> sp_test(test.nodes_per_cell), sp_trial(trial.nodes_per_cell);

  for (std::size_t cell = 0; cell < mesh.n_triangles(); ++cell) {
    const CellGeometry geo = cell_geometry(mesh, cell);
    std::fill(local.begin(), local.end(), 0.0);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const KernelPoint kp{cell, q, geo.map(rule.points[q])};
      const double jxw = rule.weights[q] * geo.area;
      for (int i = 0; i < test.nodes_per_cell; ++i)
        sp_test[i] = {tb_test.values[q][i], geo.grad(tb_test.ref_grads[q][i])};
      for (int j = 0; j < trial.nodes_per_cell; ++j)
        sp_trial[j] = {tb_trial.values[q][j], geo.grad(tb_trial.ref_grads[q][j])};
      for (int ci = 0; ci < test.components; ++ci)
        for (int i = 0; i < test.nodes_per_cell; ++i)
          for (int cj = 0; cj < trial.components; ++cj)
            for (int j = 0; j < trial.nodes_per_cell; ++j)
              local[(ci * test.nodes_per_cell + i) * nt + cj * trial.nodes_per_cell + j] +=
                  jxw * kernel(kp, ci, sp_test[i], cj, sp_trial[j]);
    }
    const auto test_nodes = test.nodes_of(cell);
    const auto trial_nodes = trial.nodes_of(cell);
    for (int ci = 0; ci < test.components; ++ci)
      for (int i = 0; i < test.nodes_per_cell; ++i)
        for (int cj = 0; cj < trial.components; ++cj)
          for (int j = 0; j < trial.nodes_per_cell; ++j)
            triplets.emplace_back(static_cast<int>(ci * test.n_nodes + test_nodes[i]),
                                  static_cast<int>(cj * trial.n_nodes + trial_nodes[j]),
                                  local[(ci * test.nodes_per_cell + i) * nt + cj * trial.nodes_per_cell + j]);
  }
  SparseMatrix m(static_cast<int>(test.dof_count), static_cast<int>(trial.dof_count));
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

/// Prescribed value for a constrained dof at its coordinate.
using BoundaryValue = std::function<double(Point2, int component)>;

/// Replaces the rows of every masked dof of `dofs` (shifted by `offset` in the
/// global system) with identity rows and sets the rhs to the prescribed value.
/// Columns are left untouched. The diagonal entry must exist in the pattern.
void apply_dirichlet(SparseSystem& system, const DofMap& dofs, const BoundaryValue& values,
                     std::size_t offset = 0);

/// Sparse LU solve with a relative residual check. Keeps the symbolic
/// analysis between calls while the sparsity pattern is unchanged.
class DirectSolver {
 public:
  DirectSolver();
  ~DirectSolver();
  DirectSolver(DirectSolver&&) noexcept;
  DirectSolver& operator=(DirectSolver&&) noexcept;

  /// Solves system.matrix * x = system.rhs, stores x in system.solution and
  /// returns it. Throws FactorizationError on singular matrices and
  /// std::runtime_error if the residual check fails after refinement.
  const Vector& solve(SparseSystem& system);

  double last_relative_residual() const { return last_residual_; }
  static constexpr double kResidualTolerance = 1e-10;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  double last_residual_ = 0.0;
};

/// One-off convenience wrapper around DirectSolver.
Vector solve_direct(SparseSystem& system);

}  // namespace nsac
