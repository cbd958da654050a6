#include "nsac/sparse.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace nsac {
namespace detail {

const TabulatedBasis& tabulation_for(const DofMap& dofs, const QuadratureRule& rule) {
  // Rules are process-lifetime statics, so their address is a stable key.
  static std::mutex mutex;
  static std::map<std::pair<const QuadratureRule*, bool>, TabulatedBasis> cache;
  const bool quadratic = dofs.space_kind != SpaceKind::scalar_linear;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(&rule, quadratic);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, quadratic ? tabulate_p2(rule) : tabulate_p1(rule)).first;
  return it->second;
}

void check_compatible(const Mesh& mesh, const DofMap& dofs) {
  if (dofs.n_cells() != mesh.n_triangles())
    throw std::invalid_argument("dof map has " + std::to_string(dofs.n_cells()) + " cells, mesh has " +
                                std::to_string(mesh.n_triangles()));
}

}  // namespace detail

void apply_dirichlet(SparseSystem& system, const DofMap& dofs, const BoundaryValue& values,
                     std::size_t offset) {
  const auto n = static_cast<std::size_t>(system.matrix.rows());
  if (system.matrix.cols() != system.matrix.rows() || system.size() != n || offset + dofs.dof_count > n)
    throw std::invalid_argument("apply_dirichlet: dimension mismatch");
  for (std::size_t d = 0; d < dofs.dof_count; ++d) {
    if (!dofs.dirichlet_mask[d]) continue;
    const auto row = static_cast<int>(offset + d);
    bool has_diagonal = false;
    for (SparseMatrix::InnerIterator it(system.matrix, row); it; ++it) {
      if (it.col() == row) {
        it.valueRef() = 1.0;
        has_diagonal = true;
      } else {
        it.valueRef() = 0.0;
      }
    }
    if (!has_diagonal) throw std::invalid_argument("apply_dirichlet: missing diagonal entry in row " + std::to_string(row));
    const int component = static_cast<int>(d / dofs.n_nodes);
    system.rhs[row] = values(dofs.dof_coordinates[d], component);
  }
}

struct DirectSolver::Impl {
  using ColMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
  Eigen::SparseLU<ColMatrix, Eigen::COLAMDOrdering<int>> lu;
  ColMatrix a;
  std::vector<int> pattern_outer;
  std::vector<int> pattern_inner;
  bool analyzed = false;

  // Threshold partial pivoting: accept a diagonal pivot within 1% of the
  // column maximum. Roughly halves U fill on the velocity-pressure systems;
  // the residual check below guards accuracy.
  Impl() { lu.setPivotThreshold(0.01); }

  bool same_pattern(const ColMatrix& m) const {
    if (!analyzed) return false;
    const auto nnz = static_cast<std::size_t>(m.nonZeros());
    if (pattern_inner.size() != nnz || pattern_outer.size() != static_cast<std::size_t>(m.outerSize() + 1))
      return false;
    return std::equal(pattern_outer.begin(), pattern_outer.end(), m.outerIndexPtr()) &&
           std::equal(pattern_inner.begin(), pattern_inner.end(), m.innerIndexPtr());
  }

  void factorize() {
    a.makeCompressed();
    if (!same_pattern(a)) {
      lu.analyzePattern(a);
      pattern_outer.assign(a.outerIndexPtr(), a.outerIndexPtr() + a.outerSize() + 1);
      pattern_inner.assign(a.innerIndexPtr(), a.innerIndexPtr() + a.nonZeros());
      analyzed = true;
    }
    lu.factorize(a);
    if (lu.info() != Eigen::Success) {
      analyzed = false;
      long pivot = -1;
      // SparseLU reports "... ZERO COLUMN AT k" with k one-based in the
      // column-permuted numbering.
      const std::string msg = lu.lastErrorMessage();
      const auto pos = msg.rfind(' ');
      if (pos != std::string::npos) {
        try {
          const long permuted = std::stol(msg.substr(pos + 1)) - 1;
          const auto& perm = lu.colsPermutation().indices();
          for (Eigen::Index c = 0; c < perm.size(); ++c)
            if (perm[c] == permuted) pivot = static_cast<long>(c);
        } catch (const std::exception&) {
        }
      }
      throw FactorizationError("sparse LU factorization failed: " + msg, pivot);
    }
  }
};

DirectSolver::DirectSolver() : impl_(std::make_unique<Impl>()) {}
DirectSolver::~DirectSolver() = default;
DirectSolver::DirectSolver(DirectSolver&&) noexcept = default;
DirectSolver& DirectSolver::operator=(DirectSolver&&) noexcept = default;

const Vector& DirectSolver::solve(SparseSystem& system) {
  const auto n = system.matrix.rows();
  if (system.matrix.cols() != n || system.rhs.size() != n)
    throw std::invalid_argument("DirectSolver: matrix must be square and match the rhs");
  const double bnorm = system.rhs.norm();
  impl_->a = system.matrix;
  impl_->factorize();
  if (bnorm == 0.0) {
    system.solution = Vector::Zero(n);
    last_residual_ = 0.0;
    return system.solution;
  }
  system.solution = impl_->lu.solve(system.rhs);
  Vector r = system.rhs - system.matrix * system.solution;
  last_residual_ = r.norm() / bnorm;
  for (int pass = 0; pass < 3 && last_residual_ > kResidualTolerance; ++pass) {
    system.solution += impl_->lu.solve(r);
    r = system.rhs - system.matrix * system.solution;
    last_residual_ = r.norm() / bnorm;
  }
  if (!std::isfinite(last_residual_) || last_residual_ > kResidualTolerance)
    throw std::runtime_error("DirectSolver: relative residual " + std::to_string(last_residual_) +
                             " above tolerance");
  return system.solution;
}

Vector solve_direct(SparseSystem& system) {
  DirectSolver solver;
  return solver.solve(system);
}

}  // namespace nsac
