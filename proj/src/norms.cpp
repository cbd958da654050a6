#include "nsac/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "nsac/fe_values.hpp"

namespace nsac {

namespace {

void check_size(const Vector& v, const DofMap& dofs, const char* what) {
  if (v.size() != static_cast<Eigen::Index>(dofs.dof_count))
    throw std::invalid_argument(std::string(what) + ": vector size does not match the dof map");
}

// Sum over cells and quadrature points of jxw * f(cv, nodes, q).
template <class F>
double integrate(const Discretization& disc, F&& f) {
  CellValues cv;
  double sum = 0.0;
  for (std::size_t cell = 0; cell < disc.mesh.n_triangles(); ++cell) {
    cv.reinit(disc.mesh, cell);
    const auto nodes = disc.phase.nodes_of(cell);
    for (std::size_t q = 0; q < cv.n_points(); ++q) sum += cv.jxw(q) * f(cv, nodes, q);
  }
  return sum;
}

}  // namespace

Vector interpolate_scalar(const DofMap& dofs, const ScalarFunction& f) {
  if (dofs.components != 1) throw std::invalid_argument("interpolate_scalar: vector-valued dof map");
  Vector v(static_cast<Eigen::Index>(dofs.dof_count));
  for (std::size_t d = 0; d < dofs.dof_count; ++d) v[static_cast<Eigen::Index>(d)] = f(dofs.dof_coordinates[d]);
  return v;
}

Vector interpolate_vector(const DofMap& dofs, const VectorFunction& f) {
  if (dofs.components != 2) throw std::invalid_argument("interpolate_vector: scalar dof map");
  Vector v(static_cast<Eigen::Index>(dofs.dof_count));
  for (std::size_t n = 0; n < dofs.n_nodes; ++n) {
    const auto val = f(dofs.dof_coordinates[n]);
    v[static_cast<Eigen::Index>(n)] = val[0];
    v[static_cast<Eigen::Index>(dofs.n_nodes + n)] = val[1];
  }
  return v;
}

double l2_norm_scalar(const Discretization& disc, const Vector& phi) {
  check_size(phi, disc.phase, "l2_norm_scalar");
  return std::sqrt(integrate(disc, [&](const CellValues& cv, std::span<const int> nodes, std::size_t q) {
    const double v = cv.p2_value(phi, nodes, q);
    return v * v;
  }));
}

double h1_seminorm_scalar(const Discretization& disc, const Vector& phi) {
  check_size(phi, disc.phase, "h1_seminorm_scalar");
  return std::sqrt(integrate(disc, [&](const CellValues& cv, std::span<const int> nodes, std::size_t q) {
    const auto g = cv.p2_gradient(phi, nodes, q);
    return g[0] * g[0] + g[1] * g[1];
  }));
}

double l2_norm_vector(const Discretization& disc, const Vector& u) {
  check_size(u, disc.velocity, "l2_norm_vector");
  const std::size_t off = disc.velocity.n_nodes;
  return std::sqrt(integrate(disc, [&](const CellValues& cv, std::span<const int> nodes, std::size_t q) {
    const double a = cv.p2_value(u, nodes, q), b = cv.p2_value(u, nodes, q, off);
    return a * a + b * b;
  }));
}

double h1_seminorm_vector(const Discretization& disc, const Vector& u) {
  check_size(u, disc.velocity, "h1_seminorm_vector");
  const std::size_t off = disc.velocity.n_nodes;
  return std::sqrt(integrate(disc, [&](const CellValues& cv, std::span<const int> nodes, std::size_t q) {
    const auto gx = cv.p2_gradient(u, nodes, q), gy = cv.p2_gradient(u, nodes, q, off);
    return gx[0] * gx[0] + gx[1] * gx[1] + gy[0] * gy[0] + gy[1] * gy[1];
  }));
}

double strain_norm(const Discretization& disc, const Vector& u) {
  check_size(u, disc.velocity, "strain_norm");
  const std::size_t off = disc.velocity.n_nodes;
  return std::sqrt(integrate(disc, [&](const CellValues& cv, std::span<const int> nodes, std::size_t q) {
    const auto gx = cv.p2_gradient(u, nodes, q), gy = cv.p2_gradient(u, nodes, q, off);
    const double off_diag = 0.5 * (gx[1] + gy[0]);
    return gx[0] * gx[0] + gy[1] * gy[1] + 2.0 * off_diag * off_diag;
  }));
}

double advection_norm(const Discretization& disc, const Vector& u, const Vector& phi) {
  check_size(u, disc.velocity, "advection_norm");
  check_size(phi, disc.phase, "advection_norm");
  const std::size_t off = disc.velocity.n_nodes;
  return std::sqrt(integrate(disc, [&](const CellValues& cv, std::span<const int> nodes, std::size_t q) {
    const auto g = cv.p2_gradient(phi, nodes, q);
    const double v = cv.p2_value(u, nodes, q) * g[0] + cv.p2_value(u, nodes, q, off) * g[1];
    return v * v;
  }));
}

double l2_norm_pressure(const Discretization& disc, const Vector& p) {
  check_size(p, disc.pressure, "l2_norm_pressure");
  CellValues cv;
  double sum = 0.0;
  for (std::size_t cell = 0; cell < disc.mesh.n_triangles(); ++cell) {
    cv.reinit(disc.mesh, cell);
    const auto nodes = disc.pressure.nodes_of(cell);
    for (std::size_t q = 0; q < cv.n_points(); ++q) {
      const double v = cv.p1_value(p, nodes, q);
      sum += cv.jxw(q) * v * v;
    }
  }
  return std::sqrt(sum);
}

double l2_error_scalar(const Discretization& disc, const Vector& phi, const ScalarFunction& exact) {
  check_size(phi, disc.phase, "l2_error_scalar");
  return std::sqrt(integrate(disc, [&](const CellValues& cv, std::span<const int> nodes, std::size_t q) {
    const double e = cv.p2_value(phi, nodes, q) - exact(cv.point(q));
    return e * e;
  }));
}

double h1_semierror_scalar(const Discretization& disc, const Vector& phi, const VectorFunction& exact_grad) {
  check_size(phi, disc.phase, "h1_semierror_scalar");
  return std::sqrt(integrate(disc, [&](const CellValues& cv, std::span<const int> nodes, std::size_t q) {
    const auto g = cv.p2_gradient(phi, nodes, q);
    const auto e = exact_grad(cv.point(q));
    return (g[0] - e[0]) * (g[0] - e[0]) + (g[1] - e[1]) * (g[1] - e[1]);
  }));
}

double l2_error_vector(const Discretization& disc, const Vector& u, const VectorFunction& exact) {
  check_size(u, disc.velocity, "l2_error_vector");
  const std::size_t off = disc.velocity.n_nodes;
  return std::sqrt(integrate(disc, [&](const CellValues& cv, std::span<const int> nodes, std::size_t q) {
    const auto e = exact(cv.point(q));
    const double a = cv.p2_value(u, nodes, q) - e[0], b = cv.p2_value(u, nodes, q, off) - e[1];
    return a * a + b * b;
  }));
}

}  // namespace nsac
