#pragma once

#include <array>
#include <functional>

#include "nsac/dof_map.hpp"
#include "nsac/sparse.hpp"

namespace nsac {

using ScalarFunction = std::function<double(Point2)>;
using VectorFunction = std::function<std::array<double, 2>(Point2)>;

/// Nodal interpolation onto the P2 phase space / P2 velocity space / P1
/// pressure space.
Vector interpolate_scalar(const DofMap& dofs, const ScalarFunction& f);
Vector interpolate_vector(const DofMap& dofs, const VectorFunction& f);

// Norms of discrete fields, evaluated by quadrature. Scalar arguments live in
// the P2 phase space, vector arguments in the P2 velocity space.
double l2_norm_scalar(const Discretization& disc, const Vector& phi);
double h1_seminorm_scalar(const Discretization& disc, const Vector& phi);
double l2_norm_vector(const Discretization& disc, const Vector& u);
double h1_seminorm_vector(const Discretization& disc, const Vector& u);
/// ||D(u)|| with D(u) = (grad u + grad u^T) / 2.
double strain_norm(const Discretization& disc, const Vector& u);
/// ||u . grad phi||.
double advection_norm(const Discretization& disc, const Vector& u, const Vector& phi);
/// ||p|| for a P1 pressure.
double l2_norm_pressure(const Discretization& disc, const Vector& p);

// Errors against analytic fields.
double l2_error_scalar(const Discretization& disc, const Vector& phi, const ScalarFunction& exact);
double h1_semierror_scalar(const Discretization& disc, const Vector& phi, const VectorFunction& exact_grad);
double l2_error_vector(const Discretization& disc, const Vector& u, const VectorFunction& exact);

}  // namespace nsac
