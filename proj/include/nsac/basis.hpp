#pragma once

#include <array>
#include <vector>

#include "nsac/mesh.hpp"
#include "nsac/quadrature.hpp"

namespace nsac {

/// Lagrange P1 / P2 shape functions on the reference triangle (0,0), (1,0),
/// (0,1), written in barycentric coordinates l0 = 1 - xi - eta, l1 = xi,
/// l2 = eta. P2 local node order: vertices 0, 1, 2, then midpoints of edges
/// (0,1), (1,2), (2,0).
namespace shape {

inline constexpr std::array<std::array<double, 2>, 3> kBaryGrad = {{{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}}};
inline constexpr std::array<std::array<int, 2>, 3> kEdgeVertices = {{{0, 1}, {1, 2}, {2, 0}}};

inline double p1_value(int i, const std::array<double, 3>& l) { return l[i]; }

inline std::array<double, 2> p1_ref_grad(int i, const std::array<double, 3>&) { return kBaryGrad[i]; }

inline double p2_value(int i, const std::array<double, 3>& l) {
  if (i < 3) return l[i] * (2.0 * l[i] - 1.0);
  const auto [a, b] = kEdgeVertices[i - 3];
  return 4.0 * l[a] * l[b];
}

inline std::array<double, 2> p2_ref_grad(int i, const std::array<double, 3>& l) {
  if (i < 3) {
    const double s = 4.0 * l[i] - 1.0;
    return {s * kBaryGrad[i][0], s * kBaryGrad[i][1]};
  }
  const auto [a, b] = kEdgeVertices[i - 3];
  return {4.0 * (l[b] * kBaryGrad[a][0] + l[a] * kBaryGrad[b][0]),
          4.0 * (l[b] * kBaryGrad[a][1] + l[a] * kBaryGrad[b][1])};
}

}  // namespace shape

/// Shape values and reference gradients tabulated at the points of a rule.
struct TabulatedBasis {
  int n_shape = 0;
  std::vector<std::vector<double>> values;                      // [q][i]
  std::vector<std::vector<std::array<double, 2>>> ref_grads;    // [q][i]
};

TabulatedBasis tabulate_p1(const QuadratureRule& rule);
TabulatedBasis tabulate_p2(const QuadratureRule& rule);

/// Affine map of one triangle. Physical gradient = J^{-T} * reference gradient.
struct CellGeometry {
  Point2 origin;
  std::array<double, 4> jac{};         // column-major J = [x1-x0, x2-x0; y1-y0, y2-y0]
  std::array<double, 4> inv_jac_t{};   // row-major J^{-T}
  double area = 0.0;

  Point2 map(const std::array<double, 3>& l) const {
    return {origin.x + jac[0] * l[1] + jac[2] * l[2], origin.y + jac[1] * l[1] + jac[3] * l[2]};
  }
  std::array<double, 2> grad(const std::array<double, 2>& ref) const {
    return {inv_jac_t[0] * ref[0] + inv_jac_t[1] * ref[1], inv_jac_t[2] * ref[0] + inv_jac_t[3] * ref[1]};
  }
};

CellGeometry cell_geometry(const Mesh& mesh, std::size_t t);

}  // namespace nsac
