#include "nsac/basis.hpp"

#include <stdexcept>

namespace nsac {
namespace {

template <class Value, class Grad>
TabulatedBasis tabulate(const QuadratureRule& rule, int n_shape, Value value, Grad grad) {
  TabulatedBasis tab;
  tab.n_shape = n_shape;
  tab.values.resize(rule.size());
  tab.ref_grads.resize(rule.size());
  for (std::size_t q = 0; q < rule.size(); ++q) {
    for (int i = 0; i < n_shape; ++i) {
      tab.values[q].push_back(value(i, rule.points[q]));
      tab.ref_grads[q].push_back(grad(i, rule.points[q]));
    }
  }
  return tab;
}

}  // namespace

TabulatedBasis tabulate_p1(const QuadratureRule& rule) {
  return tabulate(rule, 3, shape::p1_value, shape::p1_ref_grad);
}

TabulatedBasis tabulate_p2(const QuadratureRule& rule) {
  return tabulate(rule, 6, shape::p2_value, shape::p2_ref_grad);
}

CellGeometry cell_geometry(const Mesh& mesh, std::size_t t) {
  const auto& tri = mesh.triangles[t];
  const Point2 a = mesh.vertices[tri[0]];
  const Point2 b = mesh.vertices[tri[1]];
  const Point2 c = mesh.vertices[tri[2]];
  CellGeometry g;
  g.origin = a;
  g.jac = {b.x - a.x, b.y - a.y, c.x - a.x, c.y - a.y};
  const double det = g.jac[0] * g.jac[3] - g.jac[2] * g.jac[1];
  if (!(det > 0.0)) throw std::invalid_argument("cell_geometry: triangle with non-positive area");
  g.area = 0.5 * det;
  // J^{-1} = [J11, -J01; -J10, J00] / det, transposed.
  g.inv_jac_t = {g.jac[3] / det, -g.jac[1] / det, -g.jac[2] / det, g.jac[0] / det};
  return g;
}

}  // namespace nsac
