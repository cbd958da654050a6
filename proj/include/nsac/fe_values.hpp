#pragma once

#include <array>
#include <span>
#include <vector>

#include "nsac/basis.hpp"
#include "nsac/mesh.hpp"
#include "nsac/quadrature.hpp"
#include "nsac/sparse.hpp"

namespace nsac {

/// P1 and P2 shape data of one cell at the points of a quadrature rule,
/// recomputed by reinit(). Field evaluation helpers take the coefficient
/// vector, the cell's scalar node ids and an optional component offset.
class CellValues {
 public:
  explicit CellValues(const QuadratureRule& rule = default_triangle_rule());

  void reinit(const Mesh& mesh, std::size_t cell);

  std::size_t n_points() const { return rule_->size(); }
  const CellGeometry& geometry() const { return geo_; }
  Point2 point(std::size_t q) const { return points_[q]; }
  double jxw(std::size_t q) const { return jxw_[q]; }

  double p2(std::size_t q, int i) const { return p2_.values[q][i]; }
  const std::array<double, 2>& p2_grad(std::size_t q, int i) const { return p2_grads_[q * 6 + i]; }
  double p1(std::size_t q, int i) const { return p1_.values[q][i]; }
  const std::array<double, 2>& p1_grad(std::size_t q, int i) const { return p1_grads_[q * 3 + i]; }

  double p2_value(const Vector& c, std::span<const int> nodes, std::size_t q, std::size_t offset = 0) const {
    double v = 0.0;
    for (int i = 0; i < 6; ++i) v += c[offset + nodes[i]] * p2_.values[q][i];
    return v;
  }
  std::array<double, 2> p2_gradient(const Vector& c, std::span<const int> nodes, std::size_t q,
                                    std::size_t offset = 0) const {
    std::array<double, 2> g{0.0, 0.0};
    for (int i = 0; i < 6; ++i) {
      const double ci = c[offset + nodes[i]];
      g[0] += ci * p2_grads_[q * 6 + i][0];
      g[1] += ci * p2_grads_[q * 6 + i][1];
    }
    return g;
  }
  double p1_value(const Vector& c, std::span<const int> nodes, std::size_t q) const {
    double v = 0.0;
    for (int i = 0; i < 3; ++i) v += c[nodes[i]] * p1_.values[q][i];
    return v;
  }

 private:
  const QuadratureRule* rule_;
  TabulatedBasis p2_;
  TabulatedBasis p1_;
  CellGeometry geo_;
  std::vector<Point2> points_;
  std::vector<double> jxw_;
  std::vector<std::array<double, 2>> p2_grads_;
  std::vector<std::array<double, 2>> p1_grads_;
};

}  // namespace nsac
