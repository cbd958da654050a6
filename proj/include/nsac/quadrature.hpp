#pragma once

#include <array>
#include <vector>

namespace nsac {

/// Symmetric quadrature on the reference triangle. Points are barycentric
/// coordinates (l0, l1, l2); weights sum to 1, so the integral over a physical
/// triangle is area * sum(w_q f(x_q)).
struct QuadratureRule {
  int degree = 0;
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

/// Gauss-Legendre rule on [0, 1]; weights sum to 1.
struct LineQuadratureRule {
  int degree = 0;
  std::vector<double> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

/// Lowest-cost available rule exact for polynomials of total degree
/// `degree` (supported: up to 8). Throws std::invalid_argument above that.
const QuadratureRule& triangle_rule(int degree);

/// Default rule for all scheme forms: degree 8.
const QuadratureRule& default_triangle_rule();

/// Gauss-Legendre rule with n points (1 <= n <= 5), exact to degree 2n-1.
const LineQuadratureRule& line_rule(int n_points);

}  // namespace nsac
