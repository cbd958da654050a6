#include "nsac/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nsac {
namespace {

void add_orbit3(QuadratureRule& rule, double a, double w) {
  const double c = 1.0 - 2.0 * a;
  rule.points.push_back({a, a, c});
  rule.points.push_back({a, c, a});
  rule.points.push_back({c, a, a});
  rule.weights.insert(rule.weights.end(), 3, w);
}

void add_orbit6(QuadratureRule& rule, double a, double b, double w) {
  const double c = 1.0 - a - b;
  rule.points.push_back({a, b, c});
  rule.points.push_back({a, c, b});
  rule.points.push_back({b, a, c});
  rule.points.push_back({b, c, a});
  rule.points.push_back({c, a, b});
  rule.points.push_back({c, b, a});
  rule.weights.insert(rule.weights.end(), 6, w);
}

QuadratureRule make_centroid() {
  QuadratureRule r;
  r.degree = 1;
  r.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  r.weights.push_back(1.0);
  return r;
}

QuadratureRule make_degree2() {
  QuadratureRule r;
  r.degree = 2;
  add_orbit3(r, 1.0 / 6.0, 1.0 / 3.0);
  return r;
}

// Dunavant's 16-point rule, coordinates refined to full double precision.
QuadratureRule make_degree8() {
  QuadratureRule r;
  r.degree = 8;
  r.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  r.weights.push_back(0.1443156076777871682510911);
  add_orbit3(r, 0.4592925882927231560288155, 0.0950916342672846247938961);
  add_orbit3(r, 0.1705693077517602066222935, 0.1032173705347182502817916);
  add_orbit3(r, 0.05054722831703097545842355, 0.03245849762319808031092593);
  add_orbit6(r, 0.008394777409957605337213835, 0.2631128296346381134217858,
             0.02723031417443499426484469);
  return r;
}

// Returns (P_n(x), P_n'(x)).
std::array<double, 2> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

LineQuadratureRule make_gauss(int n) {
  LineQuadratureRule r;
  r.degree = 2 * n - 1;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(n, x)[1];
    // Map [-1, 1] to [0, 1].
    r.points.push_back(0.5 * (1.0 + x));
    r.weights.push_back(1.0 / ((1.0 - x * x) * dp * dp));
  }
  return r;
}

}  // namespace

const QuadratureRule& triangle_rule(int degree) {
  static const QuadratureRule centroid = make_centroid();
  static const QuadratureRule deg2 = make_degree2();
  static const QuadratureRule deg8 = make_degree8();
  if (degree <= 1) return centroid;
  if (degree == 2) return deg2;
  if (degree <= 8) return deg8;
  throw std::invalid_argument("triangle_rule: no rule of degree " + std::to_string(degree));
}

const QuadratureRule& default_triangle_rule() { return triangle_rule(8); }

const LineQuadratureRule& line_rule(int n_points) {
  static const LineQuadratureRule rules[5] = {make_gauss(1), make_gauss(2), make_gauss(3), make_gauss(4),
                                              make_gauss(5)};
  if (n_points < 1 || n_points > 5)
    throw std::invalid_argument("line_rule: unsupported point count " + std::to_string(n_points));
  return rules[n_points - 1];
}

}  // namespace nsac
