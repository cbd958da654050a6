#include "nsac/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nsac {

bool Rectangle::on_boundary(Point2 p, double tol) const {
  const double scale = std::max(width(), height());
  const double t = tol * scale;
  return std::abs(p.x - x_min) <= t || std::abs(p.x - x_max) <= t ||
         std::abs(p.y - y_min) <= t || std::abs(p.y - y_max) <= t;
}

double Mesh::signed_area(std::size_t t) const {
  const auto& tri = triangles[t];
  const Point2 a = vertices[tri[0]];
  const Point2 b = vertices[tri[1]];
  const Point2 c = vertices[tri[2]];
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

double Mesh::total_area() const {
  double sum = 0.0;
  for (std::size_t t = 0; t < triangles.size(); ++t) sum += signed_area(t);
  return sum;
}

Mesh build_uniform_mesh(const Rectangle& domain, int n) {
  if (n < 1) throw std::invalid_argument("build_uniform_mesh: n must be >= 1, got " + std::to_string(n));
  if (!(domain.width() > 0.0) || !(domain.height() > 0.0))
    throw std::invalid_argument("build_uniform_mesh: rectangle must have positive width and height");

  Mesh mesh;
  mesh.domain = domain;
  mesh.n_subdivisions = n;
  const int np = n + 1;
  mesh.vertices.reserve(static_cast<std::size_t>(np) * np);
  for (int j = 0; j <= n; ++j) {
    // Endpoints are pinned so the boundary coordinates are exact.
    const double y = (j == n) ? domain.y_max : domain.y_min + domain.height() * j / n;
    for (int i = 0; i <= n; ++i) {
      const double x = (i == n) ? domain.x_max : domain.x_min + domain.width() * i / n;
      mesh.vertices.push_back({x, y});
    }
  }

  auto vid = [np](int i, int j) { return j * np + i; };
  mesh.triangles.reserve(2 * static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j), v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      const int lower = static_cast<int>(mesh.triangles.size());
      mesh.triangles.push_back({v00, v10, v11});
      mesh.triangles.push_back({v00, v11, v01});
      // Lower triangle owns the bottom and right cell edges, upper owns top and left.
      if (j == 0) mesh.boundary_edges.push_back({v00, v10, BoundaryTag::bottom, lower, 0, {0.0, -1.0}});
      if (i == n - 1) mesh.boundary_edges.push_back({v10, v11, BoundaryTag::right, lower, 1, {1.0, 0.0}});
      if (j == n - 1) mesh.boundary_edges.push_back({v11, v01, BoundaryTag::top, lower + 1, 1, {0.0, 1.0}});
      if (i == 0) mesh.boundary_edges.push_back({v01, v00, BoundaryTag::left, lower + 1, 2, {-1.0, 0.0}});
    }
  }
  return mesh;
}

}  // namespace nsac
