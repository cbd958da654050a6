#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace nsac {

using Vec2 = std::array<double, 2>;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }

/// Axis-aligned rectangle [x_min, x_max] x [y_min, y_max].
struct Rectangle {
  double x_min = -1.0;
  double x_max = 1.0;
  double y_min = -1.0;
  double y_max = 1.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }
  bool on_boundary(Point2 p, double tol = 1e-12) const;
};

enum class BoundaryTag { bottom = 0, right = 1, top = 2, left = 3 };

struct BoundaryEdge {
  int v0 = 0;
  int v1 = 0;
  BoundaryTag tag = BoundaryTag::bottom;
  int triangle = 0;
  int local_edge = 0;  // 0: (v0,v1), 1: (v1,v2), 2: (v2,v0) of the owning triangle
  Point2 normal;       // outward unit normal
};

/// Triangulation of a rectangle. Triangles are stored counter-clockwise.
struct Mesh {
  Rectangle domain;
  int n_subdivisions = 0;
  std::vector<Point2> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;

  std::size_t n_vertices() const { return vertices.size(); }
  std::size_t n_triangles() const { return triangles.size(); }

  /// Signed area of triangle t (positive for counter-clockwise storage).
  double signed_area(std::size_t t) const;
  double total_area() const;
};

/// Uniform N x N grid of cells, each split along its bottom-left to top-right
/// diagonal. Vertex (i, j) has index j * (N + 1) + i. Throws
/// std::invalid_argument for n == 0 or a degenerate rectangle.
Mesh build_uniform_mesh(const Rectangle& domain, int n);

}  // namespace nsac
