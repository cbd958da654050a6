#include "nsac/dof_map.hpp"

#include <cstdint>
#include <unordered_map>
#include <utility>

#include "nsac/basis.hpp"

namespace nsac {

DofMap make_dof_map(const Mesh& mesh, SpaceKind kind) {
  DofMap map;
  map.space_kind = kind;
  const bool quadratic = kind != SpaceKind::scalar_linear;
  map.components = kind == SpaceKind::vector_quadratic ? 2 : 1;
  map.nodes_per_cell = quadratic ? 6 : 3;

  std::vector<Point2> nodes(mesh.vertices.begin(), mesh.vertices.end());
  std::vector<bool> boundary(mesh.n_vertices(), false);
  for (const auto& e : mesh.boundary_edges) boundary[e.v0] = boundary[e.v1] = true;

  std::unordered_map<std::int64_t, int> edge_ids;
  if (quadratic) {
    edge_ids.reserve(3 * mesh.n_triangles());
    // Midpoints of boundary edges are the only boundary edge nodes.
    std::unordered_map<std::int64_t, bool> boundary_edge;
    auto key = [](int a, int b) {
      if (a > b) std::swap(a, b);
      return (static_cast<std::int64_t>(a) << 32) | static_cast<std::uint32_t>(b);
    };
    for (const auto& e : mesh.boundary_edges) boundary_edge[key(e.v0, e.v1)] = true;

    map.cell_nodes.reserve(6 * mesh.n_triangles());
    for (const auto& tri : mesh.triangles) {
      for (int v : tri) map.cell_nodes.push_back(v);
      for (const auto& [la, lb] : shape::kEdgeVertices) {
        const int a = tri[la], b = tri[lb];
        const auto [it, inserted] = edge_ids.try_emplace(key(a, b), static_cast<int>(nodes.size()));
        if (inserted) {
          nodes.push_back(0.5 * (mesh.vertices[a] + mesh.vertices[b]));
          boundary.push_back(boundary_edge.count(key(a, b)) > 0);
        }
        map.cell_nodes.push_back(it->second);
      }
    }
  } else {
    map.cell_nodes.reserve(3 * mesh.n_triangles());
    for (const auto& tri : mesh.triangles)
      for (int v : tri) map.cell_nodes.push_back(v);
  }

  map.n_nodes = nodes.size();
  map.dof_count = map.n_nodes * map.components;
  for (int c = 0; c < map.components; ++c) {
    map.dof_coordinates.insert(map.dof_coordinates.end(), nodes.begin(), nodes.end());
    map.dirichlet_mask.insert(map.dirichlet_mask.end(), boundary.begin(), boundary.end());
  }
  return map;
}

Discretization::Discretization(Mesh m)
    : mesh(std::move(m)),
      velocity(make_dof_map(mesh, SpaceKind::vector_quadratic)),
      pressure(make_dof_map(mesh, SpaceKind::scalar_linear)),
      phase(make_dof_map(mesh, SpaceKind::scalar_quadratic)) {}

}  // namespace nsac
