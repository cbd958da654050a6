#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nsac/mesh.hpp"

namespace nsac {

enum class SpaceKind { scalar_linear, scalar_quadratic, vector_quadratic };

/// Degree-of-freedom numbering for one finite-element space on a mesh.
///
/// Scalar nodes are the mesh vertices (both degrees) followed, for quadratic
/// spaces, by edge midpoints numbered in order of first appearance while
/// walking triangles and their local edges. Vector spaces are stored
/// component-major: dof = component * n_nodes + node.
struct DofMap {
  SpaceKind space_kind = SpaceKind::scalar_linear;
  int components = 1;
  int nodes_per_cell = 3;
  std::size_t n_nodes = 0;
  std::size_t dof_count = 0;
  std::vector<Point2> dof_coordinates;  // one entry per dof
  std::vector<bool> dirichlet_mask;     // dofs on the domain boundary
  std::vector<int> cell_nodes;          // n_triangles * nodes_per_cell scalar node ids

  std::span<const int> nodes_of(std::size_t t) const {
    return {cell_nodes.data() + t * nodes_per_cell, static_cast<std::size_t>(nodes_per_cell)};
  }
  std::size_t n_cells() const { return nodes_per_cell == 0 ? 0 : cell_nodes.size() / nodes_per_cell; }
};

DofMap make_dof_map(const Mesh& mesh, SpaceKind kind);

/// The three spaces of the scheme on one mesh: P2 velocity, P1 pressure, P2
/// phase field. The scalar P2 numbering is shared by velocity components.
struct Discretization {
  Mesh mesh;
  DofMap velocity;
  DofMap pressure;
  DofMap phase;

  explicit Discretization(Mesh m);
};

}  // namespace nsac
