#include "nsac/allen_cahn.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nsac/fe_values.hpp"

namespace nsac {

double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

SparseSystem assemble_ac(const Discretization& disc, const AcStepInput& input) {
  const DofMap& dofs = disc.phase;
  const auto n = static_cast<Eigen::Index>(dofs.dof_count);
  if (input.phi_n.size() != n || input.phi_k.size() != n ||
      input.u_k.size() != static_cast<Eigen::Index>(disc.velocity.dof_count))
    throw std::invalid_argument("assemble_ac: coefficient vector sizes do not match the dof maps");

  const MixtureParams& prm = input.params;
  const double dt = prm.dt;
  const double diffusion = prm.gamma * dt;
  const std::size_t offset_y = disc.velocity.n_nodes;

  CellValues cv;
  std::vector<Triplet> triplets;
  triplets.reserve(disc.mesh.n_triangles() * 36);
  Vector rhs = Vector::Zero(n);

  for (std::size_t cell = 0; cell < disc.mesh.n_triangles(); ++cell) {
    cv.reinit(disc.mesh, cell);
    const auto nodes = dofs.nodes_of(cell);
    const auto vnodes = disc.velocity.nodes_of(cell);
    double local[6][6] = {};
    double local_rhs[6] = {};
    for (std::size_t q = 0; q < cv.n_points(); ++q) {
      const double jxw = cv.jxw(q);
      const double phi_k = cv.p2_value(input.phi_k, nodes, q);
      const double phi_n = cv.p2_value(input.phi_n, nodes, q);
      const double ux = cv.p2_value(input.u_k, vnodes, q);
      const double uy = cv.p2_value(input.u_k, vnodes, q, offset_y);
      const AcLinearization lin = ac_linearization(input.method, phi_k, phi_n, prm);
      double source = lin.rhs;
      if (input.forcing) source += dt * input.forcing(cv.point(q));
      for (int i = 0; i < 6; ++i) {
        const double psi_i = cv.p2(q, i);
        const auto& gi = cv.p2_grad(q, i);
        local_rhs[i] += jxw * source * psi_i;
        for (int j = 0; j < 6; ++j) {
          const auto& gj = cv.p2_grad(q, j);
          const double advect = ux * gj[0] + uy * gj[1];
          local[i][j] += jxw * ((lin.reaction * cv.p2(q, j) + dt * advect) * psi_i +
                                diffusion * (gj[0] * gi[0] + gj[1] * gi[1]));
        }
      }
    }
    for (int i = 0; i < 6; ++i) {
      rhs[nodes[i]] += local_rhs[i];
      for (int j = 0; j < 6; ++j) triplets.emplace_back(nodes[i], nodes[j], local[i][j]);
    }
  }

  if (input.boundary_flux) {
    const LineQuadratureRule& line = line_rule(4);
    for (const auto& edge : disc.mesh.boundary_edges) {
      const auto nodes = dofs.nodes_of(static_cast<std::size_t>(edge.triangle));
      const auto [la, lb] = shape::kEdgeVertices[edge.local_edge];
      const auto& tri = disc.mesh.triangles[static_cast<std::size_t>(edge.triangle)];
      const Point2 a = disc.mesh.vertices[tri[la]];
      const Point2 b = disc.mesh.vertices[tri[lb]];
      const double length = std::hypot(b.x - a.x, b.y - a.y);
      for (std::size_t q = 0; q < line.size(); ++q) {
        const double s = line.points[q];
        std::array<double, 3> bary{0.0, 0.0, 0.0};
        bary[la] = 1.0 - s;
        bary[lb] = s;
        const Point2 x = (1.0 - s) * a + s * b;
        const double g = dt * input.boundary_flux(x, edge.normal) * line.weights[q] * length;
        for (int i = 0; i < 6; ++i) rhs[nodes[i]] += g * shape::p2_value(i, bary);
      }
    }
  }

  SparseSystem sys;
  sys.matrix.resize(n, n);
  sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
  sys.rhs = std::move(rhs);
  sys.solution = Vector::Zero(n);
  return sys;
}

AcSolveResult solve_ac_step(const Discretization& disc, const AcStepInput& input, SolverWorkspace& workspace) {
  SparseSystem sys = assemble_ac(disc, input);
  workspace.ac_solver.solve(sys);
  ++workspace.ac_solves;
  AcSolveResult result;
  result.phi = std::move(sys.solution);
  result.max_abs_phi = max_abs(result.phi);
  return result;
}

}  // namespace nsac
