#include "nsac/navier_stokes.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "nsac/fe_values.hpp"

namespace nsac {

SparseSystem assemble_ns(const Discretization& disc, const NsStepInput& input, NsAssemblyInfo* info) {
  const std::size_t n2 = disc.phase.n_nodes;
  const std::size_t nu = disc.velocity.dof_count;
  const std::size_t np = disc.pressure.dof_count;
  const auto total = static_cast<Eigen::Index>(nu + np);
  if (input.u_n.size() != static_cast<Eigen::Index>(nu) || input.u_k.size() != static_cast<Eigen::Index>(nu) ||
      input.rho_n.size() != static_cast<Eigen::Index>(n2) || input.phi_k1.size() != static_cast<Eigen::Index>(n2) ||
      input.phi_n.size() != static_cast<Eigen::Index>(n2))
    throw std::invalid_argument("assemble_ns: coefficient vector sizes do not match the dof maps");

  const MixtureParams& prm = input.params;
  const double dt = prm.dt;
  const double half_drho = 0.5 * prm.rho_jump();
  const double capillary = prm.sigma / prm.gamma;
  const double eps = prm.eps_pressure;
  std::size_t clamped = 0;

  CellValues cv;
  std::vector<Triplet> triplets;
  triplets.reserve(disc.mesh.n_triangles() * 225);
  Vector rhs = Vector::Zero(total);

  for (std::size_t cell = 0; cell < disc.mesh.n_triangles(); ++cell) {
    cv.reinit(disc.mesh, cell);
    const auto nodes = disc.phase.nodes_of(cell);
    const auto pnodes = disc.pressure.nodes_of(cell);
    double a[15][15] = {};
    double b[12] = {};
    for (std::size_t q = 0; q < cv.n_points(); ++q) {
      const double jxw = cv.jxw(q);
      const double phi1 = cv.p2_value(input.phi_k1, nodes, q);
      const auto gphi = cv.p2_gradient(input.phi_k1, nodes, q);
      const double phin = cv.p2_value(input.phi_n, nodes, q);
      const double rho1 = mixture_density(prm, phi1);
      const double mu1 = mixture_viscosity(prm, phi1);
      if (!(mu1 > 0.0)) {
        const Point2 x = cv.point(q);
        std::ostringstream msg;
        msg << "assemble_ns: viscosity " << mu1 << " <= 0 at (" << x.x << ", " << x.y << "), phi = " << phi1;
        throw AssemblyError(msg.str(), x);
      }
      const double rhon = cv.p2_value(input.rho_n, nodes, q);
      const Vec2 grho{half_drho * gphi[0], half_drho * gphi[1]};
      const Vec2 uk{cv.p2_value(input.u_k, nodes, q), cv.p2_value(input.u_k, nodes, q, n2)};
      const auto guk_x = cv.p2_gradient(input.u_k, nodes, q);
      const auto guk_y = cv.p2_gradient(input.u_k, nodes, q, n2);
      const double div_uk = guk_x[0] + guk_y[1];
      const Vec2 un{cv.p2_value(input.u_n, nodes, q), cv.p2_value(input.u_n, nodes, q, n2)};

      const double temam = 0.5 * (grho[0] * uk[0] + grho[1] * uk[1] + rho1 * div_uk);
      const double reaction = rho1 / dt + temam;

      // Negative densities only occur for strongly overshooting phases.
      double root_a = rho1, root_b = rhon;
      if (root_a < 0.0) {
        root_a = prm.rho_min();
        ++clamped;
      }
      if (root_b < 0.0) {
        root_b = prm.rho_min();
        ++clamped;
      }
      const double inertia = std::sqrt(root_a * root_b) / dt;
      Vec2 f{inertia * un[0], inertia * un[1]};
      if (input.body_force) {
        const Vec2 g = input.body_force(phi1);
        f[0] += g[0];
        f[1] += g[1];
      }
      if (input.forcing) {
        const Vec2 g = input.forcing(cv.point(q));
        f[0] += g[0];
        f[1] += g[1];
      }
      const double lag = capillary / dt * (phi1 - phin);
      f[0] -= lag * gphi[0];
      f[1] -= lag * gphi[1];

      for (int i = 0; i < 6; ++i) {
        const double vi = cv.p2(q, i);
        const auto& gi = cv.p2_grad(q, i);
        b[i] += jxw * f[0] * vi;
        b[6 + i] += jxw * f[1] * vi;
        for (int j = 0; j < 6; ++j) {
          const double wj = cv.p2(q, j);
          const auto& gj = cv.p2_grad(q, j);
          const double scalar = reaction * wj * vi + rho1 * (uk[0] * gj[0] + uk[1] * gj[1]) * vi +
                                0.5 * mu1 * (gj[0] * gi[0] + gj[1] * gi[1]);
          // 1/2 mu d_a w_j d_b v_i for test component a, trial component b.
          for (int ca = 0; ca < 2; ++ca)
            for (int cb = 0; cb < 2; ++cb) {
              double v = 0.5 * mu1 * gj[ca] * gi[cb] + capillary * wj * gphi[cb] * gphi[ca] * vi;
              if (ca == cb) v += scalar;
              a[ca * 6 + i][cb * 6 + j] += jxw * v;
            }
        }
        for (int j = 0; j < 3; ++j) {
          const double qj = cv.p1(q, j);
          for (int ca = 0; ca < 2; ++ca) {
            a[ca * 6 + i][12 + j] -= jxw * qj * gi[ca];
            a[12 + j][ca * 6 + i] -= jxw * qj * gi[ca];
          }
        }
      }
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[12 + i][12 + j] -= jxw * eps * cv.p1(q, i) * cv.p1(q, j);
    }

    int global[15];
    for (int i = 0; i < 6; ++i) {
      global[i] = nodes[i];
      global[6 + i] = static_cast<int>(n2) + nodes[i];
    }
    for (int i = 0; i < 3; ++i) global[12 + i] = static_cast<int>(nu) + pnodes[i];
    for (int i = 0; i < 12; ++i) rhs[global[i]] += b[i];
    for (int i = 0; i < 15; ++i)
      for (int j = 0; j < 15; ++j) triplets.emplace_back(global[i], global[j], a[i][j]);
  }

  SparseSystem sys;
  sys.matrix.resize(total, total);
  sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
  sys.rhs = std::move(rhs);
  sys.solution = Vector::Zero(total);
  const BoundaryValue no_slip = [](Point2, int) { return 0.0; };
  apply_dirichlet(sys, disc.velocity, input.dirichlet ? input.dirichlet : no_slip);
  if (info) info->clamped_density_points = clamped;
  return sys;
}

Vector pressure_integral_weights(const Discretization& disc) {
  Vector w = Vector::Zero(static_cast<Eigen::Index>(disc.pressure.dof_count));
  for (std::size_t t = 0; t < disc.mesh.n_triangles(); ++t) {
    const double third = disc.mesh.signed_area(t) / 3.0;
    for (int v : disc.pressure.nodes_of(t)) w[v] += third;
  }
  return w;
}

NsSolveResult solve_ns_step(const Discretization& disc, const NsStepInput& input, SolverWorkspace& workspace) {
  NsAssemblyInfo info;
  SparseSystem sys = assemble_ns(disc, input, &info);
  workspace.ns_solver.solve(sys);
  ++workspace.ns_solves;

  const auto nu = static_cast<Eigen::Index>(disc.velocity.dof_count);
  const auto np = static_cast<Eigen::Index>(disc.pressure.dof_count);
  NsSolveResult r;
  r.u = sys.solution.head(nu);
  r.p = sys.solution.tail(np);
  r.clamped_density_points = info.clamped_density_points;

  // Continuity rows hold B u - eps M_p p = 0; split the two contributions.
  Vector div = Vector::Zero(np), pen = Vector::Zero(np);
  for (Eigen::Index row = nu; row < nu + np; ++row) {
    for (SparseMatrix::InnerIterator it(sys.matrix, row); it; ++it) {
      if (it.col() < nu)
        div[row - nu] += it.value() * sys.solution[it.col()];
      else
        pen[row - nu] -= it.value() * sys.solution[it.col()];
    }
  }
  r.divergence_norm = div.norm();
  r.penalty_norm = pen.norm();
  r.divergence_consistent =
      r.divergence_norm <= 10.0 * r.penalty_norm + DirectSolver::kResidualTolerance * sys.rhs.norm();

  const Vector w = pressure_integral_weights(disc);
  const double mean = w.dot(r.p) / w.sum();
  r.p.array() -= mean;
  return r;
}

}  // namespace nsac
