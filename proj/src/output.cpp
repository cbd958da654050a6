#include "nsac/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "nsac/basis.hpp"
#include "nsac/config.hpp"

namespace nsac {

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

std::ofstream open_for_writing(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("error while writing '" + path + "'");
}

// NaN-ignoring maximum; NaN when nothing was seen.
void fold_max(double& acc, double v) {
  if (std::isnan(v)) return;
  acc = std::isnan(acc) ? v : std::max(acc, v);
}

}  // namespace

void write_step_csv(std::ostream& out, std::span<const StepReport> reports) {
  out << kStepCsvHeader << '\n';
  long iters = 0;
  std::size_t solves = 0;
  double time = nan_value, max_phi = nan_value, e_u = nan_value, e_phi = nan_value, k_hat = nan_value;
  bool passed = true;
  for (const auto& r : reports) {
    const double eu = r.errors ? r.errors->e_u : nan_value;
    const double ep = r.errors ? r.errors->e_phi : nan_value;
    const double kh = r.contraction.valid ? r.contraction.geometric_fit : nan_value;
    out << r.step_index << ',' << format_17(r.time) << ',' << r.fixed_point_iterations << ',' << r.ns_solves << ','
        << format_17(r.max_abs_phi) << ',' << format_17(eu) << ',' << format_17(ep) << ',' << format_17(kh) << ','
        << (r.monitors_passed() ? 1 : 0) << '\n';
    iters += r.fixed_point_iterations;
    solves += r.ns_solves;
    time = r.time;
    fold_max(max_phi, r.max_abs_phi);
    fold_max(e_u, eu);
    fold_max(e_phi, ep);
    fold_max(k_hat, kh);
    passed = passed && r.monitors_passed();
  }
  out << "summary," << format_17(time) << ',' << iters << ',' << solves << ',' << format_17(max_phi) << ','
      << format_17(e_u) << ',' << format_17(e_phi) << ',' << format_17(k_hat) << ',' << (passed ? 1 : 0) << '\n';
}

void emit_step_csv(const std::string& path, std::span<const StepReport> reports) {
  auto out = open_for_writing(path);
  write_step_csv(out, reports);
  finish(out, path);
}

void write_snapshot(std::ostream& out, const Discretization& disc, const State& state) {
  if (!state.matches(disc)) throw std::invalid_argument("write_snapshot: state does not match the discretization");
  const DofMap& p2 = disc.phase;
  const std::size_t n_points = p2.n_nodes;
  const std::size_t n_cells = 4 * disc.mesh.n_triangles();

  // P1 pressure at every P2 node: vertices copy, midpoints average.
  std::vector<double> pressure(n_points, 0.0);
  for (std::size_t t = 0; t < disc.mesh.n_triangles(); ++t) {
    const auto nodes = p2.nodes_of(t);
    const auto& tri = disc.mesh.triangles[t];
    for (int v = 0; v < 3; ++v) pressure[nodes[v]] = state.p[tri[v]];
    for (int e = 0; e < 3; ++e) {
      const auto [a, b] = shape::kEdgeVertices[e];
      pressure[nodes[3 + e]] = 0.5 * (state.p[tri[a]] + state.p[tri[b]]);
    }
  }

  out << "# vtk DataFile Version 3.0\n";
  out << "nsac t=" << format_17(state.t) << '\n';
  out << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << n_points << " double\n";
  for (std::size_t i = 0; i < n_points; ++i)
    out << format_17(p2.dof_coordinates[i].x) << ' ' << format_17(p2.dof_coordinates[i].y) << " 0\n";
  out << "CELLS " << n_cells << ' ' << 4 * n_cells << '\n';
  // Local nodes: vertices 0-2, midpoints 3 (0-1), 4 (1-2), 5 (2-0).
  static constexpr int sub[4][3] = {{0, 3, 5}, {3, 1, 4}, {5, 4, 2}, {3, 4, 5}};
  for (std::size_t t = 0; t < disc.mesh.n_triangles(); ++t) {
    const auto nodes = p2.nodes_of(t);
    for (const auto& s : sub) out << "3 " << nodes[s[0]] << ' ' << nodes[s[1]] << ' ' << nodes[s[2]] << '\n';
  }
  out << "CELL_TYPES " << n_cells << '\n';
  for (std::size_t c = 0; c < n_cells; ++c) out << "5\n";
  out << "POINT_DATA " << n_points << '\n';
  out << "VECTORS velocity double\n";
  for (std::size_t i = 0; i < n_points; ++i)
    out << format_17(state.u[static_cast<Eigen::Index>(i)]) << ' '
        << format_17(state.u[static_cast<Eigen::Index>(n_points + i)]) << " 0\n";
  out << "SCALARS pressure double 1\nLOOKUP_TABLE default\n";
  for (double v : pressure) out << format_17(v) << '\n';
  out << "SCALARS phi double 1\nLOOKUP_TABLE default\n";
  for (std::size_t i = 0; i < n_points; ++i) out << format_17(state.phi[static_cast<Eigen::Index>(i)]) << '\n';
}

void emit_snapshot(const std::string& path, const Discretization& disc, const State& state) {
  auto out = open_for_writing(path);
  write_snapshot(out, disc, state);
  finish(out, path);
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << kSweepCsvHeader << '\n';
  for (const auto& r : rows)
    out << to_string(r.method) << ',' << format_17(r.beta) << ',' << r.total_iters << ',' << format_17(r.e_phi_h1)
        << ',' << r.status << '\n';
}

}  // namespace nsac
