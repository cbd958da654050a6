#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nsac/coupling.hpp"
#include "nsac/dof_map.hpp"
#include "nsac/state.hpp"

namespace nsac {

inline constexpr const char* kStepCsvHeader =
    "step,time,iters,ns_solves,max_abs_phi,E_u_step,E_phi_step,K_hat,monitors_passed";

/// One row per step, then a summary row: total iterations and solves, maxima
/// of max_abs_phi, the errors and K_hat over the steps. Missing values are "nan".
void write_step_csv(std::ostream& out, std::span<const StepReport> reports);
/// Throws std::runtime_error when the file cannot be written.
void emit_step_csv(const std::string& path, std::span<const StepReport> reports);

/// Legacy VTK unstructured grid on the P2 node set, each cell split into four
/// linear triangles. Point data: velocity (z = 0), pressure (P1, averaged to
/// edge midpoints), phi.
void write_snapshot(std::ostream& out, const Discretization& disc, const State& state);
void emit_snapshot(const std::string& path, const Discretization& disc, const State& state);

struct SweepRow {
  AcMethod method = AcMethod::newton;
  double beta = 0.0;
  long total_iters = 0;
  double e_phi_h1 = 0.0;
  std::string status;
};

inline constexpr const char* kSweepCsvHeader = "method,beta,total_iters,E_phi_H1,status";
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace nsac
