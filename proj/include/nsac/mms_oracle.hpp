#pragma once

#include <cstdint>

#include "nsac/mms.hpp"

namespace nsac::fd {

// Finite-difference evaluation of the manufactured forcing terms. Only
// ManufacturedSolution::eval and the constitutive laws are used; every
// derivative is a central difference with step h in each variable.

double forcing_ac(const ManufacturedSolution& mms, double t, double x, double y, double h = 1e-5);
Vec2 forcing_ns(const ManufacturedSolution& mms, double t, double x, double y, double h = 1e-5);

struct ForcingCheck {
  int points = 0;
  double max_rel_error_ac = 0.0;
  double max_rel_error_ns = 0.0;
  bool passed = false;
};

/// Compares the analytic forcing to the oracle at `points` random (t, x, y),
/// half of them with t in [0, 2T] and half with t in [0, 1]. The error at a
/// point is |analytic - oracle| / max(1, |oracle|), in the max norm for the
/// momentum term.
ForcingCheck verify_forcing(const ManufacturedSolution& mms, int points, std::uint32_t seed, double tol_ac,
                            double tol_ns);

}  // namespace nsac::fd
