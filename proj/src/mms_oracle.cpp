#include "nsac/mms_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace nsac::fd {

namespace {

using Field = std::function<double(double, double, double)>;

// Central differences of a field g(t, x, y) in each variable.
template <class G>
struct Diff {
  G g;
  double h;

  auto dt(double t, double x, double y) const { return (g(t + h, x, y) - g(t - h, x, y)) / (2.0 * h); }
  auto dx(double t, double x, double y) const { return (g(t, x + h, y) - g(t, x - h, y)) / (2.0 * h); }
  auto dy(double t, double x, double y) const { return (g(t, x, y + h) - g(t, x, y - h)) / (2.0 * h); }
};
template <class G>
Diff(G, double) -> Diff<G>;

}  // namespace

double forcing_ac(const ManufacturedSolution& mms, double t, double x, double y, double h) {
  const MixtureParams& prm = mms.params();
  const auto phi = [&](double tt, double xx, double yy) { return mms.eval(tt, xx, yy).phi; };
  const Diff d{phi, h};
  const Diff dx{[&](double tt, double xx, double yy) { return d.dx(tt, xx, yy); }, h};
  const Diff dy{[&](double tt, double xx, double yy) { return d.dy(tt, xx, yy); }, h};
  const MmsValues v = mms.eval(t, x, y);
  const double lap = dx.dx(t, x, y) + dy.dy(t, x, y);
  return d.dt(t, x, y) + v.u[0] * d.dx(t, x, y) + v.u[1] * d.dy(t, x, y) -
         prm.gamma * (lap - potential_derivative(v.phi, prm.eta));
}

Vec2 forcing_ns(const ManufacturedSolution& mms, double t, double x, double y, double h) {
  const MixtureParams& prm = mms.params();
  const auto phi = [&](double tt, double xx, double yy) { return mms.eval(tt, xx, yy).phi; };
  const auto rho = [&](double tt, double xx, double yy) { return mixture_density(prm, phi(tt, xx, yy)); };
  const auto mu = [&](double tt, double xx, double yy) { return mixture_viscosity(prm, phi(tt, xx, yy)); };
  const auto p = [&](double tt, double xx, double yy) { return mms.eval(tt, xx, yy).p; };
  const MmsValues v = mms.eval(t, x, y);
  const Diff dphi{phi, h};
  const Diff drho{rho, h};
  const Diff dp{p, h};
  const double phi_dot = dphi.dt(t, x, y) + v.u[0] * dphi.dx(t, x, y) + v.u[1] * dphi.dy(t, x, y);
  const Vec2 grad_phi{dphi.dx(t, x, y), dphi.dy(t, x, y)};
  const double r = rho(t, x, y);

  // rho u as a field, for div(rho u).
  const auto component = [&](int b) -> Field {
    return [&, b](double tt, double xx, double yy) { return mms.eval(tt, xx, yy).u[b]; };
  };
  const auto rho_u = [&](int b) -> Field {
    return [&, b](double tt, double xx, double yy) { return rho(tt, xx, yy) * mms.eval(tt, xx, yy).u[b]; };
  };
  const double div_rho_u = Diff{rho_u(0), h}.dx(t, x, y) + Diff{rho_u(1), h}.dy(t, x, y);

  Vec2 f{};
  for (int a = 0; a < 2; ++a) {
    const Diff du{component(a), h};
    // Stress components mu D(u)_{a b} as fields, differentiated in x_b.
    const auto stress = [&, a](int b) -> Field {
      return [&, a, b](double tt, double xx, double yy) {
        const Diff da{component(a), h}, db{component(b), h};
        const double dua_dxb = b == 0 ? da.dx(tt, xx, yy) : da.dy(tt, xx, yy);
        const double dub_dxa = a == 0 ? db.dx(tt, xx, yy) : db.dy(tt, xx, yy);
        return mu(tt, xx, yy) * 0.5 * (dua_dxb + dub_dxa);
      };
    };
    const double div_stress = Diff{stress(0), h}.dx(t, x, y) + Diff{stress(1), h}.dy(t, x, y);
    const double convect = v.u[0] * du.dx(t, x, y) + v.u[1] * du.dy(t, x, y);
    const double grad_p = a == 0 ? dp.dx(t, x, y) : dp.dy(t, x, y);
    f[a] = r * du.dt(t, x, y) + 0.5 * drho.dt(t, x, y) * v.u[a] + r * convect + 0.5 * div_rho_u * v.u[a] -
           div_stress + grad_p + prm.sigma / prm.gamma * phi_dot * grad_phi[a];
  }
  return f;
}

ForcingCheck verify_forcing(const ManufacturedSolution& mms, int points, std::uint32_t seed, double tol_ac,
                            double tol_ns) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> space(-1.0, 1.0), unit(0.0, 1.0);
  ForcingCheck check;
  check.points = points;
  for (int i = 0; i < points; ++i) {
    const double t = unit(gen) * (i % 2 == 0 ? 2.0 * mms.t_ref() : 1.0);
    const double x = space(gen), y = space(gen);
    const double ac = mms.forcing_ac(t, x, y), ac_fd = forcing_ac(mms, t, x, y);
    check.max_rel_error_ac = std::max(check.max_rel_error_ac, std::abs(ac - ac_fd) / std::max(1.0, std::abs(ac_fd)));
    const Vec2 ns = mms.forcing_ns(t, x, y), ns_fd = forcing_ns(mms, t, x, y);
    const double err = std::max(std::abs(ns[0] - ns_fd[0]), std::abs(ns[1] - ns_fd[1]));
    const double scale = std::max({1.0, std::abs(ns_fd[0]), std::abs(ns_fd[1])});
    check.max_rel_error_ns = std::max(check.max_rel_error_ns, err / scale);
  }
  check.passed = check.max_rel_error_ac <= tol_ac && check.max_rel_error_ns <= tol_ns;
  return check;
}

}  // namespace nsac::fd
