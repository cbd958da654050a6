#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nsac/norms.hpp"
#include "nsac/params.hpp"
#include "nsac/state.hpp"

using namespace nsac;

namespace {
const Rectangle square{-1.0, 1.0, -1.0, 1.0};
}

TEST(Constitutive, DensityAndViscosityAreAffine) {
  MixtureParams p;
  p.mu_a = 4.0;
  EXPECT_DOUBLE_EQ(mixture_density(p, 1.0), p.rho_a);
  EXPECT_DOUBLE_EQ(mixture_density(p, -1.0), p.rho_b);
  EXPECT_DOUBLE_EQ(mixture_viscosity(p, 1.0), p.mu_a);
  EXPECT_DOUBLE_EQ(mixture_viscosity(p, -1.0), p.mu_b);
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const double phi = d(gen);
    EXPECT_DOUBLE_EQ(0.5 * (mixture_density(p, phi) + mixture_density(p, -phi)), p.rho_mean());
  }
  // No clamping outside [-1, 1].
  EXPECT_DOUBLE_EQ(mixture_density(p, -3.0), 2.0 - 3.0);
}

TEST(Potential, Values) {
  EXPECT_EQ(potential_derivative(0.0, 0.1), 0.0);
  EXPECT_EQ(potential_derivative(1.0, 0.1), 0.0);
  EXPECT_EQ(potential_derivative(-1.0, 0.1), 0.0);
  EXPECT_NEAR(potential_derivative(0.5, 0.1), -37.5, 1e-12);
  EXPECT_EQ(potential(1.0, 0.1), 0.0);
  EXPECT_NEAR(potential(0.0, 0.1), 25.0, 1e-12);
}

TEST(Linearization, NewtonExample) {
  MixtureParams p;
  p.beta = 9.0 / 8.0;
  const auto lin = ac_linearization(AcMethod::newton, 0.0, 0.3, p);
  EXPECT_NEAR(lin.reaction, 1.0096154, 1e-7);
  EXPECT_NEAR(lin.reaction, 1.0 + (1.0 / 13.0) * (1.0 / 8.0), 1e-15);
  EXPECT_DOUBLE_EQ(lin.rhs, 0.3);
}

TEST(Linearization, PicardAtWells) {
  MixtureParams p;
  p.beta = 2.0;
  const double a = p.gamma * p.dt / (p.eta * p.eta);
  for (double s : {-1.0, 1.0}) {
    const auto lin = ac_linearization(AcMethod::picard, s, 0.25, p);
    EXPECT_NEAR(lin.reaction, 1.0 + 2.0 * a, 1e-15);
    EXPECT_NEAR(lin.rhs, 0.25 + s * 2.0 * a, 1e-15);
  }
}

TEST(Linearization, ExplicitAtWells) {
  MixtureParams p;
  for (double s : {-1.0, 1.0}) {
    const auto lin = ac_linearization(AcMethod::explicit_, 0.4, s, p);
    EXPECT_EQ(lin.reaction, 1.0);
    EXPECT_EQ(lin.rhs, s);
  }
}

TEST(Linearization, NewtonExactAtExpansionPoint) {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> d(-1.5, 1.5), b(0.0, 5.0);
  MixtureParams p;
  for (int i = 0; i < 200; ++i) {
    p.beta = b(gen);
    const double pk = d(gen), pn = d(gen);
    const auto lin = ac_linearization(AcMethod::newton, pk, pn, p);
    const double residual = lin.reaction * pk - lin.rhs;
    const double expected = (pk - pn) + p.dt * p.gamma * potential_derivative(pk, p.eta);
    EXPECT_NEAR(residual, expected, 1e-13);
  }
}

TEST(Linearization, ExplicitEqualsPicardWithoutStabilization) {
  std::mt19937 gen(12);
  std::uniform_real_distribution<double> d(-1.2, 1.2);
  MixtureParams p;
  p.beta = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double pn = d(gen);
    const auto pic = ac_linearization(AcMethod::picard, pn, pn, p);
    const auto exp = ac_linearization(AcMethod::explicit_, pn, pn, p);
    const auto nwt = ac_linearization(AcMethod::newton, pn, pn, p);
    // Residuals at phi_{k+1} = phi^n coincide.
    EXPECT_NEAR(pic.reaction * pn - pic.rhs, exp.reaction * pn - exp.rhs, 1e-14);
    EXPECT_NEAR(nwt.reaction * pn - nwt.rhs, exp.reaction * pn - exp.rhs, 1e-14);
  }
}

TEST(Linearization, ReactionPositiveAboveThreshold) {
  MixtureParams p;
  p.dt = 1.0;  // far above the step limit so the reaction term dominates
  for (AcMethod m : {AcMethod::newton, AcMethod::picard}) {
    p.beta = max_principle_beta(m);
    for (double pk = -1.0; pk <= 1.0; pk += 0.01) EXPECT_GT(ac_linearization(m, pk, 0.0, p).reaction, 0.0);
  }
  EXPECT_EQ(max_principle_beta(AcMethod::newton), 9.0 / 8.0);
  EXPECT_EQ(max_principle_beta(AcMethod::picard), 2.0);
  EXPECT_EQ(max_principle_beta(AcMethod::explicit_), 0.0);
}

TEST(Params, MethodNames) {
  EXPECT_EQ(parse_ac_method("fin"), AcMethod::newton);
  EXPECT_EQ(parse_ac_method("newton"), AcMethod::newton);
  EXPECT_EQ(parse_ac_method("fip"), AcMethod::picard);
  EXPECT_EQ(parse_ac_method("sce"), AcMethod::explicit_);
  EXPECT_THROW(parse_ac_method("implicit"), std::invalid_argument);
  for (AcMethod m : {AcMethod::newton, AcMethod::picard, AcMethod::explicit_})
    EXPECT_EQ(parse_ac_method(to_string(m)), m);
}

TEST(Params, Validation) {
  MixtureParams p;
  EXPECT_NO_THROW(p.validate());
  for (auto bad : {&MixtureParams::rho_a, &MixtureParams::mu_b, &MixtureParams::gamma, &MixtureParams::eta,
                   &MixtureParams::dt}) {
    MixtureParams q;
    q.*bad = 0.0;
    EXPECT_THROW(q.validate(), std::invalid_argument);
  }
  MixtureParams q;
  q.beta = -1.0;
  EXPECT_THROW(q.validate(), std::invalid_argument);
}

TEST(State, MakeStateAndDensity) {
  const Discretization disc(build_uniform_mesh(square, 3));
  MixtureParams p;
  const Vector phi = Vector::Constant(static_cast<Eigen::Index>(disc.phase.dof_count), -1.0);
  const State s = make_state(disc, phi, p, 0.5);
  EXPECT_TRUE(s.matches(disc));
  EXPECT_EQ(s.t, 0.5);
  EXPECT_EQ(s.u.norm(), 0.0);
  EXPECT_EQ(s.p.norm(), 0.0);
  EXPECT_TRUE((s.rho_prev.array() == p.rho_b).all());
  State bad = s;
  bad.p.resize(1);
  EXPECT_FALSE(bad.matches(disc));
}

TEST(Norms, ConstantAndLinearFields) {
  const Discretization disc(build_uniform_mesh(square, 4));
  const Vector one = interpolate_scalar(disc.phase, [](Point2) { return 1.0; });
  const Vector x = interpolate_scalar(disc.phase, [](Point2 q) { return q.x; });
  EXPECT_NEAR(l2_norm_scalar(disc, one), 2.0, 1e-14);
  EXPECT_NEAR(h1_seminorm_scalar(disc, one), 0.0, 1e-13);
  EXPECT_NEAR(h1_seminorm_scalar(disc, x), 2.0, 1e-13);
  EXPECT_NEAR(l2_norm_scalar(disc, x), std::sqrt(4.0 / 3.0), 1e-14);

  const Vector shear = interpolate_vector(disc.velocity, [](Point2 q) { return std::array<double, 2>{q.y, 0.0}; });
  EXPECT_NEAR(strain_norm(disc, shear), std::sqrt(2.0), 1e-13);
  EXPECT_NEAR(h1_seminorm_vector(disc, shear), 2.0, 1e-13);
  const Vector ex = interpolate_vector(disc.velocity, [](Point2) { return std::array<double, 2>{1.0, 0.0}; });
  EXPECT_NEAR(l2_norm_vector(disc, ex), 2.0, 1e-14);
  EXPECT_NEAR(advection_norm(disc, ex, x), 2.0, 1e-13);
  const Vector p1 = interpolate_scalar(disc.pressure, [](Point2) { return 1.0; });
  EXPECT_NEAR(l2_norm_pressure(disc, p1), 2.0, 1e-14);
}

TEST(Norms, QuadraticsAreExactlyRepresented) {
  const Discretization disc(build_uniform_mesh(square, 3));
  auto f = [](Point2 q) { return 0.3 * q.x * q.x - q.x * q.y + 2.0 * q.y - 0.7; };
  const Vector fh = interpolate_scalar(disc.phase, f);
  EXPECT_LT(l2_error_scalar(disc, fh, f), 1e-13);
  EXPECT_LT(h1_semierror_scalar(disc, fh, [](Point2 q) { return std::array<double, 2>{0.6 * q.x - q.y, -q.x + 2.0}; }),
            1e-12);
  auto g = [](Point2 q) { return std::array<double, 2>{q.x * q.y, q.y * q.y}; };
  EXPECT_LT(l2_error_vector(disc, interpolate_vector(disc.velocity, g), g), 1e-13);
}

TEST(Norms, InterpolationErrorConvergesAtThirdOrder) {
  auto f = [](Point2 q) { return std::sin(2.0 * q.x) * std::cos(q.y); };
  double prev = 0.0;
  for (int n : {4, 8, 16}) {
    const Discretization disc(build_uniform_mesh(square, n));
    const double e = l2_error_scalar(disc, interpolate_scalar(disc.phase, f), f);
    if (prev > 0.0) EXPECT_GT(std::log2(prev / e), 2.8);
    prev = e;
  }
}
