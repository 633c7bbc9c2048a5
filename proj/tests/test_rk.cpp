// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "sdrkdg/dg_core.hpp"
#include "sdrkdg/error.hpp"
#include "sdrkdg/rk.hpp"
#include "sdrkdg/spectral.hpp"
#include "support.hpp"

using namespace sdrkdg;
using oracle::random_vector;

namespace {

struct Rig {
  DGSpace space;
  BlockOperator L, Lt;
  Rig(std::size_t N, int k) : space(build_mesh_1d(N, 0.0, 0), k), L(assemble_upwind(space)), Lt(k > 0 ? reduce(L, space) : L) {}
};

}  // namespace

TEST(Scheme, Labels) {
  EXPECT_EQ(make_scheme(3, Variant::sdA).full_label(2), "sdA-RK3DG2");
  EXPECT_EQ(make_scheme(3, Variant::standard).full_label(2), "RK3DG2");
  EXPECT_EQ(make_scheme(4, Variant::standard).label(3), "RK4DG3");
  const SchemeSpec s = make_scheme(5, Variant::sdA);
  EXPECT_EQ(s.stages, 5);
  EXPECT_NEAR(s.alpha[5], 1.0 / 120.0, 1e-17);
  EXPECT_FALSE(s.tableau.has_value());
  EXPECT_EQ(parse_variant("sdA"), Variant::sdA);
  EXPECT_THROW(parse_variant("foo"), Error);
}

TEST(Scheme, TableausAreExplicitAndConsistent) {
  for (int r : {2, 3, 4}) {
    const ButcherTableau t = *builtin_tableau(r);
    for (int i = 0; i < t.stages(); ++i)
      for (int j = i; j < t.stages(); ++j) EXPECT_EQ(t.a(i, j), 0.0);
    EXPECT_NEAR(t.b.sum(), 1.0, 1e-15);
  }
  EXPECT_FALSE(builtin_tableau(5).has_value());
}

TEST(Step, ZeroStepIsIdentity) {
  Rig s(8, 2);
  const Eigen::VectorXd u = random_vector(static_cast<Eigen::Index>(s.space.size()), 1);
  for (Variant v : {Variant::standard, Variant::sdA})
    for (StepForm f : {StepForm::butcher, StepForm::compact})
      EXPECT_EQ(step(make_scheme(3, v), s.L, s.Lt, u, 0.0, f), u);
}

TEST(Step, ButcherEqualsCompact) {
  Rig s(16, 3);
  const double tau = 0.05 / 16;
  for (int r : {2, 3, 4})
    for (Variant v : {Variant::standard, Variant::sdA}) {
      const Eigen::VectorXd u = random_vector(static_cast<Eigen::Index>(s.space.size()), 10 + r);
      const SchemeSpec sc = make_scheme(r, v);
      const Eigen::VectorXd a = step(sc, s.L, s.Lt, u, tau, StepForm::butcher);
      const Eigen::VectorXd b = step(sc, s.L, s.Lt, u, tau, StepForm::compact);
      EXPECT_LE((a - b).norm(), 1e-13 * b.norm()) << sc.full_label(3);
    }
}

TEST(Step, ButcherFallsBackForHighOrder) {
  Rig s(8, 4);
  const Eigen::VectorXd u = random_vector(static_cast<Eigen::Index>(s.space.size()), 2);
  StepInfo info;
  const Eigen::VectorXd a = step(make_scheme(5, Variant::sdA), s.L, s.Lt, u, 1e-3, StepForm::butcher, &info);
  EXPECT_TRUE(info.fell_back_to_compact);
  EXPECT_EQ(a, step(make_scheme(5, Variant::sdA), s.L, s.Lt, u, 1e-3, StepForm::compact));
}

TEST(Step, SdARk2Reformulation) {
  Rig s(12, 1);
  const double tau = 0.1 / 12;
  const Eigen::VectorXd u = random_vector(static_cast<Eigen::Index>(s.space.size()), 3);
  const Eigen::VectorXd Lu = s.L.apply(u);
  const Eigen::VectorXd R2u = u + tau * Lu + 0.5 * tau * tau * s.L.apply(Lu);
  const Eigen::VectorXd expect = R2u - 0.5 * tau * tau * s.L.apply(project(s.space, Lu, ProjectionTarget::perp));
  const Eigen::VectorXd got = step(make_scheme(2, Variant::sdA), s.L, s.Lt, u, tau, StepForm::butcher);
  EXPECT_LE((got - expect).norm(), 1e-12 * expect.norm());
}

TEST(Step, SdARequiresPositiveDegree) {
  auto sp = std::make_shared<const DGSpace>(build_mesh_1d(4, 0.0, 0), 0);
  const BlockOperator L = assemble_upwind(*sp);
  try {
    step(make_scheme(2, Variant::sdA), L, L, DGCoeffs(sp), 0.01);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unsupported_degree);
  }
}

TEST(Energy, Rk2Coefficients) {
  const EnergyCoefficients e = energy_coefficients({1.0, 1.0, 0.5});
  ASSERT_EQ(e.beta.size(), 3u);
  EXPECT_NEAR(e.beta[0], 1.0, 1e-15);
  EXPECT_NEAR(e.beta[1], 0.0, 1e-15);
  EXPECT_NEAR(e.beta[2], 0.25, 1e-15);
  EXPECT_NEAR(e.gamma(0, 0), -1.0, 1e-15);
  EXPECT_NEAR(e.gamma(0, 1), -0.5, 1e-15);
  EXPECT_NEAR(e.gamma(1, 0), -0.5, 1e-15);
  EXPECT_NEAR(e.gamma(1, 1), -0.5, 1e-15);
}

TEST(Energy, Rk3FirstNonzeroBeta) {
  const EnergyCoefficients e = energy_coefficients({1.0, 1.0, 0.5, 1.0 / 6});
  EXPECT_NEAR(e.beta[1], 0.0, 1e-15);
  EXPECT_NEAR(e.beta[2], -1.0 / 12, 1e-15);
}

TEST(Energy, SymbolicExpansion) {
  // |P(z)|^2 on the imaginary axis z = i y: sum beta_i y^{2i} must match.
  for (int r : {2, 3, 4, 5}) {
    const SchemeSpec s = make_scheme(r, Variant::standard);
    const EnergyCoefficients e = energy_coefficients(s.alpha);
    for (double y : {0.3, 0.7, 1.1}) {
      std::complex<double> p = 0, z(0, y), zp = 1;
      for (int i = 0; i <= r; ++i, zp *= z) p += s.alpha[i] * zp;
      double rhs = 0;
      for (int i = 0; i <= r; ++i) rhs += e.beta[i] * std::pow(y, 2 * i);
      EXPECT_NEAR(std::norm(p), rhs, 1e-13);
    }
  }
}

TEST(Energy, NumericalIdentity) {
  Rig s(16, 1);
  const double tau = 0.1 / 16;
  for (int r : {2, 3, 4}) {
    const SchemeSpec sc = make_scheme(r, Variant::standard);
    const EnergyCoefficients e = energy_coefficients(sc.alpha);
    const Eigen::VectorXd w = random_vector(static_cast<Eigen::Index>(s.space.size()), 20 + r);
    std::vector<Eigen::VectorXd> P = {w};
    for (int i = 1; i <= r; ++i) P.push_back(s.L.apply(P.back()));
    double rhs = 0;
    for (int i = 0; i <= r; ++i) rhs += e.beta[i] * std::pow(tau, 2 * i) * P[i].squaredNorm();
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) rhs += e.gamma(i, j) * std::pow(tau, i + j + 1) * jump_inner(s.space, P[i], P[j]);
    const double lhs = step(sc, s.L, s.L, w, tau).squaredNorm();
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * w.squaredNorm());
  }
}

TEST(Evolve, ZeroTimeAndComposition) {
  Rig s(8, 2);
  const SchemeSpec sc = make_scheme(3, Variant::sdA);
  const Eigen::VectorXd u = random_vector(static_cast<Eigen::Index>(s.space.size()), 4);
  EXPECT_EQ(evolve(sc, s.L, s.Lt, u, 0.0, 0.01).u, u);
  const EvolveResult two = evolve(sc, s.L, s.Lt, u, 0.02, 0.01);
  EXPECT_EQ(two.steps, 2u);
  EXPECT_FALSE(two.shortened_last_step);
  const EvolveResult seq = evolve_steps(sc, s.L, s.Lt, u, {0.01, 0.01});
  EXPECT_LE((two.u - seq.u).norm(), 1e-15 * u.norm());
}

TEST(Evolve, ShortenedLastStep) {
  Rig s(8, 1);
  const EvolveResult r = evolve(make_scheme(2, Variant::standard), s.L, s.L, s.space.constant(), 1.0, 0.3);
  EXPECT_EQ(r.steps, 4u);
  EXPECT_TRUE(r.shortened_last_step);
  EXPECT_NEAR(r.last_tau, 0.1, 1e-15);
}

TEST(Evolve, BlowUpAboveCflLimit) {
  Rig s(64, 2);
  const SchemeSpec sc = make_scheme(3, Variant::sdA);
  const Eigen::VectorXd u0 = s.space.project([](double x, double) { return std::sin(2 * std::numbers::pi * x); }, 8) +
                             1e-6 * random_vector(static_cast<Eigen::Index>(s.space.size()), 5);
  const double tau = 0.3 / 64;
  bool detected = false;
  try {
    const EvolveResult r = evolve(sc, s.L, s.Lt, u0, 2000 * tau, tau);
    detected = r.u.norm() > 10 * u0.norm();
  } catch (const BlowUpError& e) {
    detected = e.step() <= 2000;
  }
  EXPECT_TRUE(detected);
}

TEST(Stability, MonotoneRk3) {
  for (int k : {2, 3}) {
    Rig s(16, k);
    const double tau = 0.1 * 0.209 / 16;
    for (Variant v : {Variant::standard, Variant::sdA}) {
      const SchemeSpec sc = make_scheme(3, v);
      for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const Eigen::VectorXd u = random_vector(static_cast<Eigen::Index>(s.space.size()), seed);
        ASSERT_LE(step(sc, s.L, s.Lt, u, tau).norm(), u.norm() * (1 + 1e-12));
      }
    }
  }
}

TEST(Stability, StrongTwoStepRk4) {
  Rig s(16, 3);
  const double tau = 0.05 / 16;
  const LinearMap K = evolution_map(make_scheme(4, Variant::standard), s.L, s.L, tau);
  NormOptions two;
  two.power = 2;
  EXPECT_LE(operator_norm(K, two), 1 + 1e-10);
  EXPECT_GT(operator_norm(K), 1.0);
}
