// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "sdrkdg/basis.hpp"
#include "sdrkdg/dg_core.hpp"
#include "sdrkdg/error.hpp"
#include "sdrkdg/projections.hpp"
#include "sdrkdg/problems.hpp"
#include "support.hpp"

using namespace sdrkdg;

namespace {

const double pi = std::numbers::pi;

}  // namespace

TEST(GaussRadau, ReproducesMembers) {
  const DGSpace s(build_mesh_1d(6, 0.2, 1), 3);
  const Eigen::VectorXd v = oracle::random_vector(static_cast<Eigen::Index>(s.size()), 1);
  // Evaluate inside each cell so the right trace is taken from the left.
  const Field f = [&](double x, double) {
    const auto& nodes = s.mesh_1d().nodes();
    std::size_t c = 0;
    while (c + 1 < s.n_cells() && x > nodes[c + 1]) ++c;
    const double xi = 2 * (x - nodes[c]) / (nodes[c + 1] - nodes[c]) - 1;
    return s.evaluate(v, c, xi);
  };
  EXPECT_LE((gauss_radau_1d(s, f, 8) - v).norm(), 1e-12 * v.norm());
}

TEST(GaussRadau, ClosedFormSingleCellOracle) {
  // Two cells of [0,1]; on cell [0,0.5] with w = x^2 the P^1 projection has mean
  // (1/0.5) int_0^0.5 x^2 = 1/12 and right trace 1/4.
  const DGSpace s(build_mesh_1d(2, 0.0, 0), 1);
  const Eigen::VectorXd p = gauss_radau_1d(s, [](double x, double) { return x * x; }, 6);
  EXPECT_NEAR(s.evaluate(p, 0, 1.0), 0.25, 1e-14);
  EXPECT_NEAR(0.5 * (s.evaluate(p, 0, -1.0) + s.evaluate(p, 0, 1.0)), 1.0 / 12, 1e-14);
  // Rescaled to the unit cell this is -1/3 + 4/3 x, so the left trace is -1/12.
  EXPECT_NEAR(s.evaluate(p, 0, -1.0), -1.0 / 12, 1e-14);
}

TEST(GaussRadau, Constraints) {
  const auto w = [](double x, double) { return std::exp(std::sin(2 * pi * x)); };
  for (int k : {1, 2, 4}) {
    const DGSpace s(build_mesh_1d(9, 0.25, 3), k);
    const Eigen::VectorXd p = gauss_radau_1d(s, w, 12);
    const Quadrature q = gauss_quadrature(14);
    for (std::size_t c = 0; c < s.n_cells(); ++c) {
      const CellBox b = s.cell(c);
      EXPECT_NEAR(s.evaluate(p, c, 1.0), w(b.x1, 0), 1e-12);
      for (int m = 0; m < k; ++m) {
        double mom = 0;
        for (int i = 0; i < q.size(); ++i) {
          const double x = b.x0 + 0.5 * (q.nodes[i] + 1) * b.hx();
          mom += q.weights[i] * (s.evaluate(p, c, q.nodes[i]) - w(x, 0)) * legendre_modes(k, q.nodes[i]).value[m];
        }
        EXPECT_NEAR(mom, 0.0, 1e-12);
      }
    }
  }
}

TEST(GaussRadau, Superconvergence) {
  for (int k : {1, 2, 3}) {
    const DGSpace s(build_mesh_1d(10, 0.0, 0), k);
    const Eigen::VectorXd pg = gauss_radau_1d(s, [](double x, double) { return std::sin(2 * pi * x); }, 20);
    const Eigen::VectorXd PiLw = s.project([](double x, double) { return -2 * pi * std::cos(2 * pi * x); }, 20);
    EXPECT_LE((PiLw - assemble_upwind(s).apply(pg)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Lsz, ReproducesMembersAndAverage) {
  const DGSpace s(build_mesh_2d(4, 4, 1.0, 1.5), 2);
  const Eigen::VectorXd v = oracle::random_vector(static_cast<Eigen::Index>(s.size()), 2);
  const Mesh2D& m = s.mesh_2d();
  const Field f = [&](double x, double y) {
    // Points on a top/right edge belong to the cell below/left of it.
    const auto i = static_cast<std::size_t>(std::ceil(x * 4 - 1e-9)) - 1;
    const auto j = static_cast<std::size_t>(std::ceil(y * 4 - 1e-9)) - 1;
    const CellBox b = s.cell(m.index(i, j));
    return s.evaluate(v, m.index(i, j), 2 * (x - b.x0) / b.hx() - 1, 2 * (y - b.y0) / b.hy() - 1);
  };
  EXPECT_LE((lsz_2d(s, f, 6) - v).norm(), 1e-11 * v.norm());

  const auto w = [](double x, double y) { return std::sin(2 * pi * (x + y)); };
  const Eigen::VectorXd p = lsz_2d(s, w, 10);
  const Eigen::VectorXd avg = s.project(w, 10);
  for (std::size_t c = 0; c < s.n_cells(); ++c)
    EXPECT_NEAR(p[static_cast<Eigen::Index>(c) * s.n_modes()], avg[static_cast<Eigen::Index>(c) * s.n_modes()], 1e-12);
  EXPECT_LE(lsz_residuals(s, p, w, 10).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE(oracle::lsz_residual_oracle(s, p, w, 10), 1e-10);
}

TEST(Lsz, RejectsBadInput) {
  const DGSpace s1(build_mesh_1d(4, 0.0, 0), 1);
  EXPECT_THROW(lsz_2d(s1, [](double, double) { return 0.0; }, 4), Error);
  EXPECT_THROW(build_mesh_2d(4, 4, 1.0, 0.0), Error);
}

TEST(Projections, ApproximationOrders) {
  const auto w1 = [](double x, double) { return std::sin(2 * pi * x); };
  const auto w2 = [](double x, double y) { return std::sin(2 * pi * (x + y)); };
  for (int k : {1, 2}) {
    std::vector<double> e1, e2;
    for (std::size_t N : {16, 32, 64, 128}) {
      const DGSpace s(build_mesh_1d(N, 0.0, 0), k);
      e1.push_back(s.l2_distance(gauss_radau_1d(s, w1, 12), w1, 12));
    }
    for (std::size_t N : {8, 16, 32, 64}) {
      const DGSpace s(build_mesh_2d(N, N), k);
      e2.push_back(s.l2_distance(lsz_2d(s, w2, 8), w2, 8));
    }
    EXPECT_NEAR(oracle::eoc(e1[2], e1[3], 64, 128), k + 1, 0.05);
    EXPECT_NEAR(oracle::eoc(e2[2], e2[3], 32, 64), k + 1, 0.05);
  }
}

TEST(PiStar, ZeroStepIsSpecialProjection) {
  const DGSpace s(build_mesh_1d(12, 0.0, 0), 2);
  const ProblemSpec pb = make_problem(InitialCondition::sin_1d);
  const OperatorPowers Lw = [&](int i, double x, double y) { return pb.L_power(i, x, y); };
  const BlockOperator L = assemble_upwind(s), Lt = reduce(L, s);
  const Eigen::VectorXd a = pi_star(s, Lw, make_scheme(3, Variant::sdA), Lt, 0.0, 3);
  const Eigen::VectorXd b = gauss_radau_1d(s, [&](double x, double y) { return pb.initial(x, y); }, 12);
  EXPECT_LE((a - b).norm(), 1e-13 * b.norm());
}

TEST(PiStar, SecondOrderClosedForm) {
  const DGSpace s(build_mesh_1d(16, 0.0, 0), 1);
  const ProblemSpec pb = make_problem(InitialCondition::sin_1d);
  const OperatorPowers Lw = [&](int i, double x, double y) { return pb.L_power(i, x, y); };
  const BlockOperator L = assemble_upwind(s), Lt = reduce(L, s);
  const double tau = 0.05 / 16;
  const Eigen::VectorXd got = pi_star(s, Lw, make_scheme(2, Variant::sdA), Lt, tau, 2);
  const Eigen::VectorXd rhs =
      gauss_radau_1d(s, [&](double x, double y) { return pb.L_power(0, x, y) + 0.5 * tau * pb.L_power(1, x, y); }, 12);
  const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(rhs.size(), rhs.size()) + 0.5 * tau * Lt.to_dense();
  const Eigen::VectorXd expect = A.partialPivLu().solve(rhs);
  EXPECT_LE((got - expect).norm(), 1e-11 * expect.norm());
}

TEST(PiStar, Preconditions) {
  const DGSpace s(build_mesh_1d(8, 0.0, 0), 1);
  const ProblemSpec pb = make_problem(InitialCondition::sin_1d);
  const OperatorPowers Lw = [&](int i, double x, double y) { return pb.L_power(i, x, y); };
  const BlockOperator L = assemble_upwind(s), Lt = reduce(L, s);
  EXPECT_THROW(pi_star(s, Lw, make_scheme(3, Variant::sdA), Lt, 0.01, 3), Error);  // q > k+1
  try {
    pi_star(s, Lw, make_scheme(3, Variant::sdA), Lt, 5.0, 2);
    FAIL();
  } catch (const CflTooLargeError& e) {
    EXPECT_GE(e.contraction(), 1.0);
  }
}
