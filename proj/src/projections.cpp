// SPDX-License-Identifier: Apache-2.0
#include "sdrkdg/projections.hpp"

#include <cmath>
#include <vector>

#include <Eigen/LU>

#include "sdrkdg/basis.hpp"
#include "sdrkdg/error.hpp"

namespace sdrkdg {

Eigen::VectorXd gauss_radau_1d(const DGSpace& space, const Field& w, int points) {
  SDRKDG_REQUIRE(space.dim() == 1, ErrorKind::invalid_argument, "Gauss-Radau projection is 1D only");
  const int nm = space.n_modes();
  const int k = space.degree();
  const Eigen::VectorXd moments = space.project(w, points);
  std::vector<double> right(nm);
  space.basis().eval(1.0, 0.0, right.data());
  Eigen::VectorXd out(moments.size());
  for (std::size_t c = 0; c < space.n_cells(); ++c) {
    const CellBox box = space.cell(c);
    const double scale = std::sqrt(2.0 / box.hx());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nm, nm);
    Eigen::VectorXd b(nm);
    for (int m = 0; m < k; ++m) {
      A(m, m) = 1.0;
      b[m] = moments[static_cast<Eigen::Index>(c) * nm + m];
    }
    for (int n = 0; n < nm; ++n) A(k, n) = scale * right[n];
    b[k] = w(box.x1, 0.0);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    SDRKDG_REQUIRE(lu.isInvertible(), ErrorKind::projection_failure, "singular Gauss-Radau system");
    out.segment(static_cast<Eigen::Index>(c) * nm, nm) = lu.solve(b);
  }
  return out;
}

namespace {

// Linear functionals of the LSZ conditions on one cell of a uniform mesh.
// Row 0 is the cell average, row m >= 1 is
//   B(eta, phi_m) = <eta, beta.grad phi_m> - int beta_y eta(top-) [phi_m(top-) - phi_m(bottom+)] dx
//                   - int beta_x eta(right-) [phi_m(right-) - phi_m(left+)] dy.
struct LszTables {
  Eigen::MatrixXd matrix;  // functionals applied to the cell's own modes
  Quadrature q;
  std::vector<std::vector<double>> vol_weight;  // [point][mode]: weight of w at interior node
  std::vector<std::vector<double>> top_weight;  // [point][mode]: weight of w on the top edge
  std::vector<std::vector<double>> right_weight;
};

LszTables lsz_tables(const DGSpace& space, int points) {
  const Mesh2D& mesh = space.mesh_2d();
  const PolyBasis& basis = space.basis();
  const int nm = basis.n_modes();
  const double hx = mesh.hx(), hy = mesh.hy();
  const double bx = mesh.beta_x(), by = mesh.beta_y();
  const double s = 2.0 / std::sqrt(hx * hy);  // physical mode scale
  LszTables t;
  t.q = gauss_quadrature(points);
  const int nq = t.q.size();
  t.vol_weight.assign(static_cast<std::size_t>(nq * nq), std::vector<double>(nm, 0.0));
  t.top_weight.assign(static_cast<std::size_t>(nq), std::vector<double>(nm, 0.0));
  t.right_weight.assign(static_cast<std::size_t>(nq), std::vector<double>(nm, 0.0));
  std::vector<double> phi(nm), dxi(nm), deta(nm), a(nm), b(nm);
  for (int p = 0; p < nq; ++p)
    for (int r = 0; r < nq; ++r) {
      basis.eval(t.q.nodes[p], t.q.nodes[r], phi.data());
      basis.eval_grad(t.q.nodes[p], t.q.nodes[r], dxi.data(), deta.data());
      const double jac = t.q.weights[p] * t.q.weights[r] * hx * hy / 4.0;
      auto& row = t.vol_weight[static_cast<std::size_t>(p * nq + r)];
      row[0] = jac * s;  // phi_0 for the average
      for (int m = 1; m < nm; ++m) row[m] = jac * s * (bx * (2.0 / hx) * dxi[m] + by * (2.0 / hy) * deta[m]);
    }
  for (int p = 0; p < nq; ++p) {
    basis.eval(t.q.nodes[p], 1.0, a.data());
    basis.eval(t.q.nodes[p], -1.0, b.data());
    for (int m = 1; m < nm; ++m) t.top_weight[p][m] = -by * t.q.weights[p] * (hx / 2.0) * s * (a[m] - b[m]);
    basis.eval(1.0, t.q.nodes[p], a.data());
    basis.eval(-1.0, t.q.nodes[p], b.data());
    for (int m = 1; m < nm; ++m) t.right_weight[p][m] = -bx * t.q.weights[p] * (hy / 2.0) * s * (a[m] - b[m]);
  }
  // Apply the functionals to the cell's own modes (reference cell values).
  t.matrix = Eigen::MatrixXd::Zero(nm, nm);
  for (int p = 0; p < nq; ++p)
    for (int r = 0; r < nq; ++r) {
      basis.eval(t.q.nodes[p], t.q.nodes[r], phi.data());
      const auto& row = t.vol_weight[static_cast<std::size_t>(p * nq + r)];
      for (int m = 0; m < nm; ++m)
        for (int n = 0; n < nm; ++n) t.matrix(m, n) += row[m] * s * phi[n];
    }
  for (int p = 0; p < nq; ++p) {
    basis.eval(t.q.nodes[p], 1.0, phi.data());
    for (int m = 1; m < nm; ++m)
      for (int n = 0; n < nm; ++n) t.matrix(m, n) += t.top_weight[p][m] * s * phi[n];
    basis.eval(1.0, t.q.nodes[p], phi.data());
    for (int m = 1; m < nm; ++m)
      for (int n = 0; n < nm; ++n) t.matrix(m, n) += t.right_weight[p][m] * s * phi[n];
  }
  return t;
}

Eigen::VectorXd lsz_functionals(const DGSpace& space, const LszTables& t, const Field& w, std::size_t c) {
  const int nm = space.n_modes();
  const int nq = t.q.size();
  const CellBox box = space.cell(c);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(nm);
  auto xs = [&](double xi) { return box.x0 + 0.5 * (xi + 1.0) * box.hx(); };
  auto ys = [&](double eta) { return box.y0 + 0.5 * (eta + 1.0) * box.hy(); };
  for (int p = 0; p < nq; ++p)
    for (int r = 0; r < nq; ++r) {
      const double val = w(xs(t.q.nodes[p]), ys(t.q.nodes[r]));
      const auto& row = t.vol_weight[static_cast<std::size_t>(p * nq + r)];
      for (int m = 0; m < nm; ++m) f[m] += row[m] * val;
    }
  for (int p = 0; p < nq; ++p) {
    const double top = w(xs(t.q.nodes[p]), box.y1);
    const double right = w(box.x1, ys(t.q.nodes[p]));
    for (int m = 1; m < nm; ++m) f[m] += t.top_weight[p][m] * top + t.right_weight[p][m] * right;
  }
  return f;
}

void require_lsz_space(const DGSpace& space) {
  SDRKDG_REQUIRE(space.dim() == 2, ErrorKind::invalid_argument, "Liu-Shu-Zhang projection is 2D only");
  SDRKDG_REQUIRE(space.uniform(), ErrorKind::unsupported_mesh, "Liu-Shu-Zhang projection needs a uniform mesh");
  SDRKDG_REQUIRE(space.mesh_2d().beta_x() > 0.0 && space.mesh_2d().beta_y() > 0.0, ErrorKind::invalid_speed,
                 "Liu-Shu-Zhang projection needs positive speeds");
}

}  // namespace

Eigen::VectorXd lsz_2d(const DGSpace& space, const Field& w, int points) {
  require_lsz_space(space);
  const LszTables t = lsz_tables(space, points);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(t.matrix);
  SDRKDG_REQUIRE(lu.isInvertible(), ErrorKind::projection_failure, "singular Liu-Shu-Zhang system");
  const int nm = space.n_modes();
  Eigen::VectorXd out(static_cast<Eigen::Index>(space.size()));
  for (std::size_t c = 0; c < space.n_cells(); ++c)
    out.segment(static_cast<Eigen::Index>(c) * nm, nm) = lu.solve(lsz_functionals(space, t, w, c));
  return out;
}

Eigen::VectorXd lsz_residuals(const DGSpace& space, const Eigen::VectorXd& p, const Field& w, int points) {
  require_lsz_space(space);
  const LszTables t = lsz_tables(space, points);
  const int nm = space.n_modes();
  Eigen::VectorXd res(static_cast<Eigen::Index>(space.size()));
  for (std::size_t c = 0; c < space.n_cells(); ++c) {
    const Eigen::Index off = static_cast<Eigen::Index>(c) * nm;
    res.segment(off, nm) = t.matrix * p.segment(off, nm) - lsz_functionals(space, t, w, c);
  }
  return res;
}

Eigen::VectorXd special_projection(const DGSpace& space, const Field& w, int points) {
  return space.dim() == 1 ? gauss_radau_1d(space, w, points) : lsz_2d(space, w, points);
}

Eigen::VectorXd resolvent_solve(const SchemeSpec& scheme, const BlockOperator& Lhat, double tau,
                                const Eigen::VectorXd& rhs, const PiStarOptions& opt) {
  const int s = scheme.stages;
  // P(z) = I + Q(z), Q(z) = sum_{i=2}^s alpha_i z^{i-1}; y <- rhs - Q y.
  auto apply_q = [&](const Eigen::VectorXd& y) {
    if (s < 2) return Eigen::VectorXd(Eigen::VectorXd::Zero(y.size()));
    Eigen::VectorXd v = scheme.alpha[s] * y;
    for (int i = s - 1; i >= 2; --i) v = scheme.alpha[i] * y + tau * Lhat.apply(v);
    return Eigen::VectorXd(tau * Lhat.apply(v));
  };
  const double scale = std::max(rhs.norm(), 1e-300);
  Eigen::VectorXd y = rhs;
  double prev_step = 0.0;
  double contraction = 0.0;
  for (int it = 0; it < opt.max_iter; ++it) {
    const Eigen::VectorXd qy = apply_q(y);
    const double residual = (y + qy - rhs).norm();
    if (residual <= opt.residual_tol * scale) return y;
    Eigen::VectorXd next = rhs - qy;
    const double step = (next - y).norm();
    if (it > 0 && prev_step > 0.0) contraction = step / prev_step;
    if (it > 2 && contraction >= 1.0)
      throw CflTooLargeError("resolvent iteration diverges (contraction " + std::to_string(contraction) + ")",
                             contraction);
    prev_step = step;
    y.swap(next);
  }
  throw CflTooLargeError("resolvent iteration did not reach the residual tolerance (contraction " +
                             std::to_string(contraction) + ")",
                         contraction);
}

Eigen::VectorXd pi_star(const DGSpace& space, const OperatorPowers& Lw, const SchemeSpec& scheme,
                        const BlockOperator& Lhat, double tau, int q, const PiStarOptions& opt) {
  const int s = scheme.stages;
  SDRKDG_REQUIRE(q >= 1 && q <= std::min(scheme.order, space.degree() + 1), ErrorKind::invalid_argument,
                 "pi_star needs 1 <= q <= min(r, k+1)");
  SDRKDG_REQUIRE(tau >= 0.0, ErrorKind::invalid_argument, "time step must be non-negative");
  // Pi_G sum_{i=1}^q (i!)^{-1} (tau L)^{i-1} w: combine the analytic powers first.
  Field taylor = [&](double x, double y) {
    double acc = 0.0, fact = 1.0, tp = 1.0;
    for (int i = 1; i <= q; ++i) {
      fact *= i;
      acc += tp / fact * Lw(i - 1, x, y);
      tp *= tau;
    }
    return acc;
  };
  Eigen::VectorXd rhs = special_projection(space, taylor, opt.points);
  if (s > q && tau > 0.0) {
    const Eigen::VectorXd g = special_projection(space, [&](double x, double y) { return Lw(q, x, y); }, opt.points);
    // sum_{i=q+1}^s alpha_i (tau Lhat)^{i-1-q} g, Horner.
    Eigen::VectorXd v = scheme.alpha[s] * g;
    for (int i = s - 1; i >= q + 1; --i) v = scheme.alpha[i] * g + tau * Lhat.apply(v);
    rhs += std::pow(tau, q) * v;
  }
  if (tau == 0.0) return rhs;
  return resolvent_solve(scheme, Lhat, tau, rhs, opt);
}

}  // namespace sdrkdg
