// SPDX-License-Identifier: Apache-2.0
// Shared helpers for the unit and acceptance tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "sdrkdg/basis.hpp"
#include "sdrkdg/space.hpp"

namespace sdrkdg::oracle {

inline Eigen::VectorXd random_vector(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist;
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = dist(gen);
  return v;
}

inline double eoc(double e_coarse, double e_fine, double n_coarse, double n_fine) {
  return std::log(e_coarse / e_fine) / std::log(n_fine / n_coarse);
}

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// sup_w (w^T A w) / (w^T B w) over w outside the null space of the PSD
// matrix B. Eigenvalues of B below rel_cut * max are treated as zero.
inline double sup_ratio(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double rel_cut = 1e-10) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eb(0.5 * (B + B.transpose()));
  const Eigen::VectorXd d = eb.eigenvalues();
  const double cut = rel_cut * d.cwiseAbs().maxCoeff();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < d.size(); ++i)
    if (d[i] > cut) keep.push_back(i);
  Eigen::MatrixXd W(B.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j)
    W.col(static_cast<Eigen::Index>(j)) = eb.eigenvectors().col(keep[j]) / std::sqrt(d[keep[j]]);
  const Eigen::MatrixXd S = W.transpose() * (0.5 * (A + A.transpose())) * W;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Defining conditions of the 2D special projection, computed from the
// reference basis with plain tensor Gauss quadrature: for every test mode of
// positive degree,
//   int_K e (beta . grad v) - int_top beta_y e (v_top - v_bottom)
//                           - int_right beta_x e (v_right - v_left),
// with e = p - w and traces of p taken from inside K.
template <class F>
double lsz_residual_oracle(const sdrkdg::DGSpace& s, const Eigen::VectorXd& p, F&& w, int points) {
  const sdrkdg::Quadrature q = sdrkdg::gauss_quadrature(points);
  const auto& m2 = s.mesh_2d();
  const int nm = s.n_modes();
  std::vector<double> v(static_cast<std::size_t>(nm)), dx(v.size()), dy(v.size());
  double worst = 0.0;
  for (std::size_t c = 0; c < s.n_cells(); ++c) {
    const sdrkdg::CellBox b = s.cell(c);
    const double sx = std::sqrt(2.0 / b.hx()), sy = std::sqrt(2.0 / b.hy());
    auto X = [&](double xi) { return b.x0 + 0.5 * (xi + 1) * b.hx(); };
    auto Y = [&](double et) { return b.y0 + 0.5 * (et + 1) * b.hy(); };
    std::vector<double> acc(v.size(), 0.0);
    for (int i = 0; i < q.size(); ++i)
      for (int j = 0; j < q.size(); ++j) {
        const double xi = q.nodes[i], et = q.nodes[j];
        s.basis().eval_grad(xi, et, dx.data(), dy.data());
        const double e = s.evaluate(p, c, xi, et) - w(X(xi), Y(et));
        const double wt = q.weights[i] * q.weights[j] * 0.25 * b.hx() * b.hy();
        for (int m = 1; m < nm; ++m)
          acc[m] += wt * e * sx * sy * (m2.beta_x() * dx[m] * 2 / b.hx() + m2.beta_y() * dy[m] * 2 / b.hy());
      }
    for (int i = 0; i < q.size(); ++i) {
      const double t = q.nodes[i];
      s.basis().eval(t, 1.0, v.data());
      s.basis().eval(t, -1.0, dx.data());
      const double et = s.evaluate(p, c, t, 1.0) - w(X(t), b.y1);
      for (int m = 1; m < nm; ++m)
        acc[m] -= m2.beta_y() * q.weights[i] * 0.5 * b.hx() * et * sx * sy * (v[m] - dx[m]);
      s.basis().eval(1.0, t, v.data());
      s.basis().eval(-1.0, t, dx.data());
      const double er = s.evaluate(p, c, 1.0, t) - w(b.x1, Y(t));
      for (int m = 1; m < nm; ++m)
        acc[m] -= m2.beta_x() * q.weights[i] * 0.5 * b.hy() * er * sx * sy * (v[m] - dx[m]);
    }
    for (int m = 1; m < nm; ++m) worst = std::max(worst, std::abs(acc[m]));
  }
  return worst;
}

}  // namespace sdrkdg::oracle
