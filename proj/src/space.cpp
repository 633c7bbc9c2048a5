// SPDX-License-Identifier: Apache-2.0
#include "sdrkdg/space.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sdrkdg/error.hpp"

namespace sdrkdg {

DGSpace::DGSpace(Mesh1D mesh, int degree) : mesh_(std::move(mesh)), basis_(1, degree) {}
DGSpace::DGSpace(Mesh2D mesh, int degree) : mesh_(std::move(mesh)), basis_(2, degree) {}

std::size_t DGSpace::n_cells() const {
  return std::visit([](const auto& m) { return m.n_cells(); }, mesh_);
}

CellBox DGSpace::cell(std::size_t c) const {
  if (dim() == 1) {
    const auto& nodes = mesh_1d().nodes();
    return {nodes[c], nodes[c + 1], 0.0, 0.0};
  }
  const Mesh2D& m = mesh_2d();
  const double i = static_cast<double>(m.ix(c)), j = static_cast<double>(m.iy(c));
  return {i * m.hx(), (i + 1) * m.hx(), j * m.hy(), (j + 1) * m.hy()};
}

double DGSpace::h() const {
  return std::visit([](const auto& m) { return m.h_max(); }, mesh_);
}

bool DGSpace::uniform() const { return dim() == 2 || mesh_1d().uniform(); }

double DGSpace::evaluate(const Eigen::VectorXd& coeffs, std::size_t c, double xi, double eta) const {
  const int nm = n_modes();
  std::vector<double> phi(nm);
  basis_.eval(xi, eta, phi.data());
  const CellBox box = cell(c);
  double scale = std::sqrt(2.0 / box.hx());
  if (dim() == 2) scale *= std::sqrt(2.0 / box.hy());
  double sum = 0.0;
  for (int m = 0; m < nm; ++m) sum += coeffs[static_cast<Eigen::Index>(c) * nm + m] * phi[m];
  return scale * sum;
}

double DGSpace::evaluate_at(const Eigen::VectorXd& coeffs, double x, double y) const {
  if (dim() == 1) {
    const auto& nodes = mesh_1d().nodes();
    auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
    std::size_t c = it == nodes.begin() ? 0 : static_cast<std::size_t>(it - nodes.begin()) - 1;
    c = std::min(c, n_cells() - 1);
    const CellBox b = cell(c);
    const double xi = std::clamp(2.0 * (x - b.x0) / b.hx() - 1.0, -1.0, 1.0);
    return evaluate(coeffs, c, xi);
  }
  const Mesh2D& m = mesh_2d();
  const std::size_t i = std::min(static_cast<std::size_t>(x / m.hx()), m.nx() - 1);
  const std::size_t j = std::min(static_cast<std::size_t>(y / m.hy()), m.ny() - 1);
  const std::size_t c = m.index(i, j);
  const CellBox b = cell(c);
  const double xi = std::clamp(2.0 * (x - b.x0) / b.hx() - 1.0, -1.0, 1.0);
  const double eta = std::clamp(2.0 * (y - b.y0) / b.hy() - 1.0, -1.0, 1.0);
  return evaluate(coeffs, c, xi, eta);
}

Eigen::VectorXd DGSpace::project(const Field& f, int points) const {
  const Quadrature q = gauss_quadrature(points);
  const int nm = n_modes();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size()));
  std::vector<double> phi(nm);
  // Tabulate the reference modes once.
  const int nq2 = dim() == 1 ? q.size() : q.size() * q.size();
  std::vector<double> table(static_cast<std::size_t>(nq2) * nm);
  std::vector<double> wts(nq2), xis(nq2), etas(nq2);
  for (int a = 0, p = 0; a < q.size(); ++a) {
    if (dim() == 1) {
      basis_.eval(q.nodes[a], 0.0, &table[static_cast<std::size_t>(p) * nm]);
      wts[p] = q.weights[a];
      xis[p] = q.nodes[a];
      etas[p] = 0.0;
      ++p;
      continue;
    }
    for (int b = 0; b < q.size(); ++b, ++p) {
      basis_.eval(q.nodes[a], q.nodes[b], &table[static_cast<std::size_t>(p) * nm]);
      wts[p] = q.weights[a] * q.weights[b];
      xis[p] = q.nodes[a];
      etas[p] = q.nodes[b];
    }
  }
  for (std::size_t c = 0; c < n_cells(); ++c) {
    const CellBox box = cell(c);
    // int_K f phi_m = (jacobian * physical scale) * sum_q w_q f psi_m
    double factor = std::sqrt(box.hx() / 2.0);
    if (dim() == 2) factor *= std::sqrt(box.hy() / 2.0);
    for (int p = 0; p < nq2; ++p) {
      const double x = box.x0 + 0.5 * (xis[p] + 1.0) * box.hx();
      const double y = dim() == 2 ? box.y0 + 0.5 * (etas[p] + 1.0) * box.hy() : 0.0;
      const double fw = f(x, y) * wts[p] * factor;
      for (int m = 0; m < nm; ++m)
        out[static_cast<Eigen::Index>(c) * nm + m] += fw * table[static_cast<std::size_t>(p) * nm + m];
    }
  }
  return out;
}

double DGSpace::l2_distance(const Eigen::VectorXd& coeffs, const Field& f, int points) const {
  const Quadrature q = gauss_quadrature(points);
  const int nm = n_modes();
  std::vector<double> phi(nm);
  double total = 0.0;
  for (std::size_t c = 0; c < n_cells(); ++c) {
    const CellBox box = cell(c);
    double scale = std::sqrt(2.0 / box.hx());
    double jac = box.hx() / 2.0;
    if (dim() == 2) {
      scale *= std::sqrt(2.0 / box.hy());
      jac *= box.hy() / 2.0;
    }
    const Eigen::Index off = static_cast<Eigen::Index>(c) * nm;
    const int ny = dim() == 2 ? q.size() : 1;
    double cell_sum = 0.0;
    for (int a = 0; a < q.size(); ++a) {
      for (int b = 0; b < ny; ++b) {
        const double eta = dim() == 2 ? q.nodes[b] : 0.0;
        const double w = q.weights[a] * (dim() == 2 ? q.weights[b] : 1.0);
        basis_.eval(q.nodes[a], eta, phi.data());
        double uh = 0.0;
        for (int m = 0; m < nm; ++m) uh += coeffs[off + m] * phi[m];
        uh *= scale;
        const double x = box.x0 + 0.5 * (q.nodes[a] + 1.0) * box.hx();
        const double y = dim() == 2 ? box.y0 + 0.5 * (eta + 1.0) * box.hy() : 0.0;
        const double e = uh - f(x, y);
        cell_sum += w * e * e;
      }
    }
    total += jac * cell_sum;
  }
  return std::sqrt(total);
}

Eigen::VectorXd DGSpace::constant(double value) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size()));
  const int nm = n_modes();
  for (std::size_t c = 0; c < n_cells(); ++c) {
    const CellBox box = cell(c);
    double measure = box.hx() * (dim() == 2 ? box.hy() : 1.0);
    // The lowest mode is 1/sqrt(|K|) on the cell.
    out[static_cast<Eigen::Index>(c) * nm] = value * std::sqrt(measure);
  }
  return out;
}

bool same_discretization(const DGSpace& a, const DGSpace& b) {
  if (&a == &b) return true;
  if (a.dim() != b.dim() || a.degree() != b.degree() || a.n_cells() != b.n_cells()) return false;
  if (a.dim() == 1) return a.mesh_1d().nodes() == b.mesh_1d().nodes() && a.mesh_1d().beta() == b.mesh_1d().beta();
  return a.mesh_2d().beta_x() == b.mesh_2d().beta_x() && a.mesh_2d().beta_y() == b.mesh_2d().beta_y();
}

void require_compatible(const DGCoeffs& a, const DGCoeffs& b) {
  SDRKDG_REQUIRE(a.space && b.space && same_discretization(*a.space, *b.space), ErrorKind::incompatible,
                 "coefficient sets belong to different discretizations");
}

}  // namespace sdrkdg
