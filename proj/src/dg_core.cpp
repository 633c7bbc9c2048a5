// SPDX-License-Identifier: Apache-2.0
#include "sdrkdg/dg_core.hpp"

#include <cmath>
#include <random>
#include <string>

#include <Eigen/SVD>

#include "sdrkdg/error.hpp"

namespace sdrkdg {

namespace {

// Reference-cell integrals. Rows index the test mode, columns the trial mode.
struct ReferenceTables {
  Eigen::MatrixXd vol_x;     // int d/dxi psi_m * psi_n
  Eigen::MatrixXd vol_y;     // int d/deta psi_m * psi_n
  Eigen::MatrixXd right;     // own trace on xi = 1
  Eigen::MatrixXd left_nb;   // test on xi = -1, trial from left neighbour on its xi = 1
  Eigen::MatrixXd top;       // own trace on eta = 1
  Eigen::MatrixXd bottom_nb; // test on eta = -1, trial from bottom neighbour on its eta = 1
};

ReferenceTables reference_tables(const PolyBasis& basis) {
  const int nm = basis.n_modes();
  const int k = basis.degree();
  const Quadrature q = gauss_quadrature(k + 2);
  ReferenceTables t;
  t.vol_x = Eigen::MatrixXd::Zero(nm, nm);
  t.vol_y = Eigen::MatrixXd::Zero(nm, nm);
  t.right = Eigen::MatrixXd::Zero(nm, nm);
  t.left_nb = Eigen::MatrixXd::Zero(nm, nm);
  t.top = Eigen::MatrixXd::Zero(nm, nm);
  t.bottom_nb = Eigen::MatrixXd::Zero(nm, nm);
  std::vector<double> phi(nm), dxi(nm), deta(nm), a(nm), b(nm);

  if (basis.dim() == 1) {
    for (int p = 0; p < q.size(); ++p) {
      basis.eval(q.nodes[p], 0.0, phi.data());
      basis.eval_grad(q.nodes[p], 0.0, dxi.data(), nullptr);
      for (int m = 0; m < nm; ++m)
        for (int n = 0; n < nm; ++n) t.vol_x(m, n) += q.weights[p] * dxi[m] * phi[n];
    }
    basis.eval(1.0, 0.0, a.data());
    basis.eval(-1.0, 0.0, b.data());
    for (int m = 0; m < nm; ++m)
      for (int n = 0; n < nm; ++n) {
        t.right(m, n) = a[m] * a[n];
        t.left_nb(m, n) = b[m] * a[n];
      }
    return t;
  }

  for (int p = 0; p < q.size(); ++p) {
    for (int r = 0; r < q.size(); ++r) {
      const double w = q.weights[p] * q.weights[r];
      basis.eval(q.nodes[p], q.nodes[r], phi.data());
      basis.eval_grad(q.nodes[p], q.nodes[r], dxi.data(), deta.data());
      for (int m = 0; m < nm; ++m)
        for (int n = 0; n < nm; ++n) {
          t.vol_x(m, n) += w * dxi[m] * phi[n];
          t.vol_y(m, n) += w * deta[m] * phi[n];
        }
    }
    const double w = q.weights[p];
    const double s = q.nodes[p];
    // Vertical edges: xi = +-1, parametrised by eta = s.
    basis.eval(1.0, s, a.data());
    basis.eval(-1.0, s, b.data());
    for (int m = 0; m < nm; ++m)
      for (int n = 0; n < nm; ++n) {
        t.right(m, n) += w * a[m] * a[n];
        t.left_nb(m, n) += w * b[m] * a[n];
      }
    // Horizontal edges: eta = +-1, parametrised by xi = s.
    basis.eval(s, 1.0, a.data());
    basis.eval(s, -1.0, b.data());
    for (int m = 0; m < nm; ++m)
      for (int n = 0; n < nm; ++n) {
        t.top(m, n) += w * a[m] * a[n];
        t.bottom_nb(m, n) += w * b[m] * a[n];
      }
  }
  return t;
}

void zero_untested_rows(Eigen::MatrixXd& block, const PolyBasis& basis, int test_degree) {
  for (int m = 0; m < basis.n_modes(); ++m)
    if (basis.modes()[m].degree() > test_degree) block.row(m).setZero();
}

BlockOperator assemble_1d(const DGSpace& space, int test_degree) {
  const Mesh1D& mesh = space.mesh_1d();
  const PolyBasis& basis = space.basis();
  const std::size_t n = mesh.n_cells();
  const double beta = mesh.beta();
  ReferenceTables t = reference_tables(basis);
  zero_untested_rows(t.vol_x, basis, test_degree);
  zero_untested_rows(t.right, basis, test_degree);
  zero_untested_rows(t.left_nb, basis, test_degree);

  BlockOperator op(n, basis.n_modes());
  BlockOperator::Link self{0, 0, std::vector<std::size_t>(n), std::vector<std::size_t>(n)};
  BlockOperator::Link left{-1, 0, std::vector<std::size_t>(n), std::vector<std::size_t>(n)};
  const bool shared = mesh.uniform();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t im = mesh.left_neighbor(i);
    self.source[i] = i;
    left.source[i] = im;
    if (shared && i > 0) {
      self.block[i] = self.block[0];
      left.block[i] = left.block[0];
      continue;
    }
    const double hi = mesh.h(i), hm = mesh.h(im);
    self.block[i] = op.add_block(beta * (2.0 / hi) * (t.vol_x - t.right));
    left.block[i] = op.add_block(beta * (2.0 / std::sqrt(hi * hm)) * t.left_nb);
  }
  op.add_link(std::move(self));
  op.add_link(std::move(left));
  return op;
}

BlockOperator assemble_2d(const DGSpace& space, int test_degree) {
  const Mesh2D& mesh = space.mesh_2d();
  const PolyBasis& basis = space.basis();
  const std::size_t n = mesh.n_cells();
  ReferenceTables t = reference_tables(basis);
  const double cx = mesh.beta_x() * 2.0 / mesh.hx();
  const double cy = mesh.beta_y() * 2.0 / mesh.hy();
  Eigen::MatrixXd diag = cx * (t.vol_x - t.right) + cy * (t.vol_y - t.top);
  Eigen::MatrixXd from_left = cx * t.left_nb;
  Eigen::MatrixXd from_bottom = cy * t.bottom_nb;
  zero_untested_rows(diag, basis, test_degree);
  zero_untested_rows(from_left, basis, test_degree);
  zero_untested_rows(from_bottom, basis, test_degree);

  BlockOperator op(n, basis.n_modes());
  const std::size_t bd = op.add_block(std::move(diag));
  const std::size_t bl = op.add_block(std::move(from_left));
  const std::size_t bb = op.add_block(std::move(from_bottom));
  BlockOperator::Link self{0, 0, std::vector<std::size_t>(n), std::vector<std::size_t>(n, bd)};
  BlockOperator::Link left{-1, 0, std::vector<std::size_t>(n), std::vector<std::size_t>(n, bl)};
  BlockOperator::Link bottom{0, -1, std::vector<std::size_t>(n), std::vector<std::size_t>(n, bb)};
  for (std::size_t c = 0; c < n; ++c) {
    self.source[c] = c;
    left.source[c] = mesh.left_neighbor(c);
    bottom.source[c] = mesh.bottom_neighbor(c);
  }
  op.add_link(std::move(self));
  op.add_link(std::move(left));
  op.add_link(std::move(bottom));
  return op;
}

// Physical traces of v on both sides of every interface, with quadrature
// weights (times beta and edge Jacobian) so that <<w,v>> = sum wt [w][v].
struct SkeletonSample {
  std::vector<double> minus, plus, weight;
};

SkeletonSample sample_skeleton(const DGSpace& space, const Eigen::VectorXd& v) {
  SkeletonSample s;
  const int nm = space.n_modes();
  const PolyBasis& basis = space.basis();
  if (space.dim() == 1) {
    const Mesh1D& mesh = space.mesh_1d();
    std::vector<double> a(nm), b(nm);
    basis.eval(1.0, 0.0, a.data());
    basis.eval(-1.0, 0.0, b.data());
    const std::size_t n = mesh.n_cells();
    s.minus.resize(n);
    s.plus.resize(n);
    s.weight.assign(n, mesh.beta());
    for (std::size_t i = 0; i < n; ++i) {
      // Interface x_{i+1/2}: minus side is cell i, plus side is cell i+1.
      const std::size_t ip = (i + 1) % n;
      double vm = 0.0, vp = 0.0;
      for (int m = 0; m < nm; ++m) {
        vm += v[static_cast<Eigen::Index>(i) * nm + m] * a[m];
        vp += v[static_cast<Eigen::Index>(ip) * nm + m] * b[m];
      }
      s.minus[i] = vm * std::sqrt(2.0 / mesh.h(i));
      s.plus[i] = vp * std::sqrt(2.0 / mesh.h(ip));
    }
    return s;
  }
  const Mesh2D& mesh = space.mesh_2d();
  const Quadrature q = gauss_quadrature(space.degree() + 2);
  const std::size_t n = mesh.n_cells();
  const double scale = 2.0 / std::sqrt(mesh.hx() * mesh.hy());
  const std::size_t per_edge = static_cast<std::size_t>(q.size());
  s.minus.resize(2 * n * per_edge);
  s.plus.resize(2 * n * per_edge);
  s.weight.resize(2 * n * per_edge);
  std::vector<std::vector<double>> right_tab(per_edge), left_tab(per_edge), top_tab(per_edge), bottom_tab(per_edge);
  for (std::size_t p = 0; p < per_edge; ++p) {
    right_tab[p].resize(nm);
    left_tab[p].resize(nm);
    top_tab[p].resize(nm);
    bottom_tab[p].resize(nm);
    basis.eval(1.0, q.nodes[p], right_tab[p].data());
    basis.eval(-1.0, q.nodes[p], left_tab[p].data());
    basis.eval(q.nodes[p], 1.0, top_tab[p].data());
    basis.eval(q.nodes[p], -1.0, bottom_tab[p].data());
  }
  auto dot = [&](std::size_t c, const std::vector<double>& tab) {
    double acc = 0.0;
    for (int m = 0; m < nm; ++m) acc += v[static_cast<Eigen::Index>(c) * nm + m] * tab[m];
    return acc * scale;
  };
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t i = mesh.ix(c), j = mesh.iy(c);
    const std::size_t right = mesh.index((i + 1) % mesh.nx(), j);
    const std::size_t up = mesh.index(i, (j + 1) % mesh.ny());
    for (std::size_t p = 0; p < per_edge; ++p) {
      const std::size_t ex = (2 * c) * per_edge + p;      // edge x_{i+1/2}
      const std::size_t ey = (2 * c + 1) * per_edge + p;  // edge y_{j+1/2}
      s.minus[ex] = dot(c, right_tab[p]);
      s.plus[ex] = dot(right, left_tab[p]);
      s.weight[ex] = mesh.beta_x() * q.weights[p] * mesh.hy() / 2.0;
      s.minus[ey] = dot(c, top_tab[p]);
      s.plus[ey] = dot(up, bottom_tab[p]);
      s.weight[ey] = mesh.beta_y() * q.weights[p] * mesh.hx() / 2.0;
    }
  }
  return s;
}

}  // namespace

BlockOperator assemble_upwind(const DGSpace& space) { return assemble_upwind_tested(space, space.degree()); }

BlockOperator assemble_upwind_tested(const DGSpace& space, int test_degree) {
  SDRKDG_REQUIRE(test_degree >= 0 && test_degree <= space.degree(), ErrorKind::unsupported_degree,
                 "test degree must lie in [0, k]");
  return space.dim() == 1 ? assemble_1d(space, test_degree) : assemble_2d(space, test_degree);
}

BlockOperator reduce(const BlockOperator& L, const DGSpace& space) {
  SDRKDG_REQUIRE(space.degree() >= 1, ErrorKind::unsupported_degree,
                 "the reduced operator needs k >= 1 (empty test space for k = 0)");
  return L.with_zero_rows(projection_mask(space, ProjectionTarget::perp));
}

std::vector<bool> projection_mask(const DGSpace& space, ProjectionTarget target) {
  std::vector<bool> keep(space.n_modes());
  for (int m = 0; m < space.n_modes(); ++m) {
    const bool top = space.basis().is_top(m);
    switch (target) {
      case ProjectionTarget::full: keep[m] = true; break;
      case ProjectionTarget::k_minus_1: keep[m] = !top; break;
      case ProjectionTarget::perp: keep[m] = top; break;
    }
  }
  return keep;
}

Eigen::VectorXd project(const DGSpace& space, const Eigen::VectorXd& v, ProjectionTarget target) {
  if (target == ProjectionTarget::full) return v;
  const std::vector<bool> keep = projection_mask(space, target);
  Eigen::VectorXd out = v;
  const int nm = space.n_modes();
  for (std::size_t c = 0; c < space.n_cells(); ++c)
    for (int m = 0; m < nm; ++m)
      if (!keep[m]) out[static_cast<Eigen::Index>(c) * nm + m] = 0.0;
  return out;
}

DGCoeffs project(const DGCoeffs& v, ProjectionTarget target) {
  return DGCoeffs(v.space, project(*v.space, v.values, target));
}

DGCoeffs project(std::shared_ptr<const DGSpace> space, const Field& f, ProjectionTarget target, int points) {
  Eigen::VectorXd full = space->project(f, points);
  Eigen::VectorXd out = project(*space, full, target);
  return DGCoeffs(std::move(space), std::move(out));
}

double jump_inner(const DGSpace& space, const Eigen::VectorXd& w, const Eigen::VectorXd& v) {
  const SkeletonSample sw = sample_skeleton(space, w);
  const SkeletonSample sv = sample_skeleton(space, v);
  double acc = 0.0;
  for (std::size_t e = 0; e < sw.weight.size(); ++e)
    acc += sw.weight[e] * (sw.plus[e] - sw.minus[e]) * (sv.plus[e] - sv.minus[e]);
  return acc;
}

double jump_seminorm(const DGSpace& space, const Eigen::VectorXd& v) {
  return std::sqrt(std::max(0.0, jump_inner(space, v, v)));
}

double trace_norm(const DGSpace& space, const Eigen::VectorXd& v) {
  const SkeletonSample s = sample_skeleton(space, v);
  double acc = 0.0;
  for (std::size_t e = 0; e < s.weight.size(); ++e)
    acc += s.weight[e] * (s.minus[e] * s.minus[e] + s.plus[e] * s.plus[e]);
  return std::sqrt(acc);
}

JumpForms jump_forms(const DGCoeffs& w, const DGCoeffs& v) {
  require_compatible(w, v);
  const DGSpace& space = *v.space;
  return {jump_inner(space, w.values, v.values), jump_seminorm(space, v.values), trace_norm(space, v.values)};
}

Eigen::VectorXd compose_mixed(const std::vector<int>& indices, const BlockOperator& L, const DGSpace& space,
                              const Eigen::VectorXd& w) {
  SDRKDG_REQUIRE(!indices.empty(), ErrorKind::invalid_argument, "index vector must be non-empty");
  SDRKDG_REQUIRE(space.degree() >= 1, ErrorKind::unsupported_degree, "mixed compositions need k >= 1");
  Eigen::VectorXd x = w;
  for (std::size_t pos = indices.size(); pos-- > 0;) {
    SDRKDG_REQUIRE(indices[pos] >= 1, ErrorKind::invalid_argument, "indices must be positive");
    for (int r = 0; r < indices[pos]; ++r) x = L.apply(x);
    if (pos > 0) x = project(space, x, ProjectionTarget::perp);
  }
  return x;
}

DGCoeffs compose_mixed(const std::vector<int>& indices, const BlockOperator& L, const DGCoeffs& w) {
  return DGCoeffs(w.space, compose_mixed(indices, L, *w.space, w.values));
}

LinearMap as_map(const BlockOperator& op) {
  LinearMap m;
  m.size = op.size();
  m.apply = [&op](const Eigen::MatrixXd& x, Eigen::MatrixXd& y) { op.apply(x, y); };
  m.apply_transpose = [&op](const Eigen::MatrixXd& x, Eigen::MatrixXd& y) { op.apply_transpose(x, y); };
  return m;
}

LinearMap identity_map(std::size_t n) {
  LinearMap m;
  m.size = n;
  m.apply = [](const Eigen::MatrixXd& x, Eigen::MatrixXd& y) { y = x; };
  m.apply_transpose = m.apply;
  return m;
}

Eigen::MatrixXd dense_matrix(const LinearMap& map, int power) {
  const Eigen::Index n = static_cast<Eigen::Index>(map.size);
  Eigen::MatrixXd x = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd y;
  for (int p = 0; p < power; ++p) {
    map.apply(x, y);
    x.swap(y);
  }
  return x;
}

double operator_norm(const LinearMap& map, const NormOptions& opt) {
  SDRKDG_REQUIRE(opt.power >= 1, ErrorKind::invalid_argument, "power must be >= 1");
  if (opt.method == NormMethod::dense_svd) {
    SDRKDG_REQUIRE(map.size <= opt.dense_cap, ErrorKind::invalid_argument,
                   "operator too large for dense SVD (" + std::to_string(map.size) + " unknowns)");
    const Eigen::MatrixXd a = dense_matrix(map, opt.power);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
    return svd.singularValues()(0);
  }

  const Eigen::Index n = static_cast<Eigen::Index>(map.size);
  std::mt19937_64 gen(opt.seed);
  Eigen::MatrixXd x(n, 1), y, z;
  for (Eigen::Index i = 0; i < n; ++i) x(i, 0) = static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5;
  x /= x.norm();
  double estimate = 0.0;
  for (int it = 0; it < opt.max_iter; ++it) {
    y = x;
    for (int p = 0; p < opt.power; ++p) {
      map.apply(y, z);
      y.swap(z);
    }
    const double sigma2 = y.squaredNorm();  // Rayleigh quotient of A^T A at unit x
    for (int p = 0; p < opt.power; ++p) {
      map.apply_transpose(y, z);
      y.swap(z);
    }
    const double ny = y.norm();
    if (ny == 0.0) return 0.0;
    x = y / ny;
    if (it > 0 && std::abs(sigma2 - estimate) <= opt.rel_tol * sigma2) return std::sqrt(sigma2);
    estimate = sigma2;
  }
  throw ConvergenceError("power iteration did not converge", std::sqrt(estimate), x.col(0));
}

double operator_norm(const BlockOperator& op, const NormOptions& options) { return operator_norm(as_map(op), options); }

}  // namespace sdrkdg
