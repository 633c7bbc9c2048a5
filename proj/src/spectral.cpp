// SPDX-License-Identifier: Apache-2.0
#include "sdrkdg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "sdrkdg/basis.hpp"
#include "sdrkdg/error.hpp"
#include "sdrkdg/parallel.hpp"

namespace sdrkdg {

void evolution_increment(const SchemeSpec& scheme, const BlockOperator& L, const BlockOperator& L_tilde, double tau,
                         const Eigen::MatrixXd& x, Eigen::MatrixXd& out) {
  const BlockOperator& Lhat = scheme.variant == Variant::sdA ? L_tilde : L;
  const int s = scheme.stages;
  Eigen::MatrixXd v = scheme.alpha[s] * x;
  Eigen::MatrixXd tmp;
  for (int i = s - 1; i >= 1; --i) {
    Lhat.apply(v, tmp);
    v = scheme.alpha[i] * x + tau * tmp;
  }
  L.apply(v, out);
  out *= tau;
}

namespace {

// E^T x = P(tau Lhat)^T tau L^T x, Horner in the transposed order.
void evolution_increment_transpose(const SchemeSpec& scheme, const BlockOperator& L, const BlockOperator& L_tilde,
                                   double tau, const Eigen::MatrixXd& x, Eigen::MatrixXd& out) {
  const BlockOperator& Lhat = scheme.variant == Variant::sdA ? L_tilde : L;
  const int s = scheme.stages;
  Eigen::MatrixXd y, tmp;
  L.apply_transpose(x, y);
  y *= tau;
  Eigen::MatrixXd v = scheme.alpha[s] * y;
  for (int i = s - 1; i >= 1; --i) {
    Lhat.apply_transpose(v, tmp);
    v = scheme.alpha[i] * y + tau * tmp;
  }
  out = std::move(v);
}

}  // namespace

LinearMap evolution_map(const SchemeSpec& scheme, const BlockOperator& L, const BlockOperator& L_tilde, double tau) {
  LinearMap map;
  map.size = L.size();
  map.apply = [scheme, &L, &L_tilde, tau](const Eigen::MatrixXd& x, Eigen::MatrixXd& y) {
    evolution_increment(scheme, L, L_tilde, tau, x, y);
    y += x;
  };
  map.apply_transpose = [scheme, &L, &L_tilde, tau](const Eigen::MatrixXd& x, Eigen::MatrixXd& y) {
    evolution_increment_transpose(scheme, L, L_tilde, tau, x, y);
    y += x;
  };
  return map;
}

namespace {

// ||K^m||^2 - 1 is the largest eigenvalue of M = E_m + E_m^T + E_m^T E_m with
// K^m = I + E_m. Forming M from E avoids the cancellation in 1 + tiny - 1.
// Constants are invariant under K and K^T, so M c = 0; that direction is
// shifted to -1 so round-off on it cannot lift delta off the floor.
double delta_dense(const SchemeSpec& scheme, const BlockOperator& L, const BlockOperator& Lt, double tau, int m,
                   const Eigen::VectorXd& c_hat) {
  const Eigen::Index n = static_cast<Eigen::Index>(L.size());
  Eigen::MatrixXd e1;
  evolution_increment(scheme, L, Lt, tau, Eigen::MatrixXd::Identity(n, n), e1);
  Eigen::MatrixXd em = e1;
  for (int p = 1; p < m; ++p) {
    Eigen::MatrixXd next = e1 * em;
    next += em;
    next += e1;
    em.swap(next);
  }
  Eigen::MatrixXd M = em.transpose() * em;
  M += em;
  M += em.transpose();
  M = 0.5 * (M + M.transpose()).eval();
  const Eigen::VectorXd mc = M * c_hat;
  const double cmc = c_hat.dot(mc);
  // P M P with P = I - c c^T, then subtract c c^T.
  M -= mc * c_hat.transpose();
  M -= c_hat * mc.transpose();
  M += (cmc - 1.0) * c_hat * c_hat.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M, Eigen::EigenvaluesOnly);
  SDRKDG_REQUIRE(eig.info() == Eigen::Success, ErrorKind::no_convergence, "symmetric eigensolver failed");
  return eig.eigenvalues()(n - 1);
}

// Power iteration for (K^m)^T K^m on the complement of the constants. The
// returned value is the Rayleigh quotient of M at the converged vector.
double delta_power(const SchemeSpec& scheme, const BlockOperator& L, const BlockOperator& Lt, double tau, int m,
                   const Eigen::VectorXd& c_hat, const DeltaOptions& opt) {
  const Eigen::Index n = static_cast<Eigen::Index>(L.size());
  std::mt19937_64 gen(opt.seed);
  Eigen::MatrixXd x(n, 1);
  for (Eigen::Index i = 0; i < n; ++i) x(i, 0) = static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5;
  auto deflate = [&](Eigen::MatrixXd& v) { v.col(0) -= c_hat.dot(v.col(0)) * c_hat; };
  deflate(x);
  x /= x.norm();
  Eigen::MatrixXd e, d, y, z;
  double previous = 0.0;
  for (int it = 0; it < opt.max_iter; ++it) {
    // e = E_m x via e_j = e_{j-1} + E (x + e_{j-1}).
    e = Eigen::MatrixXd::Zero(n, 1);
    for (int p = 0; p < m; ++p) {
      evolution_increment(scheme, L, Lt, tau, x + e, d);
      e += d;
    }
    const double rq = 2.0 * x.col(0).dot(e.col(0)) + e.squaredNorm();
    y = x + e;
    for (int p = 0; p < m; ++p) {
      evolution_increment_transpose(scheme, L, Lt, tau, y, z);
      y += z;
    }
    deflate(y);
    const double ny = y.norm();
    if (ny == 0.0) return -1.0;
    x = y / ny;
    if (it > 0 && std::abs(rq - previous) <= opt.rel_tol * std::max(1.0, std::abs(rq))) return rq;
    previous = rq;
  }
  throw ConvergenceError("power iteration for delta did not converge", previous, x.col(0));
}

}  // namespace

StabilityPoint delta(const SchemeSpec& scheme, const DGSpace& space, double cfl, int m, const DeltaOptions& options) {
  SDRKDG_REQUIRE(m >= 1, ErrorKind::invalid_argument, "power m must be >= 1");
  SDRKDG_REQUIRE(cfl >= 0.0, ErrorKind::invalid_argument, "cfl must be non-negative");
  SDRKDG_REQUIRE(space.uniform(), ErrorKind::unsupported_mesh, "delta sweeps use uniform meshes");
  const int k = space.degree();
  StabilityPoint pt;
  pt.scheme = scheme.label(k);
  pt.variant = scheme.variant;
  pt.dim = space.dim();
  pt.N = space.dim() == 1 ? space.n_cells() : space.mesh_2d().nx();
  pt.m = m;
  pt.cfl = cfl;
  if (cfl == 0.0) return pt;

  const BlockOperator L = assemble_upwind(space);
  const BlockOperator Lt = scheme.variant == Variant::sdA ? reduce(L, space) : L;
  const double tau = cfl / (static_cast<double>(space.dim()) * static_cast<double>(pt.N));
  Eigen::VectorXd c_hat = space.constant(1.0);
  c_hat /= c_hat.norm();
  const double lambda = space.size() <= options.dense_cap ? delta_dense(scheme, L, Lt, tau, m, c_hat)
                                                          : delta_power(scheme, L, Lt, tau, m, c_hat, options);
  pt.delta = std::max(lambda, kDeltaFloor);
  return pt;
}

std::vector<StabilityPoint> cfl_sweep(const SchemeSpec& scheme, int k, int dim, const std::vector<std::size_t>& N_list,
                                      int m, const std::vector<double>& cfl_grid, const DeltaOptions& options) {
  SDRKDG_REQUIRE(!N_list.empty() && !cfl_grid.empty(), ErrorKind::invalid_argument, "sweep grids must be non-empty");
  SDRKDG_REQUIRE(dim == 1 || dim == 2, ErrorKind::invalid_argument, "dimension must be 1 or 2");
  std::vector<StabilityPoint> out(N_list.size() * cfl_grid.size());
  parallel_for(out.size(), [&](std::size_t job) {
    const std::size_t N = N_list[job / cfl_grid.size()];
    const double cfl = cfl_grid[job % cfl_grid.size()];
    StabilityPoint& pt = out[job];
    pt.scheme = scheme.label(k);
    pt.variant = scheme.variant;
    pt.dim = dim;
    pt.N = N;
    pt.m = m;
    pt.cfl = cfl;
    try {
      const DGSpace space = dim == 1 ? DGSpace(build_mesh_1d(N, 0.0, 0), k) : DGSpace(build_mesh_2d(N, N), k);
      pt = delta(scheme, space, cfl, m, options);
    } catch (const std::exception& ex) {
      pt.failed = true;
      pt.note = ex.what();
    }
  });
  return out;
}

Eigen::MatrixXcd FourierSymbol::at(double theta) const {
  const std::complex<double> phase = std::polar(1.0, -theta);
  return A.cast<std::complex<double>>() + phase * B.cast<std::complex<double>>();
}

FourierSymbol fourier_symbol(int k) {
  SDRKDG_REQUIRE(k >= 0, ErrorKind::unsupported_degree, "degree must be >= 0");
  const int n = k + 1;
  const Quadrature q = gauss_quadrature(k + 2);
  Eigen::MatrixXd vol = Eigen::MatrixXd::Zero(n, n);
  for (int p = 0; p < q.size(); ++p) {
    const ModeValues mv = legendre_modes(k, q.nodes[p]);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) vol(a, b) += q.weights[p] * mv.derivative[a] * mv.value[b];
  }
  const ModeValues right = legendre_modes(k, 1.0);
  const ModeValues left = legendre_modes(k, -1.0);
  FourierSymbol s;
  s.degree = k;
  s.A.resize(n, n);
  s.B.resize(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      s.A(a, b) = 2.0 * (vol(a, b) - right.value[a] * right.value[b]);
      s.B(a, b) = 2.0 * left.value[a] * right.value[b];
    }
  return s;
}

namespace {

double spectral_radius(const Eigen::MatrixXcd& g) {
  if (g.rows() == 1) return std::abs(g(0, 0));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(g, false);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd amplification(Variant variant, const std::vector<double>& alpha, const Eigen::MatrixXcd& S,
                               double c) {
  const int s = static_cast<int>(alpha.size()) - 1;
  const Eigen::Index n = S.rows();
  Eigen::MatrixXcd Shat = S;
  if (variant == Variant::sdA) Shat.row(n - 1).setZero();
  // I + cS sum_{i=1}^s alpha_i (c Shat)^{i-1}, Horner.
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd v = alpha[s] * I;
  for (int i = s - 1; i >= 1; --i) v = alpha[i] * I + c * Shat * v;
  return I + c * S * v;
}

}  // namespace

double max_amplification(Variant variant, const std::vector<double>& alpha, int k, double c, int n_theta) {
  const FourierSymbol sym = fourier_symbol(k);
  double worst = 0.0;
  for (int t = 0; t < n_theta; ++t) {
    const double theta = 2.0 * std::numbers::pi * t / n_theta;
    worst = std::max(worst, spectral_radius(amplification(variant, alpha, sym.at(theta), c)));
  }
  return worst;
}

CflResult fourier_cfl(Variant variant, int r, int k, const FourierOptions& opt) {
  SDRKDG_REQUIRE(k >= 1, ErrorKind::unsupported_degree, "Fourier CFL needs k >= 1");
  SDRKDG_REQUIRE(r >= 2, ErrorKind::invalid_argument, "Fourier CFL needs r >= 2");
  const SchemeSpec scheme = make_scheme(r, variant);
  const FourierSymbol sym = fourier_symbol(k);
  std::vector<Eigen::MatrixXcd> symbols(opt.n_theta);
  for (int t = 0; t < opt.n_theta; ++t) symbols[t] = sym.at(2.0 * std::numbers::pi * t / opt.n_theta);
  auto stable = [&](double c) {
    for (const auto& S : symbols)
      if (spectral_radius(amplification(variant, scheme.alpha, S, c)) > 1.0 + opt.radius_tol) return false;
    return true;
  };
  CflResult res;
  double lo = 0.0, hi = 2.0;
  if (stable(hi)) {
    res.cfl = hi;
    return res;
  }
  if (!stable(opt.bisection_tol)) {
    res.weakly_stable = true;
    return res;
  }
  lo = opt.bisection_tol;
  while (hi - lo > opt.bisection_tol) {
    const double mid = 0.5 * (lo + hi);
    (stable(mid) ? lo : hi) = mid;
  }
  res.cfl = lo;
  return res;
}

}  // namespace sdrkdg
