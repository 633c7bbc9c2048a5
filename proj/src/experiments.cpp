// SPDX-License-Identifier: Apache-2.0
#include "sdrkdg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sdrkdg/dg_core.hpp"
#include "sdrkdg/error.hpp"
#include "sdrkdg/parallel.hpp"

namespace sdrkdg {

double TimestepSpec::step(int order, int dim, std::size_t N) const {
  const double dN = static_cast<double>(dim) * static_cast<double>(N);
  switch (rule) {
    case TimestepRule::paper_smooth:
      if (order <= 4) return 0.1 / dN;
      return 0.1 / (static_cast<double>(dim) * std::pow(static_cast<double>(N), 1.2));
    case TimestepRule::fixed_tau:
      SDRKDG_REQUIRE(tau > 0.0, ErrorKind::invalid_argument, "tau must be positive");
      return tau;
    case TimestepRule::cfl:
      SDRKDG_REQUIRE(cfl > 0.0, ErrorKind::invalid_argument, "cfl must be positive");
      return cfl / dN;
  }
  return 0.0;
}

int default_error_points(const ProblemSpec& problem, int k) {
  if (!problem.smooth()) return 16;
  return std::max(10, k + 4);
}

double l2_error(const DGSpace& space, const Eigen::VectorXd& u, const ProblemSpec& problem, double t, int points) {
  if (points <= 0) points = default_error_points(problem, space.degree());
  return space.l2_distance(u, [&](double x, double y) { return problem.exact(x, y, t); }, points);
}

AccuracyRow run_accuracy_point(const AccuracyJob& job, std::size_t N) {
  const ProblemSpec& pb = job.problem;
  AccuracyRow row;
  row.scheme = job.scheme.label(job.k);
  row.variant = job.scheme.variant;
  row.dim = pb.dim;
  row.N = N;
  try {
    auto space = pb.dim == 1
                     ? std::make_shared<const DGSpace>(build_mesh_1d(N, job.perturb, job.seed, pb.beta_x), job.k)
                     : std::make_shared<const DGSpace>(build_mesh_2d(N, N, pb.beta_x, pb.beta_y), job.k);
    row.dofs = space->size();
    const int points = job.quad_points > 0 ? job.quad_points : default_error_points(pb, job.k);
    const Eigen::VectorXd u0 = space->project([&](double x, double y) { return pb.initial(x, y); }, points);
    const BlockOperator L = assemble_upwind(*space);
    const BlockOperator Lt = job.scheme.variant == Variant::sdA ? reduce(L, *space) : L;
    const double tau = job.timestep.step(job.scheme.order, pb.dim, N);
    const EvolveResult res = evolve(job.scheme, L, Lt, u0, pb.T, tau, job.form);
    row.steps = res.steps;
    row.shortened_last_step = res.shortened_last_step;
    row.l2_error = l2_error(*space, res.u, pb, pb.T, points);
  } catch (const BlowUpError& ex) {
    row.failed = true;
    row.l2_error = std::numeric_limits<double>::quiet_NaN();
    row.note = ex.what();
  }
  return row;
}

void fill_eoc(std::vector<AccuracyRow>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].eoc.reset();
    if (i == 0) continue;
    const AccuracyRow& a = rows[i - 1];
    const AccuracyRow& b = rows[i];
    if (a.failed || b.failed || a.l2_error <= 0.0 || b.l2_error <= 0.0 || a.N == b.N) continue;
    rows[i].eoc = std::log(a.l2_error / b.l2_error) / std::log(static_cast<double>(b.N) / static_cast<double>(a.N));
  }
}

std::vector<AccuracyRow> accuracy_table(const AccuracyJob& job) {
  SDRKDG_REQUIRE(!job.N_list.empty(), ErrorKind::invalid_argument, "N list must be non-empty");
  SDRKDG_REQUIRE(job.perturb == 0.0 || job.problem.dim == 1, ErrorKind::unsupported_mesh,
                 "perturbed meshes are 1D only");
  std::vector<AccuracyRow> rows(job.N_list.size());
  parallel_for(rows.size(), [&](std::size_t i) { rows[i] = run_accuracy_point(job, job.N_list[i]); });
  fill_eoc(rows);
  return rows;
}

std::vector<AccuracyRow> regularity_study(const SchemeSpec& scheme, FlatMode mode, int dim,
                                          const std::vector<std::size_t>& N_list, double T,
                                          const TimestepSpec& timestep, int quad_points) {
  AccuracyJob job;
  job.scheme = scheme;
  job.k = scheme.order - 1;
  SDRKDG_REQUIRE(job.k >= 1, ErrorKind::unsupported_degree, "regularity studies need r = k+1 >= 2");
  const int flat = mode == FlatMode::r ? scheme.order : scheme.order + 1;
  job.problem = make_problem(dim == 1 ? InitialCondition::sinpow_1d : InitialCondition::sinpow_2d, flat, T);
  job.N_list = N_list;
  job.timestep = timestep;
  job.quad_points = quad_points;
  return accuracy_table(job);
}

}  // namespace sdrkdg
