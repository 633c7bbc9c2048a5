// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sdrkdg/problems.hpp"
#include "sdrkdg/rk.hpp"
#include "sdrkdg/space.hpp"

namespace sdrkdg {

struct AccuracyRow {
  std::string scheme;  // "RK3DG2"
  Variant variant = Variant::standard;
  int dim = 1;
  std::size_t N = 0;
  std::size_t dofs = 0;
  double l2_error = 0.0;
  std::optional<double> eoc;
  std::size_t steps = 0;
  bool shortened_last_step = false;
  bool failed = false;
  std::string note;
};

enum class TimestepRule { paper_smooth, fixed_tau, cfl };

/// paper_smooth: tau = 0.1/(d N) for r <= 4 and 0.1/(d N^{6/5}) for r >= 5.
/// fixed_tau: tau as given. cfl: tau = cfl/(d N).
struct TimestepSpec {
  TimestepRule rule = TimestepRule::paper_smooth;
  double tau = 0.0;
  double cfl = 0.0;
  double step(int order, int dim, std::size_t N) const;
};

/// Default number of Gauss points per direction for error measurement.
int default_error_points(const ProblemSpec& problem, int k);

/// sqrt(sum_K int_K (u_h - u(., t))^2); points = 0 picks the default.
double l2_error(const DGSpace& space, const Eigen::VectorXd& u, const ProblemSpec& problem, double t,
                int points = 0);

struct AccuracyJob {
  SchemeSpec scheme;
  int k = 1;
  ProblemSpec problem;
  std::vector<std::size_t> N_list;
  double perturb = 0.0;  // 1D only, fraction of the mesh size
  std::uint64_t seed = 0;
  TimestepSpec timestep;
  int quad_points = 0;
  StepForm form = StepForm::compact;
};

/// Runs one evolution per N (in parallel) from the L2 projection of u0 and
/// returns rows ordered by N with EOC against the previous row.
std::vector<AccuracyRow> accuracy_table(const AccuracyJob& job);

/// Single evolution; the row carries no EOC.
AccuracyRow run_accuracy_point(const AccuracyJob& job, std::size_t N);

enum class FlatMode { r, r_plus_1 };

/// sinpow data with flat = r or r+1 for a scheme with r = k+1.
std::vector<AccuracyRow> regularity_study(const SchemeSpec& scheme, FlatMode mode, int dim,
                                          const std::vector<std::size_t>& N_list, double T,
                                          const TimestepSpec& timestep = {}, int quad_points = 0);

/// log(e_prev/e_cur)/log(N_cur/N_prev), filled into rows in order.
void fill_eoc(std::vector<AccuracyRow>& rows);

}  // namespace sdrkdg
