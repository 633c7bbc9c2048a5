// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace sdrkdg {

enum class InitialCondition { sin_1d, sin_2d, sinpow_1d, sinpow_2d };

const char* to_string(InitialCondition ic);
InitialCondition parse_initial_condition(const std::string& text);

/// Linear advection u_t + beta . grad u = 0 on the periodic unit domain.
///
/// sin data: sin(2 pi x) or sin(2 pi (x + y)).
/// sinpow data: s^(flat - 1/3) with s the sine above, evaluated as
/// cbrt(s)^(3 flat - 1) so negative values of s stay real. The result is in
/// C^(flat-1) but not C^flat.
struct ProblemSpec {
  int dim = 1;
  InitialCondition ic = InitialCondition::sin_1d;
  int flat = 0;
  double T = 1.0;
  double beta_x = 1.0;
  double beta_y = 1.0;

  bool smooth() const { return ic == InitialCondition::sin_1d || ic == InitialCondition::sin_2d; }
  double initial(double x, double y = 0.0) const;
  /// Periodic translate u0(x - beta_x t, y - beta_y t).
  double exact(double x, double y, double t) const;
  /// (L^i u0)(x, y) with L = -beta . grad; analytic, sin data only.
  double L_power(int i, double x, double y = 0.0) const;
};

/// Validates the combination (dimension, flat >= 2 for sinpow, speeds).
ProblemSpec make_problem(InitialCondition ic, int flat = 0, double T = 1.0, double beta_x = 1.0,
                         double beta_y = 1.0);

}  // namespace sdrkdg
