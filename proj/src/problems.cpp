// SPDX-License-Identifier: Apache-2.0
#include "sdrkdg/problems.hpp"

#include <cmath>
#include <numbers>

#include "sdrkdg/error.hpp"

namespace sdrkdg {

const char* to_string(InitialCondition ic) {
  switch (ic) {
    case InitialCondition::sin_1d: return "sin_1d";
    case InitialCondition::sin_2d: return "sin_2d";
    case InitialCondition::sinpow_1d: return "sinpow_1d";
    case InitialCondition::sinpow_2d: return "sinpow_2d";
  }
  return "?";
}

InitialCondition parse_initial_condition(const std::string& text) {
  if (text == "sin_1d") return InitialCondition::sin_1d;
  if (text == "sin_2d") return InitialCondition::sin_2d;
  if (text == "sinpow_1d") return InitialCondition::sinpow_1d;
  if (text == "sinpow_2d") return InitialCondition::sinpow_2d;
  throw Error(ErrorKind::invalid_argument, "unknown initial condition '" + text + "'");
}

ProblemSpec make_problem(InitialCondition ic, int flat, double T, double beta_x, double beta_y) {
  ProblemSpec p;
  p.ic = ic;
  p.dim = (ic == InitialCondition::sin_2d || ic == InitialCondition::sinpow_2d) ? 2 : 1;
  p.flat = flat;
  p.T = T;
  p.beta_x = beta_x;
  p.beta_y = p.dim == 2 ? beta_y : 0.0;
  if (!p.smooth()) SDRKDG_REQUIRE(flat >= 2, ErrorKind::invalid_argument, "sinpow data needs flat >= 2");
  SDRKDG_REQUIRE(T >= 0.0, ErrorKind::invalid_argument, "final time must be non-negative");
  return p;
}

namespace {

double phase(const ProblemSpec& p, double x, double y) {
  return 2.0 * std::numbers::pi * (p.dim == 2 ? x + y : x);
}

}  // namespace

double ProblemSpec::initial(double x, double y) const {
  const double s = std::sin(phase(*this, x, y));
  if (smooth()) return s;
  return std::pow(std::cbrt(s), 3 * flat - 1);
}

double ProblemSpec::exact(double x, double y, double t) const {
  return initial(x - beta_x * t, dim == 2 ? y - beta_y * t : 0.0);
}

double ProblemSpec::L_power(int i, double x, double y) const {
  SDRKDG_REQUIRE(smooth(), ErrorKind::invalid_argument, "analytic L^i is only available for sin data");
  SDRKDG_REQUIRE(i >= 0, ErrorKind::invalid_argument, "power must be non-negative");
  const double speed = dim == 2 ? beta_x + beta_y : beta_x;
  const double factor = std::pow(-2.0 * std::numbers::pi * speed, i);
  return factor * std::sin(phase(*this, x, y) + 0.5 * std::numbers::pi * i);
}

}  // namespace sdrkdg
