// SPDX-License-Identifier: Apache-2.0
#include "sdrkdg/rk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sdrkdg/error.hpp"

namespace sdrkdg {

const char* to_string(Variant v) { return v == Variant::sdA ? "sdA" : "standard"; }

Variant parse_variant(const std::string& text) {
  if (text == "sdA" || text == "sda") return Variant::sdA;
  if (text == "standard" || text == "std") return Variant::standard;
  throw Error(ErrorKind::invalid_argument, "unknown variant '" + text + "'");
}

std::optional<ButcherTableau> builtin_tableau(int order) {
  ButcherTableau t;
  switch (order) {
    case 2:
      t.a = Eigen::MatrixXd::Zero(2, 2);
      t.a(1, 0) = 0.5;
      t.b = Eigen::Vector2d(0.0, 1.0);
      return t;
    case 3:
      t.a = Eigen::MatrixXd::Zero(3, 3);
      t.a(1, 0) = 1.0;
      t.a(2, 0) = 0.25;
      t.a(2, 1) = 0.25;
      t.b = Eigen::Vector3d(1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0);
      return t;
    case 4:
      t.a = Eigen::MatrixXd::Zero(4, 4);
      t.a(1, 0) = 0.5;
      t.a(2, 1) = 0.5;
      t.a(3, 2) = 1.0;
      t.b = Eigen::Vector4d(1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0);
      return t;
    default:
      return std::nullopt;
  }
}

std::string SchemeSpec::label(int k) const { return "RK" + std::to_string(order) + "DG" + std::to_string(k); }

std::string SchemeSpec::full_label(int k) const {
  return (variant == Variant::sdA ? "sdA-" : "") + label(k);
}

SchemeSpec make_scheme(int order, Variant variant) {
  SDRKDG_REQUIRE(order >= 1, ErrorKind::invalid_argument, "scheme order must be >= 1");
  SchemeSpec s;
  s.order = order;
  s.stages = order;
  s.alpha.resize(order + 1);
  double f = 1.0;
  for (int i = 0; i <= order; ++i) {
    if (i > 0) f *= i;
    s.alpha[i] = 1.0 / f;
  }
  s.variant = variant;
  s.tableau = builtin_tableau(order);
  s.reduced_stage.assign(order, variant == Variant::sdA);
  return s;
}

SchemeSpec make_compact_scheme(std::vector<double> alpha, Variant variant) {
  SDRKDG_REQUIRE(alpha.size() >= 2 && alpha[0] == 1.0 && alpha[1] == 1.0, ErrorKind::invalid_argument,
                 "compact coefficients need alpha_0 = alpha_1 = 1");
  SchemeSpec s;
  s.stages = static_cast<int>(alpha.size()) - 1;
  // Order: largest r with alpha_i = 1/i! for all i <= r.
  double f = 1.0;
  s.order = 0;
  for (int i = 0; i <= s.stages; ++i) {
    if (i > 0) f *= i;
    if (std::abs(alpha[i] - 1.0 / f) > 1e-15) break;
    s.order = i;
  }
  s.alpha = std::move(alpha);
  s.variant = variant;
  s.reduced_stage.assign(s.stages, variant == Variant::sdA);
  return s;
}

namespace {

Eigen::VectorXd step_compact(const SchemeSpec& scheme, const BlockOperator& L, const BlockOperator& Lhat,
                             const Eigen::VectorXd& u, double tau) {
  const int s = scheme.stages;
  // v = sum_{i=1}^s alpha_i (tau Lhat)^{i-1} u, evaluated by Horner.
  Eigen::VectorXd v = scheme.alpha[s] * u;
  for (int i = s - 1; i >= 1; --i) v = scheme.alpha[i] * u + tau * Lhat.apply(v);
  return u + tau * L.apply(v);
}

Eigen::VectorXd step_butcher(const SchemeSpec& scheme, const BlockOperator& L, const BlockOperator& L_tilde,
                             const Eigen::VectorXd& u, double tau) {
  const ButcherTableau& t = *scheme.tableau;
  const int s = t.stages();
  std::vector<Eigen::VectorXd> inner(s), full(s);
  Eigen::VectorXd out = u;
  for (int i = 0; i < s; ++i) {
    Eigen::VectorXd ui = u;
    for (int j = 0; j < i; ++j)
      if (t.a(i, j) != 0.0) ui += tau * t.a(i, j) * inner[j];
    full[i] = L.apply(ui);
    inner[i] = scheme.reduced_stage[i] ? L_tilde.apply(ui) : full[i];
    if (t.b(i) != 0.0) out += tau * t.b(i) * full[i];
  }
  return out;
}

bool uniform_plan(const SchemeSpec& scheme) {
  const bool want = scheme.variant == Variant::sdA;
  return std::all_of(scheme.reduced_stage.begin(), scheme.reduced_stage.end(), [&](bool b) { return b == want; });
}

void check_blowup(const Eigen::VectorXd& u, std::size_t step_index) {
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double x = u[i];
    if (!std::isfinite(x) || std::abs(x) > 1e12)
      throw BlowUpError("solution blew up at step " + std::to_string(step_index), step_index);
  }
}

}  // namespace

Eigen::VectorXd step(const SchemeSpec& scheme, const BlockOperator& L, const BlockOperator& L_tilde,
                     const Eigen::VectorXd& u, double tau, StepForm form, StepInfo* info) {
  SDRKDG_REQUIRE(tau >= 0.0, ErrorKind::invalid_argument, "time step must be non-negative");
  SDRKDG_REQUIRE(static_cast<int>(scheme.alpha.size()) == scheme.stages + 1, ErrorKind::invalid_argument,
                 "scheme needs alpha_0..alpha_s");
  SDRKDG_REQUIRE(static_cast<std::size_t>(u.size()) == L.size(), ErrorKind::incompatible,
                 "state size does not match the operator");
  const bool reduced_used = std::any_of(scheme.reduced_stage.begin(), scheme.reduced_stage.end(), [](bool b) { return b; });
  SDRKDG_REQUIRE(!reduced_used || L_tilde.size() == L.size(), ErrorKind::unsupported_degree,
                 "reduced stages need a reduced operator (k >= 1)");
  if (info) info->fell_back_to_compact = false;
  if (form == StepForm::butcher) {
    if (scheme.tableau) return step_butcher(scheme, L, L_tilde, u, tau);
    if (info) info->fell_back_to_compact = true;
  }
  SDRKDG_REQUIRE(uniform_plan(scheme), ErrorKind::invalid_argument,
                 "mixed stage plans are only available in Butcher form");
  return step_compact(scheme, L, scheme.variant == Variant::sdA ? L_tilde : L, u, tau);
}

DGCoeffs step(const SchemeSpec& scheme, const BlockOperator& L, const BlockOperator& L_tilde, const DGCoeffs& u,
              double tau, StepForm form, StepInfo* info) {
  if (scheme.variant == Variant::sdA)
    SDRKDG_REQUIRE(u.space->degree() >= 1, ErrorKind::unsupported_degree, "sdA schemes need k >= 1");
  return DGCoeffs(u.space, step(scheme, L, L_tilde, u.values, tau, form, info));
}

EvolveResult evolve_steps(const SchemeSpec& scheme, const BlockOperator& L, const BlockOperator& L_tilde,
                          const Eigen::VectorXd& u0, const std::vector<double>& taus, StepForm form) {
  EvolveResult r;
  r.u = u0;
  StepInfo info;
  for (double tau : taus) {
    r.u = step(scheme, L, L_tilde, r.u, tau, form, &info);
    r.fell_back_to_compact = r.fell_back_to_compact || info.fell_back_to_compact;
    ++r.steps;
    r.last_tau = tau;
    check_blowup(r.u, r.steps);
  }
  return r;
}

EvolveResult evolve(const SchemeSpec& scheme, const BlockOperator& L, const BlockOperator& L_tilde,
                    const Eigen::VectorXd& u0, double T, double tau, StepForm form) {
  SDRKDG_REQUIRE(T >= 0.0, ErrorKind::invalid_argument, "final time must be non-negative");
  SDRKDG_REQUIRE(tau > 0.0, ErrorKind::invalid_argument, "time step must be positive");
  EvolveResult r;
  r.u = u0;
  if (T == 0.0) return r;
  const double ratio = T / tau;
  const double whole = std::round(ratio);
  std::size_t n_full;
  double last = 0.0;
  if (whole >= 1.0 && std::abs(ratio - whole) <= 4.0 * std::numeric_limits<double>::epsilon() * whole) {
    n_full = static_cast<std::size_t>(whole);
  } else {
    n_full = static_cast<std::size_t>(std::floor(ratio));
    last = T - static_cast<double>(n_full) * tau;
  }
  StepInfo info;
  for (std::size_t n = 0; n < n_full; ++n) {
    r.u = step(scheme, L, L_tilde, r.u, tau, form, &info);
    r.fell_back_to_compact = r.fell_back_to_compact || info.fell_back_to_compact;
    ++r.steps;
    r.last_tau = tau;
    check_blowup(r.u, r.steps);
  }
  if (last > 0.0) {
    r.u = step(scheme, L, L_tilde, r.u, last, form, &info);
    ++r.steps;
    r.last_tau = last;
    r.shortened_last_step = true;
    check_blowup(r.u, r.steps);
  }
  return r;
}

EnergyCoefficients energy_coefficients(const std::vector<double>& alpha) {
  SDRKDG_REQUIRE(!alpha.empty() && alpha[0] == 1.0, ErrorKind::invalid_argument, "alpha_0 must be 1");
  const int s = static_cast<int>(alpha.size()) - 1;
  EnergyCoefficients e;
  e.beta.assign(s + 1, 0.0);
  for (int i = 0; i <= s; ++i) {
    double acc = 0.0;
    for (int l = std::max(0, 2 * i - s); l <= std::min(2 * i, s); ++l)
      acc += alpha[l] * alpha[2 * i - l] * ((i - l) % 2 == 0 ? 1.0 : -1.0);
    e.beta[i] = acc;
  }
  e.gamma = Eigen::MatrixXd::Zero(std::max(s, 0), std::max(s, 0));
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      double acc = 0.0;
      const int lo = std::max(0, i + j + 1 - s), hi = std::min(i, j);
      for (int l = lo; l <= hi; ++l) {
        const int p = std::min(i, j) + 1 - l;
        acc += (p % 2 == 0 ? 1.0 : -1.0) * alpha[l] * alpha[i + j + 1 - l];
      }
      e.gamma(i, j) = acc;
    }
  return e;
}

}  // namespace sdrkdg
