// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sdrkdg/block_operator.hpp"
#include "sdrkdg/space.hpp"

namespace sdrkdg {

enum class Variant { standard, sdA };
enum class StepForm { butcher, compact };

const char* to_string(Variant v);
Variant parse_variant(const std::string& text);

/// Explicit tableau with a(i,j) = 0 for j >= i.
struct ButcherTableau {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  int stages() const { return static_cast<int>(b.size()); }
};

/// Built-in tableaus: explicit midpoint (r=2), SSP3 in Butcher form (r=3),
/// classical RK4 (r=4). Returns nullopt for other orders.
std::optional<ButcherTableau> builtin_tableau(int order);

struct SchemeSpec {
  int order = 0;
  int stages = 0;
  std::vector<double> alpha;  // alpha_0 .. alpha_s
  Variant variant = Variant::standard;
  std::optional<ButcherTableau> tableau;
  /// Per stage j: whether L tilde (true) or L (false) acts on u^(j) inside the
  /// inner-stage sums. The final combination always uses L.
  std::vector<bool> reduced_stage;

  /// "RK3DG2" style label for degree k (without the variant prefix).
  std::string label(int k) const;
  /// Label with "sdA-" prefix for the reduced variant.
  std::string full_label(int k) const;
};

/// Canonical r-stage order-r scheme: alpha_i = 1/i!, built-in tableau when one
/// exists, and the stage plan implied by the variant.
SchemeSpec make_scheme(int order, Variant variant);

/// Compact form with arbitrary coefficients alpha_0..alpha_s (alpha_0 = alpha_1 = 1).
SchemeSpec make_compact_scheme(std::vector<double> alpha, Variant variant);

struct StepInfo {
  bool fell_back_to_compact = false;
};

/// One time step u -> K u. `L_tilde` is only consulted for reduced stages.
Eigen::VectorXd step(const SchemeSpec& scheme, const BlockOperator& L, const BlockOperator& L_tilde,
                     const Eigen::VectorXd& u, double tau, StepForm form = StepForm::compact,
                     StepInfo* info = nullptr);
DGCoeffs step(const SchemeSpec& scheme, const BlockOperator& L, const BlockOperator& L_tilde, const DGCoeffs& u,
              double tau, StepForm form = StepForm::compact, StepInfo* info = nullptr);

struct EvolveResult {
  Eigen::VectorXd u;
  std::size_t steps = 0;
  bool shortened_last_step = false;
  double last_tau = 0.0;
  bool fell_back_to_compact = false;
};

/// Integrates from 0 to T with step tau. If T/tau is not an integer (to one
/// ulp), the final step is shortened to land on T and the result is flagged.
/// Throws BlowUpError when a coefficient becomes non-finite or exceeds 1e12.
EvolveResult evolve(const SchemeSpec& scheme, const BlockOperator& L, const BlockOperator& L_tilde,
                    const Eigen::VectorXd& u0, double T, double tau, StepForm form = StepForm::compact);

/// Applies an explicit sequence of step sizes.
EvolveResult evolve_steps(const SchemeSpec& scheme, const BlockOperator& L, const BlockOperator& L_tilde,
                          const Eigen::VectorXd& u0, const std::vector<double>& taus,
                          StepForm form = StepForm::compact);

/// Coefficients of the RK energy identity
///   ||R w||^2 = sum_i beta_i tau^{2i} ||L^i w||^2
///             + sum_{i,j} gamma_ij tau^{i+j+1} <<L^i w, L^j w>>.
struct EnergyCoefficients {
  std::vector<double> beta;  // 0..s
  Eigen::MatrixXd gamma;     // s x s
};

EnergyCoefficients energy_coefficients(const std::vector<double>& alpha);

}  // namespace sdrkdg
