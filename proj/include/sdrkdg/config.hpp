// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sdrkdg/error.hpp"
#include "sdrkdg/rk.hpp"

namespace sdrkdg {

enum class Command { accuracy, regularity, stability, cfl, prop_tests };

const char* to_string(Command c);
Command parse_command(const std::string& text);

enum class ConfigIssue { unknown_key, bad_value, conflict, missing_command };

class ConfigError : public Error {
 public:
  ConfigError(ConfigIssue issue, std::string key, const std::string& what)
      : Error(ErrorKind::config, what), issue_(issue), key_(std::move(key)) {}
  ConfigIssue issue() const noexcept { return issue_; }
  const std::string& key() const noexcept { return key_; }

 private:
  ConfigIssue issue_;
  std::string key_;
};

enum class VariantSelect { standard, sdA, both };
enum class TauRule { paper, fixed, cfl };

/// Fully resolved run description. Defaults are listed in the README; list
/// fields left empty are filled per command by resolve().
struct RunConfig {
  Command command = Command::accuracy;
  std::vector<int> r;                 // default: 2 (accuracy, regularity, stability), 2..8 (cfl)
  std::optional<int> k;               // default: r - 1
  VariantSelect variant = VariantSelect::both;
  int dim = 1;
  std::vector<std::size_t> N;         // default: 20..320 (accuracy), 80..1280 (regularity), 32 (stability)
  double perturb = 0.0;
  std::uint64_t seed = 0;
  double T = 1.0;
  TauRule tau_rule = TauRule::paper;  // accuracy and regularity
  double tau = 0.0;
  std::vector<double> cfl;            // stability grid, or the fixed cfl for tau_rule=cfl
  int m = 1;
  std::string flat = "r";             // regularity: "r", "r+1" or an integer
  std::string output = "-";
  int quad_points = 0;                // 0: per-problem default
  StepForm form = StepForm::compact;
  bool raw = false;                   // add full-precision *_raw columns

  /// Canonical one-line echo "key=value; key=value; ...".
  std::string echo() const;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Splits "key = value" text. Lines may hold several pairs separated by
/// commas ("command=cfl, r=2"); a value runs until the next "key=" so list
/// values such as "N=20,40,80" survive. '#' starts a comment.
KeyValues parse_key_values(const std::string& text);

/// Strict parse: file pairs first, then overrides (which win). A key given
/// twice with different values inside one source is a conflict, as are
/// incompatible combinations (tau with tau_rule=paper, ...).
RunConfig parse_config(const std::string& text, const KeyValues& overrides = {});

/// Names of all accepted keys.
const std::vector<std::string>& config_keys();

/// Per-command defaults for empty lists.
RunConfig resolve(RunConfig cfg);

}  // namespace sdrkdg
