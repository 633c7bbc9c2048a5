// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "sdrkdg/config.hpp"
#include "sdrkdg/csv.hpp"

namespace sdrkdg {

const char* version();

struct RunOutcome {
  int exit_code = 0;
  std::size_t flagged = 0;  // blow-up rows (exit 0) or failed points (exit 1)
  CsvTable table;
};

/// Builds the table for a resolved config without writing it.
RunOutcome compute(const RunConfig& config);

/// compute() plus emission: to `out` when config.output is "-", otherwise to
/// the named file. Returns exit code 2 when the file cannot be written.
RunOutcome run(const RunConfig& config, std::ostream& out, std::ostream& diag);

struct PropCheck {
  std::string name;
  double value = 0.0;  // relative residual
  double tolerance = 0.0;
  bool pass = false;
};

/// Quick operator identities on small random inputs.
std::vector<PropCheck> property_checks(std::uint64_t seed);

}  // namespace sdrkdg
