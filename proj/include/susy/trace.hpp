#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace susy::trace {

/// Outcome of re-checking a trace: 0 = all invariants hold, 1 = a violation
/// (listed in `failures`), 2 = the trace is malformed, truncated, or records
/// an invalid scenario.
struct CheckReport {
  int exit_code = 0;
  std::vector<std::string> failures;
  std::optional<std::string> malformed;
};

/// Re-evaluates the global invariants over a JSON-lines trace without
/// re-running anything: fork choice, per-token conservation, the backing
/// invariant, exactly-once execution per branch, the status state machine
/// and finality depth, forged pulses, replay checks and assertion results.
///
/// The block tree and fork choice are rebuilt from the records themselves.
/// Backing and forgery checks apply only when the roster's Byzantine members
/// are fewer than the threshold.
CheckReport check_lines(const std::vector<std::string>& lines);
/// Same, over records that are already parsed.
CheckReport check_records(const std::vector<nlohmann::json>& records);
CheckReport check_stream(std::istream& in);

}  // namespace susy::trace
