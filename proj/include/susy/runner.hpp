#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "susy/scenario.hpp"

namespace susy::scenario {

struct RunResult {
  int exit_code = 0;                // 0 ok, 1 invariant/assertion failure, 2 invalid scenario
  std::vector<std::string> trace;   // one JSON object per line
  std::vector<nlohmann::json> records;  // the same records, unserialized
  std::vector<std::string> failures;
};

/// Validates and executes a scenario, then re-checks its own trace; the exit
/// code is the checker's verdict, so `check` on the trace always agrees.
/// With serialize=false only `records` is filled (bulk sweeps skip the dump).
RunResult run(const Scenario& s, std::optional<std::uint64_t> seed_override = std::nullopt, bool serialize = true);

}  // namespace susy::scenario
