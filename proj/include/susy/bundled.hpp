#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace susy::scenario {

struct BundledScenario {
  std::string_view name;
  std::string_view text;  // the JSON document
};

/// Scenarios compiled into the binary from scenarios/*.json, by name.
std::span<const BundledScenario> bundled();
std::optional<std::string_view> find_bundled(std::string_view name);

}  // namespace susy::scenario
