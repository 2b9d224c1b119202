#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "susy/gateway.hpp"

namespace susy::scenario {

/// The scenario is malformed or breaks a validation rule (exit 2).
struct InvalidScenario : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProduceStep {
  ChainId chain;
  std::optional<std::string> branch;  // named fork branch; canonical branch otherwise
  std::uint32_t count = 1;
};
struct LockStep {
  std::string label;
  std::string sender;
  std::string token;
  Amount amount = 0;
  std::string receiver;
};
struct BurnStep {
  std::string label;
  std::string holder;
  std::string token;  // the sw-token symbol
  Amount amount = 0;
  std::string receiver;
};
struct TransferStep {
  ChainId chain;
  std::string from;
  std::string to;
  std::string token;
  Amount amount = 0;
};
struct RelayStep {
  std::optional<ChainId> from;  // both directions when unset
};
/// Relay both ways, then one block on each chain; repeated `count` times.
struct CycleStep {
  std::uint32_t count = 1;
};
struct ForkStep {
  ChainId chain;
  Height height = 0;
  std::string branch;
};
struct TickStep {};
/// Re-broadcasts the last honest pulse/send-data pair sent to `target`.
struct ReplayRelayStep {
  ChainId target;
};
/// An attacker calls the executing port directly with a fabricated entry.
struct DirectCallStep {
  ChainId chain;
  std::string receiver;
  std::string token;  // original token symbol
  Amount amount = 0;
};
struct AssertStep {
  std::string check;
  nlohmann::json args;
};

using Step = std::variant<ProduceStep, LockStep, BurnStep, TransferStep, RelayStep, CycleStep, ForkStep, TickStep,
                          ReplayRelayStep, DirectCallStep, AssertStep>;

struct Scenario {
  std::string name;
  std::string description;
  std::uint64_t seed = 0;
  ChainParams origin;
  ChainParams destination;
  std::vector<Behavior> behaviors = std::vector<Behavior>(5, Behavior::Honest);
  std::optional<std::size_t> threshold;
  std::string scheme = "mac";
  std::vector<GenesisBalance> balances;
  std::vector<Step> timeline;

  GatewayConfig gateway_config() const;
};

/// Assertion names understood by the runner.
const std::vector<std::string>& assert_checks();

/// Throws InvalidScenario.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario parse_scenario_text(std::string_view text);
nlohmann::json to_json(const Scenario& s);

/// Static checks: references resolve, forks stay within D_fin of the tip,
/// parameters are consistent. Throws InvalidScenario.
void validate(const Scenario& s);

/// A seeded random workload of roughly `swaps` forward and reverse swaps
/// with occasional shallow forks, ending with a drain and quiescence checks.
Scenario generate_random(std::uint64_t seed, std::size_t swaps, std::vector<Behavior> behaviors = {});

}  // namespace susy::scenario
