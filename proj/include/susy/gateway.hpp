#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "susy/chain_sim.hpp"
#include "susy/oracle_net.hpp"
#include "susy/status_controller.hpp"

namespace susy {

struct ChainParams {
  Height window = 10;             // W
  Height confirmation_depth = 6;  // D_conf
  Height finality_depth = 6;      // D_fin
  Height timeout = 50;            // T_timeout

  bool operator==(const ChainParams&) const = default;
};

struct GenesisBalance {
  ChainId chain;
  std::string account;
  std::string token;
  Amount amount = 0;
};

struct GatewayConfig {
  std::uint64_t seed = 0;
  ChainParams origin;
  ChainParams destination;
  std::vector<Behavior> behaviors = std::vector<Behavior>(5, Behavior::Honest);
  std::optional<std::size_t> threshold;
  std::string scheme = "mac";
  std::vector<GenesisBalance> balances;
};

/// Empty when `p` is usable, otherwise a description of the problem.
std::optional<std::string> validate_params(const ChainParams& p);

/// SUSY-GATEWAY: both chains with their contracts, the oracle network and
/// the status controller, wired together from one config.
class Gateway {
 public:
  /// Throws std::invalid_argument on a bad config.
  explicit Gateway(const GatewayConfig& config);

  Chain& chain(ChainId id) { return id == kOriginChain ? *origin_ : *destination_; }
  const Chain& chain(ChainId id) const { return id == kOriginChain ? *origin_ : *destination_; }
  Chain& origin() { return *origin_; }
  Chain& destination() { return *destination_; }
  const ChainParams& params(ChainId id) const { return id == kOriginChain ? config_.origin : config_.destination; }
  const GatewayConfig& config() const { return config_; }

  OracleNet& oracles() { return *oracles_; }
  const OracleNet& oracles() const { return *oracles_; }
  StatusController& controller() { return controller_; }
  const StatusController& controller() const { return controller_; }
  const SignatureScheme& scheme() const { return *scheme_; }
  const OracleRoster& roster() const { return *roster_; }

  /// One relay round from `source` to the other chain.
  RoundReport relay(ChainId source);
  TickReport tick() { return controller_.tick(*origin_, *destination_, oracles_.get()); }

 private:
  GatewayConfig config_;
  std::shared_ptr<const SignatureScheme> scheme_;
  std::shared_ptr<const OracleRoster> roster_;
  std::unique_ptr<Chain> origin_;
  std::unique_ptr<Chain> destination_;
  std::unique_ptr<OracleNet> oracles_;
  StatusController controller_;
};

}  // namespace susy
