#pragma once

#include <map>
#include <optional>
#include <vector>

#include "susy/chain_sim.hpp"
#include "susy/ports.hpp"
#include "susy/types.hpp"

namespace susy {

class OracleNet;

struct FinalityPolicy {
  Height finality_depth = 6;  // D_fin
  Height timeout = 50;        // T_timeout, in blocks of the executing chain
};

struct StatusTransition {
  SwapId swap;
  std::optional<SwapStatus> from;
  SwapStatus to = SwapStatus::Registered;
  BlockRef at;  // registration block for Registered, execution block otherwise
};

/// A status withdrawn because the block that justified it left the
/// canonical branch.
struct StatusRetraction {
  SwapId swap;
  SwapStatus status = SwapStatus::Registered;
  BlockRef at;
};

struct StuckSwap {
  SwapId swap;
  ChainId source;
  Height waiting_since = 0;  // executing-chain height the timer started at
  Height detected_at = 0;
};

struct TickReport {
  std::vector<StatusRetraction> retractions;
  std::vector<StatusTransition> transitions;
  std::vector<StuckSwap> stuck;

  bool empty() const { return retractions.empty() && transitions.empty() && stuck.empty(); }
};

/// The controller's view of one swap.
struct SwapView {
  SwapId id;
  Direction direction = Direction::OriginToDestination;
  SwapStatus status = SwapStatus::Registered;
  std::optional<BlockRef> registered_at;
  std::optional<BlockRef> executed_at;
  Height waiting_since = 0;
};

/// Off-chain registry view over both chains. Each tick it rescans the
/// canonical port registries, withdraws statuses whose blocks were reorged
/// away, records new registrations and executions, finalizes executions
/// buried at least D_fin deep, and re-queues swaps left Registered longer
/// than T_timeout with the oracle network.
class StatusController {
 public:
  StatusController(FinalityPolicy origin, FinalityPolicy destination) : origin_(origin), destination_(destination) {}

  /// A second call with neither tip changed returns an empty report.
  TickReport tick(const Chain& origin, const Chain& destination, OracleNet* oracles);

  const std::map<SwapId, SwapView>& swaps() const { return swaps_; }
  std::optional<SwapStatus> status(const SwapId& id) const;
  const FinalityPolicy& policy(ChainId chain) const { return chain == kOriginChain ? origin_ : destination_; }

  /// No tracked swap is short of Finalized.
  bool all_finalized() const;

 private:
  FinalityPolicy origin_;
  FinalityPolicy destination_;
  std::map<SwapId, SwapView> swaps_;
  std::optional<std::pair<Digest, Digest>> last_tips_;
};

}  // namespace susy
