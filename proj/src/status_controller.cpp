#include "susy/status_controller.hpp"

#include "susy/oracle_net.hpp"

namespace susy {

namespace {

ChainId source_of(Direction d) { return d == Direction::OriginToDestination ? kOriginChain : kDestinationChain; }
ChainId executor_of(Direction d) { return d == Direction::OriginToDestination ? kDestinationChain : kOriginChain; }

struct Observed {
  Direction direction = Direction::OriginToDestination;
  std::optional<BlockRef> registered_at;
  std::optional<BlockRef> executed_at;
};

// A port registry holds the swaps it initiated (registration) and the
// foreign swaps it executed (processed_at).
void collect(const SwapRegistry& reg, ChainId chain, std::map<SwapId, Observed>& out) {
  for (const auto& [id, rec] : reg.records()) {
    auto& o = out[id];
    o.direction = rec.direction;
    if (source_of(rec.direction) == chain) {
      o.registered_at = rec.registered_at;
    } else if (rec.processed_at) {
      o.executed_at = rec.processed_at;
    }
  }
}

}  // namespace

std::optional<SwapStatus> StatusController::status(const SwapId& id) const {
  auto it = swaps_.find(id);
  if (it == swaps_.end()) return std::nullopt;
  return it->second.status;
}

bool StatusController::all_finalized() const {
  for (const auto& [id, v] : swaps_) {
    if (v.status != SwapStatus::Finalized) return false;
  }
  return true;
}

TickReport StatusController::tick(const Chain& origin, const Chain& destination, OracleNet* oracles) {
  TickReport report;
  const std::pair<Digest, Digest> tips{origin.canonical_tip().hash, destination.canonical_tip().hash};
  if (last_tips_ == tips) return report;
  last_tips_ = tips;

  std::map<SwapId, Observed> seen;
  collect(origin.canonical_state().registry(), origin.id(), seen);
  collect(destination.canonical_state().registry(), destination.id(), seen);
  auto chain = [&](ChainId id) -> const Chain& { return id == origin.id() ? origin : destination; };

  // Withdraw whatever the canonical branches no longer support.
  for (auto it = swaps_.begin(); it != swaps_.end();) {
    SwapView& v = it->second;
    if (v.status == SwapStatus::Finalized) {
      ++it;
      continue;
    }
    auto obs = seen.find(it->first);
    const bool exec_gone = v.executed_at && (obs == seen.end() || obs->second.executed_at != v.executed_at);
    const bool reg_gone = v.registered_at && (obs == seen.end() || obs->second.registered_at != v.registered_at);
    if (exec_gone) {
      report.retractions.push_back({v.id, SwapStatus::Processed, *v.executed_at});
      v.executed_at.reset();
      v.status = SwapStatus::Registered;
    }
    if (reg_gone) {
      report.retractions.push_back({v.id, SwapStatus::Registered, *v.registered_at});
      it = swaps_.erase(it);
      continue;
    }
    ++it;
  }

  for (const auto& [id, obs] : seen) {
    auto it = swaps_.find(id);
    const Chain& exec_chain = chain(executor_of(obs.direction));
    if (it == swaps_.end()) {
      SwapView v{id, obs.direction, SwapStatus::Registered, obs.registered_at, std::nullopt,
                 exec_chain.canonical_tip().height};
      if (obs.registered_at) {
        report.transitions.push_back({id, std::nullopt, SwapStatus::Registered, *obs.registered_at});
        it = swaps_.emplace(id, v).first;
      } else if (obs.executed_at) {
        // Executed with no canonical registration: record it as observed so
        // the trace shows the anomaly.
        v.status = SwapStatus::Processed;
        v.executed_at = obs.executed_at;
        report.transitions.push_back({id, std::nullopt, SwapStatus::Processed, *obs.executed_at});
        swaps_.emplace(id, v);
        continue;
      } else {
        continue;
      }
    }
    SwapView& v = it->second;
    if (v.status == SwapStatus::Registered && obs.executed_at) {
      v.status = SwapStatus::Processed;
      v.executed_at = obs.executed_at;
      report.transitions.push_back({id, SwapStatus::Registered, SwapStatus::Processed, *obs.executed_at});
    }
  }

  for (auto& [id, v] : swaps_) {
    const ChainId exec = executor_of(v.direction);
    const Chain& exec_chain = chain(exec);
    const FinalityPolicy& p = policy(exec);
    const Height tip = exec_chain.canonical_tip().height;
    if (v.status == SwapStatus::Processed && exec_chain.is_canonical(*v.executed_at) &&
        tip - v.executed_at->height >= p.finality_depth) {
      v.status = SwapStatus::Finalized;
      report.transitions.push_back({id, SwapStatus::Processed, SwapStatus::Finalized, *v.executed_at});
    } else if (v.status == SwapStatus::Registered && tip > v.waiting_since && tip - v.waiting_since > p.timeout) {
      report.stuck.push_back({id, source_of(v.direction), v.waiting_since, tip});
      v.waiting_since = tip;
      if (oracles) oracles->requeue(source_of(v.direction), id);
    }
  }
  return report;
}

}  // namespace susy
