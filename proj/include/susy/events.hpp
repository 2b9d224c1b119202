#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "susy/error.hpp"
#include "susy/types.hpp"

namespace susy {

enum class EventKind : std::uint8_t {
  LockRegistered,
  BurnRegistered,
  MintExecuted,
  UnlockExecuted,
  PulseAccepted,
  SendDataConsumed,
};

std::string_view to_string(EventKind kind);
std::optional<EventKind> event_kind_from_string(std::string_view name);

inline bool is_registration(EventKind k) { return k == EventKind::LockRegistered || k == EventKind::BurnRegistered; }
inline bool is_execution(EventKind k) { return k == EventKind::MintExecuted || k == EventKind::UnlockExecuted; }

/// Something a contract did inside a block. Which payload fields are
/// meaningful depends on `kind`: swap events use direction..amount, nebula
/// events use pulse_id, data_hash and (for SendDataConsumed) entry_results.
struct ChainEvent {
  EventKind kind = EventKind::LockRegistered;
  BlockRef block;
  std::uint32_t index = 0;  // position within the block
  TxSeq tx_seq = 0;
  std::optional<SwapId> swap_id;

  Direction direction = Direction::OriginToDestination;
  TokenRef token;
  Address sender;
  Address receiver;
  Amount amount = 0;

  PulseId pulse_id = 0;
  Digest data_hash;
  std::vector<Status> entry_results;

  bool operator==(const ChainEvent&) const = default;
};

/// Where the transaction being applied lives.
struct ExecContext {
  BlockRef block;
  TxSeq seq = 0;
};

class EventSink {
 public:
  void emit(ChainEvent event, const ExecContext& ctx) {
    event.block = ctx.block;
    event.tx_seq = ctx.seq;
    event.index = static_cast<std::uint32_t>(events_.size());
    events_.push_back(std::move(event));
  }
  const std::vector<ChainEvent>& events() const { return events_; }
  std::vector<ChainEvent> take() && { return std::move(events_); }
  std::size_t size() const { return events_.size(); }

 private:
  std::vector<ChainEvent> events_;
};

}  // namespace susy
