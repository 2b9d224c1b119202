#pragma once

#include <map>
#include <optional>
#include <set>
#include <string_view>

#include "susy/error.hpp"
#include "susy/events.hpp"
#include "susy/relay_payload.hpp"
#include "susy/token_ledger.hpp"
#include "susy/types.hpp"

namespace susy {

enum class SwapStatus : std::uint8_t { Registered, Processed, Finalized };

std::string_view to_string(SwapStatus s);
std::optional<SwapStatus> swap_status_from_string(std::string_view name);

struct SwapRecord {
  SwapId id;
  Direction direction = Direction::OriginToDestination;
  AccountId sender;
  AccountId receiver;  // on the opposite chain
  Amount amount = 0;
  TokenId token;  // the original token
  SwapStatus status = SwapStatus::Registered;
  BlockRef registered_at;
  std::optional<BlockRef> processed_at;
  std::optional<BlockRef> finalized_at;

  bool operator==(const SwapRecord&) const = default;
};

/// sha256(u8 direction | u8 initiating chain | 20B port | 20B sender
///        | 20B receiver | u64 amount | u64 tx seq)
SwapId compute_swap_id(Direction direction, ChainId initiating_chain, const Address& port, const Address& sender,
                       const Address& receiver, Amount amount, TxSeq seq);

/// State shared by both ports: the swap registry and the replay guard.
class SwapRegistry {
 public:
  Result<SwapStatus> swap_status(const SwapId& id) const;
  const SwapRecord* find(const SwapId& id) const;
  bool executed(const SwapId& id) const { return executed_.contains(id); }
  const std::map<SwapId, SwapRecord>& records() const { return records_; }
  const std::set<SwapId>& executed_ids() const { return executed_; }

  bool operator==(const SwapRegistry&) const = default;

 protected:
  /// Throws std::logic_error on a SwapId collision.
  void insert(SwapRecord record);
  void mark_executed(const SwapId& id) { executed_.insert(id); }

 private:
  std::map<SwapId, SwapRecord> records_;
  std::set<SwapId> executed_;
};

/// LU-PORT: locks original tokens on the origin chain and unlocks them when
/// NEBULA-SC routes an attested reverse swap.
class LuPort : public SwapRegistry {
 public:
  LuPort(ChainId chain, ChainId destination);

  ChainId chain() const { return chain_; }
  const Address& address() const { return address_; }

  Result<SwapId> lock(TokenLedger& ledger, const AccountId& sender, const TokenId& token, Amount amount,
                      const AccountId& receiver, const ExecContext& ctx, EventSink& events);

  /// Only NEBULA-SC of this chain may call this.
  Status unlock(TokenLedger& ledger, const Address& caller, const RelayEntry& entry, const ExecContext& ctx,
                EventSink& events);

  bool operator==(const LuPort&) const = default;

 private:
  ChainId chain_;
  ChainId destination_;
  Address address_;
};

/// IB-PORT: issues sw-tokens on the destination chain for attested locks and
/// burns them to start reverse swaps.
class IbPort : public SwapRegistry {
 public:
  IbPort(ChainId chain, ChainId origin);

  ChainId chain() const { return chain_; }
  const Address& address() const { return address_; }

  /// Only NEBULA-SC of this chain may call this. Registers sw{T} on first use.
  Status mint(TokenLedger& ledger, const Address& caller, const RelayEntry& entry, const ExecContext& ctx,
              EventSink& events);

  Result<SwapId> burn(TokenLedger& ledger, const AccountId& holder, const TokenId& wrapped, Amount amount,
                      const AccountId& receiver, const ExecContext& ctx, EventSink& events);

  bool operator==(const IbPort&) const = default;

 private:
  ChainId chain_;
  ChainId origin_;
  Address address_;
};

}  // namespace susy
