#include "susy/ports.hpp"

#include <stdexcept>

#include "susy/hash.hpp"

namespace susy {

std::string_view to_string(SwapStatus s) {
  switch (s) {
    case SwapStatus::Registered:
      return "Registered";
    case SwapStatus::Processed:
      return "Processed";
    case SwapStatus::Finalized:
      return "Finalized";
  }
  return "?";
}

std::optional<SwapStatus> swap_status_from_string(std::string_view name) {
  for (auto s : {SwapStatus::Registered, SwapStatus::Processed, SwapStatus::Finalized}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

SwapId compute_swap_id(Direction direction, ChainId initiating_chain, const Address& port, const Address& sender,
                       const Address& receiver, Amount amount, TxSeq seq) {
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(direction))
      .u8(initiating_chain.value)
      .raw(port)
      .raw(sender)
      .raw(receiver)
      .u64(amount)
      .u64(seq);
  return SwapId{sha256(w)};
}

Result<SwapStatus> SwapRegistry::swap_status(const SwapId& id) const {
  auto it = records_.find(id);
  if (it == records_.end()) return Error::UnknownSwap;
  return it->second.status;
}

const SwapRecord* SwapRegistry::find(const SwapId& id) const {
  auto it = records_.find(id);
  return it == records_.end() ? nullptr : &it->second;
}

void SwapRegistry::insert(SwapRecord record) {
  auto [it, inserted] = records_.emplace(record.id, record);
  if (!inserted) throw std::logic_error("SwapId collision: " + record.id.hex());
}

// --- LU-PORT ---------------------------------------------------------------

LuPort::LuPort(ChainId chain, ChainId destination)
    : chain_(chain), destination_(destination), address_(lu_port_address(chain)) {}

Result<SwapId> LuPort::lock(TokenLedger& ledger, const AccountId& sender, const TokenId& token, Amount amount,
                            const AccountId& receiver, const ExecContext& ctx, EventSink& events) {
  if (amount == 0) return Error::ZeroAmount;
  if (receiver.chain != destination_) return Error::WrongChainReceiver;
  if (token.is_wrapped()) return Error::UnknownToken;
  if (auto s = ledger.lock(address_, token, sender, amount); !s) return s.error();

  const SwapId id =
      compute_swap_id(Direction::OriginToDestination, chain_, address_, sender.address, receiver.address, amount, ctx.seq);
  insert(SwapRecord{id, Direction::OriginToDestination, sender, receiver, amount, token, SwapStatus::Registered,
                    ctx.block, std::nullopt, std::nullopt});

  ChainEvent ev;
  ev.kind = EventKind::LockRegistered;
  ev.swap_id = id;
  ev.direction = Direction::OriginToDestination;
  ev.token = token.ref();
  ev.sender = sender.address;
  ev.receiver = receiver.address;
  ev.amount = amount;
  events.emit(std::move(ev), ctx);
  return id;
}

Status LuPort::unlock(TokenLedger& ledger, const Address& caller, const RelayEntry& entry, const ExecContext& ctx,
                      EventSink& events) {
  if (caller != nebula_address(chain_)) return Error::NotAuthorized;
  if (entry.direction != Direction::DestinationToOrigin) return Error::UnknownSwap;
  if (entry.token.chain != chain_) return Error::UnknownToken;
  const TokenId* token = ledger.find_token(entry.token.symbol);
  if (!token || token->is_wrapped()) return Error::UnknownToken;
  if (executed(entry.swap_id)) return Error::DuplicateExecution;
  if (find(entry.swap_id)) return Error::UnknownSwap;  // id of a swap this port originated

  const AccountId receiver{chain_, entry.receiver};
  if (auto s = ledger.unlock(address_, *token, receiver, entry.amount); !s) return s;

  // The payload does not carry the burner's address.
  insert(SwapRecord{entry.swap_id, entry.direction, AccountId{destination_, Address{}}, receiver, entry.amount, *token,
                    SwapStatus::Processed, ctx.block, ctx.block, std::nullopt});
  mark_executed(entry.swap_id);

  ChainEvent ev;
  ev.kind = EventKind::UnlockExecuted;
  ev.swap_id = entry.swap_id;
  ev.direction = entry.direction;
  ev.token = entry.token;
  ev.receiver = entry.receiver;
  ev.amount = entry.amount;
  events.emit(std::move(ev), ctx);
  return {};
}

// --- IB-PORT ---------------------------------------------------------------

IbPort::IbPort(ChainId chain, ChainId origin) : chain_(chain), origin_(origin), address_(ib_port_address(chain)) {}

Status IbPort::mint(TokenLedger& ledger, const Address& caller, const RelayEntry& entry, const ExecContext& ctx,
                    EventSink& events) {
  if (caller != nebula_address(chain_)) return Error::NotAuthorized;
  if (entry.direction != Direction::OriginToDestination) return Error::UnknownSwap;
  if (entry.token.chain != origin_ || entry.token.symbol.empty() || entry.token.symbol.size() > 253) {
    return Error::UnknownToken;
  }
  if (executed(entry.swap_id)) return Error::DuplicateExecution;
  if (find(entry.swap_id)) return Error::UnknownSwap;  // id of a swap this port originated
  if (entry.amount == 0) return Error::ZeroAmount;

  const TokenId wrapped = TokenId::wrapped(entry.token, chain_);
  if (const TokenId* known = ledger.find_token(wrapped.symbol)) {
    if (*known != wrapped) return Error::UnknownToken;
  } else if (auto s = ledger.register_token(wrapped); !s) {
    return s;
  }
  const AccountId receiver{chain_, entry.receiver};
  if (auto s = ledger.mint(address_, wrapped, receiver, entry.amount); !s) return s;

  insert(SwapRecord{entry.swap_id, entry.direction, AccountId{origin_, Address{}}, receiver, entry.amount,
                    TokenId::native(entry.token.symbol, entry.token.chain), SwapStatus::Processed, ctx.block,
                    ctx.block, std::nullopt});
  mark_executed(entry.swap_id);

  ChainEvent ev;
  ev.kind = EventKind::MintExecuted;
  ev.swap_id = entry.swap_id;
  ev.direction = entry.direction;
  ev.token = entry.token;
  ev.receiver = entry.receiver;
  ev.amount = entry.amount;
  events.emit(std::move(ev), ctx);
  return {};
}

Result<SwapId> IbPort::burn(TokenLedger& ledger, const AccountId& holder, const TokenId& wrapped, Amount amount,
                            const AccountId& receiver, const ExecContext& ctx, EventSink& events) {
  if (amount == 0) return Error::ZeroAmount;
  if (receiver.chain != origin_) return Error::WrongChainReceiver;
  const TokenId* known = ledger.find_token(wrapped.symbol);
  if (!known || !known->is_wrapped() || *known != wrapped) return Error::NotWrappedToken;
  if (auto s = ledger.burn(address_, wrapped, holder, amount); !s) return s.error();

  const TokenRef original = *wrapped.wrapped_of;
  const SwapId id =
      compute_swap_id(Direction::DestinationToOrigin, chain_, address_, holder.address, receiver.address, amount, ctx.seq);
  insert(SwapRecord{id, Direction::DestinationToOrigin, holder, receiver, amount,
                    TokenId::native(original.symbol, original.chain), SwapStatus::Registered, ctx.block,
                    std::nullopt, std::nullopt});

  ChainEvent ev;
  ev.kind = EventKind::BurnRegistered;
  ev.swap_id = id;
  ev.direction = Direction::DestinationToOrigin;
  ev.token = original;
  ev.sender = holder.address;
  ev.receiver = receiver.address;
  ev.amount = amount;
  events.emit(std::move(ev), ctx);
  return id;
}

}  // namespace susy
