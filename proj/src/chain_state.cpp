#include "susy/chain_state.hpp"

namespace susy {

ChainState make_origin_state(ChainId origin, ChainId destination, NebulaConfig nebula) {
  nebula.chain = origin;
  return ChainState{TokenLedger(origin, lu_port_address(origin), ib_port_address(origin)), LuPort(origin, destination),
                    Nebula(std::move(nebula))};
}

ChainState make_destination_state(ChainId destination, ChainId origin, NebulaConfig nebula) {
  nebula.chain = destination;
  return ChainState{TokenLedger(destination, lu_port_address(destination), ib_port_address(destination)),
                    IbPort(destination, origin), Nebula(std::move(nebula))};
}

namespace {

struct Applier {
  ChainState& st;
  const ExecContext& ctx;
  EventSink& events;

  Status route(const Address& caller, const RelayEntry& entry) {
    if (auto* lu = std::get_if<LuPort>(&st.port)) return lu->unlock(st.ledger, caller, entry, ctx, events);
    return std::get<IbPort>(st.port).mint(st.ledger, caller, entry, ctx, events);
  }

  Status operator()(const TransferTx& tx) { return st.ledger.transfer(tx.token, tx.from, tx.to, tx.amount); }

  Status operator()(const LockTx& tx) {
    auto* lu = std::get_if<LuPort>(&st.port);
    if (!lu) return Error::WrongChain;
    return lu->lock(st.ledger, tx.sender, tx.token, tx.amount, tx.receiver, ctx, events).status();
  }

  Status operator()(const BurnTx& tx) {
    auto* ib = std::get_if<IbPort>(&st.port);
    if (!ib) return Error::WrongChain;
    return ib->burn(st.ledger, tx.holder, tx.token, tx.amount, tx.receiver, ctx, events).status();
  }

  Status operator()(const PulseTx& tx) {
    auto id = st.nebula.submit_pulse(tx.data_hash, tx.declared_height, tx.signatures, ctx.block.height);
    if (!id) return id.error();
    ChainEvent ev;
    ev.kind = EventKind::PulseAccepted;
    ev.pulse_id = *id;
    ev.data_hash = tx.data_hash;
    events.emit(std::move(ev), ctx);
    return {};
  }

  Status operator()(const SendDataTx& tx) {
    PulseId id = 0;
    if (const auto* by_id = std::get_if<PulseId>(&tx.pulse)) {
      id = *by_id;
    } else {
      auto found = st.nebula.find_pulse(std::get<Digest>(tx.pulse));
      if (!found) return Error::UnknownPulse;
      id = *found;
    }
    const Address caller = nebula_address(st.nebula.config().chain);
    auto results =
        st.nebula.submit_send_data(id, tx.payload, [&](const RelayEntry& entry) { return route(caller, entry); });
    if (!results) return results.error();
    ChainEvent ev;
    ev.kind = EventKind::SendDataConsumed;
    ev.pulse_id = id;
    ev.data_hash = st.nebula.pulse(id)->data_hash;
    ev.entry_results = std::move(results).value();
    events.emit(std::move(ev), ctx);
    return {};
  }

  // Contracts never originate transactions, so a tx naming one as caller is forged.
  bool is_contract(const Address& a) const {
    const ChainId c = st.ledger.chain();
    return a == lu_port_address(c) || a == ib_port_address(c) || a == nebula_address(c);
  }

  Status operator()(const PortCallTx& tx) {
    if (is_contract(tx.caller)) return Error::NotAuthorized;
    return route(tx.caller, tx.entry);
  }

  Status operator()(const LedgerCallTx& tx) {
    if (is_contract(tx.caller)) return Error::NotAuthorized;
    switch (tx.op) {
      case LedgerOp::Lock:
        return st.ledger.lock(tx.caller, tx.token, tx.account, tx.amount);
      case LedgerOp::Unlock:
        return st.ledger.unlock(tx.caller, tx.token, tx.account, tx.amount);
      case LedgerOp::Mint:
        return st.ledger.mint(tx.caller, tx.token, tx.account, tx.amount);
      case LedgerOp::Burn:
        return st.ledger.burn(tx.caller, tx.token, tx.account, tx.amount);
    }
    return Error::NotAuthorized;
  }
};

}  // namespace

Status apply_transaction(ChainState& state, const Transaction& tx, const ExecContext& ctx, EventSink& events) {
  return std::visit(Applier{state, ctx, events}, tx);
}

}  // namespace susy
