#include "susy/transaction.hpp"

namespace susy {

namespace {

void put_token(ByteWriter& w, const TokenId& t) {
  w.u8(static_cast<std::uint8_t>(t.symbol.size())).raw(t.symbol).u8(t.chain.value);
  if (t.wrapped_of) {
    w.u8(1).u8(static_cast<std::uint8_t>(t.wrapped_of->symbol.size())).raw(t.wrapped_of->symbol).u8(t.wrapped_of->chain.value);
  } else {
    w.u8(0);
  }
}

void put_account(ByteWriter& w, const AccountId& a) { w.u8(a.chain.value).raw(a.address); }

void put_entry(ByteWriter& w, const RelayEntry& e) {
  w.u8(static_cast<std::uint8_t>(e.direction))
      .raw(e.swap_id.value)
      .u8(static_cast<std::uint8_t>(e.token.symbol.size()))
      .raw(e.token.symbol)
      .u8(e.token.chain.value)
      .raw(e.receiver)
      .u64(e.amount);
}

struct Encoder {
  ByteWriter& w;

  void operator()(const TransferTx& tx) {
    put_token(w, tx.token);
    put_account(w, tx.from);
    put_account(w, tx.to);
    w.u64(tx.amount);
  }
  void operator()(const LockTx& tx) {
    put_account(w, tx.sender);
    put_token(w, tx.token);
    w.u64(tx.amount);
    put_account(w, tx.receiver);
  }
  void operator()(const BurnTx& tx) {
    put_account(w, tx.holder);
    put_token(w, tx.token);
    w.u64(tx.amount);
    put_account(w, tx.receiver);
  }
  void operator()(const PulseTx& tx) {
    w.raw(tx.submitter).raw(tx.data_hash).u64(tx.declared_height).u32(static_cast<std::uint32_t>(tx.signatures.size()));
    for (const auto& s : tx.signatures) {
      w.u16(s.oracle).u16(static_cast<std::uint16_t>(s.signature.size())).raw(ByteView{s.signature});
    }
  }
  void operator()(const SendDataTx& tx) {
    w.raw(tx.submitter);
    if (const auto* id = std::get_if<PulseId>(&tx.pulse)) {
      w.u8(0).u64(*id);
    } else {
      w.u8(1).raw(std::get<Digest>(tx.pulse));
    }
    // Not necessarily well-formed: hash what was submitted.
    w.u32(static_cast<std::uint32_t>(tx.payload.entries.size()));
    for (const auto& e : tx.payload.entries) put_entry(w, e);
  }
  void operator()(const PortCallTx& tx) {
    w.raw(tx.caller);
    put_entry(w, tx.entry);
  }
  void operator()(const LedgerCallTx& tx) {
    w.raw(tx.caller).u8(static_cast<std::uint8_t>(tx.op));
    put_token(w, tx.token);
    put_account(w, tx.account);
    w.u64(tx.amount);
  }
};

}  // namespace

std::string_view tx_kind(const Transaction& tx) {
  static constexpr std::string_view kKinds[] = {"Transfer", "Lock",     "Burn",      "Pulse",
                                                "SendData", "PortCall", "LedgerCall"};
  return kKinds[tx.index()];
}

Bytes encode_transaction(const Transaction& tx, TxSeq seq) {
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(tx.index())).u64(seq);
  std::visit(Encoder{w}, tx);
  return std::move(w).bytes();
}

}  // namespace susy
