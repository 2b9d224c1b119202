#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include "susy/bytes.hpp"
#include "susy/nebula.hpp"
#include "susy/relay_payload.hpp"
#include "susy/types.hpp"

namespace susy {

struct TransferTx {
  TokenId token;
  AccountId from;
  AccountId to;
  Amount amount = 0;
};

/// User call into LU-PORT.
struct LockTx {
  AccountId sender;
  TokenId token;
  Amount amount = 0;
  AccountId receiver;
};

/// User call into IB-PORT.
struct BurnTx {
  AccountId holder;
  TokenId token;  // the sw-token
  Amount amount = 0;
  AccountId receiver;
};

/// PULSE-TX: data hash plus oracle signatures, for NEBULA-SC.
struct PulseTx {
  Address submitter;
  Digest data_hash;
  Height declared_height = 0;
  std::vector<OracleSignature> signatures;
};

/// SEND-DATA-TX: reveals the payload behind a pulse. The pulse is named
/// either by id or by the hash it committed to; relayers use the hash form
/// because ids are only assigned once the pulse lands in a block.
struct SendDataTx {
  Address submitter;
  std::variant<PulseId, Digest> pulse;
  RelayPayload payload;
};

/// Direct attempt to make a port execute an entry, bypassing NEBULA-SC.
struct PortCallTx {
  Address caller;
  RelayEntry entry;
};

enum class LedgerOp : std::uint8_t { Lock, Unlock, Mint, Burn };

/// Direct call of a privileged ledger operation.
struct LedgerCallTx {
  Address caller;
  LedgerOp op = LedgerOp::Lock;
  TokenId token;
  AccountId account;
  Amount amount = 0;
};

using Transaction = std::variant<TransferTx, LockTx, BurnTx, PulseTx, SendDataTx, PortCallTx, LedgerCallTx>;

std::string_view tx_kind(const Transaction& tx);

/// Bytes hashed into the block: kind tag, sequence number, then fields.
Bytes encode_transaction(const Transaction& tx, TxSeq seq);

}  // namespace susy
