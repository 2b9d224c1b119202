#pragma once

#include <vector>

#include "susy/bytes.hpp"
#include "susy/error.hpp"
#include "susy/types.hpp"

namespace susy {

/// One attested swap instruction.
struct RelayEntry {
  Direction direction = Direction::OriginToDestination;
  SwapId swap_id;
  TokenRef token;  // the original token: symbol and origin chain
  Address receiver;
  Amount amount = 0;

  bool operator==(const RelayEntry&) const = default;
};

/// Ordered batch of attested swaps; the reveal half of a pulse.
struct RelayPayload {
  std::vector<RelayEntry> entries;

  bool operator==(const RelayPayload&) const = default;
};

/// Canonical wire encoding, big-endian:
///
///   u16 entry count
///   per entry: u8 direction | 32B swap_id | u8 symbol length | symbol
///              | u8 origin chain id | 20B receiver | u64 amount
///
/// Fails with MalformedPayload for empty payloads, more than 65535 entries,
/// or symbols that are empty or longer than 255 bytes.
Result<Bytes> encode_payload(const RelayPayload& payload);

/// Strict inverse of encode_payload: rejects trailing bytes, unknown
/// direction codes and every input encode_payload would not produce.
Result<RelayPayload> decode_payload(ByteView bytes);

/// sha256 of the canonical encoding; this is what a pulse commits to.
Result<Digest> payload_hash(const RelayPayload& payload);

}  // namespace susy
