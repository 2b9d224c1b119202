#include "susy/relay_payload.hpp"

#include <limits>

#include "susy/hash.hpp"

namespace susy {

Result<Bytes> encode_payload(const RelayPayload& payload) {
  if (payload.entries.empty() || payload.entries.size() > std::numeric_limits<std::uint16_t>::max()) {
    return Error::MalformedPayload;
  }
  ByteWriter w;
  w.u16(static_cast<std::uint16_t>(payload.entries.size()));
  for (const auto& e : payload.entries) {
    if (e.token.symbol.empty() || e.token.symbol.size() > 255) return Error::MalformedPayload;
    w.u8(static_cast<std::uint8_t>(e.direction))
        .raw(e.swap_id.value)
        .u8(static_cast<std::uint8_t>(e.token.symbol.size()))
        .raw(e.token.symbol)
        .u8(e.token.chain.value)
        .raw(e.receiver)
        .u64(e.amount);
  }
  return std::move(w).bytes();
}

Result<RelayPayload> decode_payload(ByteView bytes) {
  try {
    ByteReader r(bytes);
    const std::uint16_t count = r.u16();
    if (count == 0) return Error::MalformedPayload;
    RelayPayload out;
    out.entries.reserve(count);
    for (std::uint16_t i = 0; i < count; ++i) {
      RelayEntry e;
      const std::uint8_t dir = r.u8();
      if (dir > 1) return Error::MalformedPayload;
      e.direction = static_cast<Direction>(dir);
      e.swap_id.value = r.fixed<32>();
      const std::uint8_t len = r.u8();
      if (len == 0) return Error::MalformedPayload;
      auto sym = r.take(len);
      e.token.symbol.assign(sym.begin(), sym.end());
      e.token.chain = ChainId{r.u8()};
      e.receiver = r.fixed<20>();
      e.amount = r.u64();
      out.entries.push_back(std::move(e));
    }
    if (r.remaining() != 0) return Error::MalformedPayload;
    return out;
  } catch (const DecodeError&) {
    return Error::MalformedPayload;
  }
}

Result<Digest> payload_hash(const RelayPayload& payload) {
  auto bytes = encode_payload(payload);
  if (!bytes) return bytes.error();
  return sha256(ByteView{*bytes});
}

}  // namespace susy
