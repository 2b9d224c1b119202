#pragma once

#include <string_view>

#include "susy/bytes.hpp"

namespace susy {

/// SHA-256 of a byte string.
Digest sha256(ByteView data);

inline Digest sha256(const ByteWriter& w) { return sha256(ByteView{w.bytes()}); }

/// Deterministic 160-bit address for a named user account.
Address account_address(std::string_view name);

}  // namespace susy
