#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "susy/bytes.hpp"

namespace susy {

using Amount = std::uint64_t;
using Height = std::uint64_t;
using BranchId = std::uint32_t;
using PulseId = std::uint64_t;
using TxSeq = std::uint64_t;

struct ChainId {
  std::uint8_t value = 0;

  auto operator<=>(const ChainId&) const = default;
};

inline constexpr ChainId kOriginChain{0};
inline constexpr ChainId kDestinationChain{1};

std::string_view chain_name(ChainId chain);  // "origin", "destination", or "chain<N>"
std::optional<ChainId> chain_from_name(std::string_view name);

enum class Direction : std::uint8_t { OriginToDestination = 0, DestinationToOrigin = 1 };

std::string_view to_string(Direction d);

struct AccountId {
  ChainId chain;
  Address address;

  auto operator<=>(const AccountId&) const = default;
};

/// (symbol, home chain) pair naming a token without its wrap metadata.
struct TokenRef {
  std::string symbol;
  ChainId chain;

  auto operator<=>(const TokenRef&) const = default;
};

struct TokenId {
  std::string symbol;
  ChainId chain;
  std::optional<TokenRef> wrapped_of;  // set only for sw-tokens

  TokenRef ref() const { return {symbol, chain}; }
  bool is_wrapped() const { return wrapped_of.has_value(); }

  static TokenId native(std::string symbol, ChainId chain) { return {std::move(symbol), chain, std::nullopt}; }
  /// sw{TOKEN} on `on_chain`, backed by `original`.
  static TokenId wrapped(const TokenRef& original, ChainId on_chain) {
    return {"sw" + original.symbol, on_chain, original};
  }

  auto operator<=>(const TokenId&) const = default;
};

struct SwapId {
  Digest value;

  std::string hex() const { return value.hex(); }
  auto operator<=>(const SwapId&) const = default;
};

struct BlockRef {
  ChainId chain;
  BranchId branch = 0;
  Height height = 0;
  Digest hash;

  bool operator==(const BlockRef&) const = default;
};

/// Well-known contract addresses on a chain ("LU-PORT", "IB-PORT", "NEBULA-SC").
Address contract_address(ChainId chain, std::string_view contract);

inline Address lu_port_address(ChainId chain) { return contract_address(chain, "LU-PORT"); }
inline Address ib_port_address(ChainId chain) { return contract_address(chain, "IB-PORT"); }
inline Address nebula_address(ChainId chain) { return contract_address(chain, "NEBULA-SC"); }

}  // namespace susy
