#include "susy/types.hpp"

#include "susy/hash.hpp"

namespace susy {

std::string_view chain_name(ChainId chain) {
  static const std::string kNames[] = {"origin", "destination"};
  if (chain.value < 2) return kNames[chain.value];
  static thread_local std::string other;
  other = "chain" + std::to_string(chain.value);
  return other;
}

std::optional<ChainId> chain_from_name(std::string_view name) {
  if (name == "origin") return kOriginChain;
  if (name == "destination") return kDestinationChain;
  return std::nullopt;
}

std::string_view to_string(Direction d) {
  return d == Direction::OriginToDestination ? "OriginToDestination" : "DestinationToOrigin";
}

Address contract_address(ChainId chain, std::string_view contract) {
  ByteWriter w;
  w.raw(std::string_view{"susy.contract"}).u8(chain.value).raw(contract);
  return Address::truncate(sha256(w).view());
}

}  // namespace susy
