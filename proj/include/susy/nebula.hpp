#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "susy/error.hpp"
#include "susy/relay_payload.hpp"
#include "susy/signature.hpp"
#include "susy/types.hpp"

namespace susy {

struct OracleSignature {
  std::uint16_t oracle = 0;  // roster index
  Signature signature;

  bool operator==(const OracleSignature&) const = default;
};

/// Fixed oracle key list and acceptance threshold for a run.
struct OracleRoster {
  std::vector<PublicKey> keys;
  std::size_t threshold = 1;

  /// BFT supermajority: floor(2n/3) + 1.
  static constexpr std::size_t default_threshold(std::size_t n) { return 2 * n / 3 + 1; }

  /// Throws std::invalid_argument unless 1 <= threshold <= n.
  static OracleRoster make(std::vector<PublicKey> keys, std::optional<std::size_t> threshold = std::nullopt);

  std::size_t size() const { return keys.size(); }
};

struct Pulse {
  PulseId id = 0;
  Digest data_hash;
  Height declared_height = 0;
  std::vector<OracleSignature> signatures;
  bool consumed = false;

  bool operator==(const Pulse&) const = default;
};

struct NebulaConfig {
  ChainId chain;
  Height window = 10;  // relevance window W
  std::shared_ptr<const OracleRoster> roster;
  std::shared_ptr<const SignatureScheme> scheme;
};

/// Delivers one attested entry to the local USER-SC (port).
using EntryRouter = std::function<Status(const RelayEntry&)>;

/// NEBULA-SC: registers oracle-signed hash commitments and routes the
/// revealed payloads to the local port.
///
/// A pulse is accepted iff every listed signature verifies over
/// (data_hash | declared_height | chain id), the distinct signers reach the
/// roster threshold, current - W <= declared_height <= current, and the
/// hash is not already registered unconsumed. Rules are checked in that
/// order; the first failing rule names the rejection.
class Nebula {
 public:
  explicit Nebula(NebulaConfig config);

  const NebulaConfig& config() const { return config_; }

  Result<PulseId> submit_pulse(const Digest& data_hash, Height declared_height,
                               std::span<const OracleSignature> signatures, Height current_height);

  /// Reveals the payload for `id`. On success the pulse is consumed and each
  /// entry is routed in order; the returned vector holds the per-entry port
  /// outcome (a failing entry does not undo its siblings).
  Result<std::vector<Status>> submit_send_data(PulseId id, const RelayPayload& payload, const EntryRouter& route);

  bool verify_signature(const PublicKey& key, ByteView message, const Signature& signature) const;

  const Pulse* pulse(PulseId id) const;
  /// Most recent pulse registered with this hash, consumed or not.
  std::optional<PulseId> find_pulse(const Digest& data_hash) const;
  const std::vector<Pulse>& pulses() const { return pulses_; }

  bool operator==(const Nebula& other) const;

 private:
  NebulaConfig config_;
  std::vector<Pulse> pulses_;  // indexed by PulseId
  std::map<Digest, PulseId> unconsumed_;
  std::map<Digest, PulseId> latest_;
};

}  // namespace susy
