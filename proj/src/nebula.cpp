#include "susy/nebula.hpp"

#include <set>
#include <stdexcept>

#include "susy/hash.hpp"

namespace susy {

OracleRoster OracleRoster::make(std::vector<PublicKey> keys, std::optional<std::size_t> threshold) {
  OracleRoster roster;
  roster.threshold = threshold.value_or(default_threshold(keys.size()));
  roster.keys = std::move(keys);
  if (roster.keys.empty() || roster.keys.size() > 0xffff) {
    throw std::invalid_argument("oracle roster must hold between 1 and 65535 keys");
  }
  if (roster.threshold < 1 || roster.threshold > roster.keys.size()) {
    throw std::invalid_argument("roster threshold must satisfy 1 <= threshold <= n");
  }
  return roster;
}

Nebula::Nebula(NebulaConfig config) : config_(std::move(config)) {
  if (!config_.roster || !config_.scheme) throw std::invalid_argument("nebula needs a roster and a signature scheme");
}

bool Nebula::verify_signature(const PublicKey& key, ByteView message, const Signature& signature) const {
  return config_.scheme->verify(key, message, signature);
}

Result<PulseId> Nebula::submit_pulse(const Digest& data_hash, Height declared_height,
                                     std::span<const OracleSignature> signatures, Height current_height) {
  const auto& roster = *config_.roster;
  const Bytes message = pulse_message(data_hash, declared_height, config_.chain);
  std::set<std::uint16_t> signers;
  for (const auto& sig : signatures) {
    if (sig.oracle >= roster.size()) return Error::InvalidSignature;
    if (!verify_signature(roster.keys[sig.oracle], message, sig.signature)) return Error::InvalidSignature;
    signers.insert(sig.oracle);
  }
  if (signers.size() < roster.threshold) return Error::InsufficientSignatures;
  if (declared_height > current_height) return Error::FutureHeight;
  if (declared_height + config_.window < current_height) return Error::StaleHeight;
  if (unconsumed_.contains(data_hash)) return Error::DuplicatePulse;

  const PulseId id = pulses_.size();
  pulses_.push_back(Pulse{id, data_hash, declared_height, {signatures.begin(), signatures.end()}, false});
  unconsumed_[data_hash] = id;
  latest_[data_hash] = id;
  return id;
}

Result<std::vector<Status>> Nebula::submit_send_data(PulseId id, const RelayPayload& payload,
                                                     const EntryRouter& route) {
  if (id >= pulses_.size()) return Error::UnknownPulse;
  Pulse& p = pulses_[id];
  if (p.consumed) return Error::AlreadyConsumed;
  auto hash = payload_hash(payload);
  if (!hash) return hash.error();
  if (*hash != p.data_hash) return Error::HashMismatch;

  p.consumed = true;
  unconsumed_.erase(p.data_hash);
  std::vector<Status> results;
  results.reserve(payload.entries.size());
  for (const auto& entry : payload.entries) results.push_back(route(entry));
  return results;
}

const Pulse* Nebula::pulse(PulseId id) const { return id < pulses_.size() ? &pulses_[id] : nullptr; }

std::optional<PulseId> Nebula::find_pulse(const Digest& data_hash) const {
  auto it = latest_.find(data_hash);
  if (it == latest_.end()) return std::nullopt;
  return it->second;
}

bool Nebula::operator==(const Nebula& other) const {
  return config_.chain == other.config_.chain && config_.window == other.config_.window &&
         pulses_ == other.pulses_ && unconsumed_ == other.unconsumed_ && latest_ == other.latest_;
}

}  // namespace susy
