#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string_view>

#include "susy/bytes.hpp"
#include "susy/types.hpp"

namespace susy {

struct SecretKey {
  FixedBytes<32> bytes;
};

struct PublicKey {
  FixedBytes<32> bytes;

  auto operator<=>(const PublicKey&) const = default;
};

using Signature = Bytes;

/// Signer/verifier pair used by oracles and NEBULA-SC.
class SignatureScheme {
 public:
  virtual ~SignatureScheme() = default;

  virtual std::string_view name() const = 0;
  virtual PublicKey public_key(const SecretKey& secret) = 0;
  virtual Signature sign(const SecretKey& secret, ByteView message) const = 0;
  virtual bool verify(const PublicKey& key, ByteView message, const Signature& signature) const = 0;
};

/// Keyed-MAC simulation: signature = sha256(secret || message).
///
/// Verification needs the secret, so the scheme keeps a directory from each
/// public key it handed out back to its secret. Callers outside the scheme
/// only ever see public keys, which is what makes the simulation unforgeable
/// for them.
class MacSignatureScheme final : public SignatureScheme {
 public:
  std::string_view name() const override { return "mac"; }
  PublicKey public_key(const SecretKey& secret) override;
  Signature sign(const SecretKey& secret, ByteView message) const override;
  bool verify(const PublicKey& key, ByteView message, const Signature& signature) const override;

 private:
  std::map<PublicKey, SecretKey> directory_;
};

/// Ed25519 (OpenSSL). The secret key is the 32-byte seed.
class Ed25519SignatureScheme final : public SignatureScheme {
 public:
  std::string_view name() const override { return "ed25519"; }
  PublicKey public_key(const SecretKey& secret) override;
  Signature sign(const SecretKey& secret, ByteView message) const override;
  bool verify(const PublicKey& key, ByteView message, const Signature& signature) const override;
};

/// "mac" or "ed25519"; nullptr for anything else.
std::unique_ptr<SignatureScheme> make_signature_scheme(std::string_view name);

/// Deterministic oracle key material for roster position `index`.
SecretKey oracle_secret(std::uint64_t seed, std::uint16_t index);

/// Domain-separated message an oracle signs for a pulse:
/// data_hash (32B) | u64 declared_height | u8 chain id.
Bytes pulse_message(const Digest& data_hash, Height declared_height, ChainId chain);

}  // namespace susy
