#include "susy/signature.hpp"

#include <openssl/evp.h>

#include <stdexcept>

#include "susy/hash.hpp"

namespace susy {

namespace {

struct PkeyDeleter {
  void operator()(EVP_PKEY* p) const { EVP_PKEY_free(p); }
};
struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* c) const { EVP_MD_CTX_free(c); }
};
using PkeyPtr = std::unique_ptr<EVP_PKEY, PkeyDeleter>;
using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;

PkeyPtr ed25519_private(const SecretKey& secret) {
  PkeyPtr key(EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr, secret.bytes.data.data(),
                                           secret.bytes.data.size()));
  if (!key) throw std::runtime_error("ed25519: cannot load private key");
  return key;
}

Digest mac(const SecretKey& secret, ByteView message) {
  ByteWriter w;
  w.raw(secret.bytes).raw(message);
  return sha256(w);
}

}  // namespace

PublicKey MacSignatureScheme::public_key(const SecretKey& secret) {
  ByteWriter w;
  w.raw(std::string_view{"susy.mac.pub"}).raw(secret.bytes);
  PublicKey pub{sha256(w)};
  directory_[pub] = secret;
  return pub;
}

Signature MacSignatureScheme::sign(const SecretKey& secret, ByteView message) const {
  auto d = mac(secret, message);
  return Signature(d.data.begin(), d.data.end());
}

bool MacSignatureScheme::verify(const PublicKey& key, ByteView message, const Signature& signature) const {
  auto it = directory_.find(key);
  if (it == directory_.end() || signature.size() != Digest::kSize) return false;
  auto expected = mac(it->second, message);
  return std::equal(signature.begin(), signature.end(), expected.data.begin());
}

PublicKey Ed25519SignatureScheme::public_key(const SecretKey& secret) {
  auto key = ed25519_private(secret);
  PublicKey pub;
  std::size_t len = pub.bytes.data.size();
  if (EVP_PKEY_get_raw_public_key(key.get(), pub.bytes.data.data(), &len) != 1 || len != pub.bytes.data.size()) {
    throw std::runtime_error("ed25519: cannot derive public key");
  }
  return pub;
}

Signature Ed25519SignatureScheme::sign(const SecretKey& secret, ByteView message) const {
  auto key = ed25519_private(secret);
  MdCtxPtr ctx(EVP_MD_CTX_new());
  Signature sig(64);
  std::size_t len = sig.size();
  if (!ctx || EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, key.get()) != 1 ||
      EVP_DigestSign(ctx.get(), sig.data(), &len, message.data(), message.size()) != 1) {
    throw std::runtime_error("ed25519: signing failed");
  }
  sig.resize(len);
  return sig;
}

bool Ed25519SignatureScheme::verify(const PublicKey& key, ByteView message, const Signature& signature) const {
  PkeyPtr pub(
      EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr, key.bytes.data.data(), key.bytes.data.size()));
  if (!pub) return false;
  MdCtxPtr ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr, pub.get()) != 1) return false;
  return EVP_DigestVerify(ctx.get(), signature.data(), signature.size(), message.data(), message.size()) == 1;
}

std::unique_ptr<SignatureScheme> make_signature_scheme(std::string_view name) {
  if (name == "mac") return std::make_unique<MacSignatureScheme>();
  if (name == "ed25519") return std::make_unique<Ed25519SignatureScheme>();
  return nullptr;
}

SecretKey oracle_secret(std::uint64_t seed, std::uint16_t index) {
  ByteWriter w;
  w.raw(std::string_view{"susy.oracle.secret"}).u64(seed).u16(index);
  return SecretKey{sha256(w)};
}

Bytes pulse_message(const Digest& data_hash, Height declared_height, ChainId chain) {
  ByteWriter w;
  w.raw(data_hash).u64(declared_height).u8(chain.value);
  return std::move(w).bytes();
}

}  // namespace susy
