#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "susy/chain_sim.hpp"
#include "susy/nebula.hpp"
#include "susy/relay_payload.hpp"
#include "susy/signature.hpp"

namespace susy {

enum class Behavior : std::uint8_t { Honest, Silent, WrongAmount, WrongReceiver, Replayer, Equivocator };

std::string_view to_string(Behavior b);
std::optional<Behavior> behavior_from_string(std::string_view name);
inline constexpr Behavior kAllBehaviors[] = {Behavior::Honest,        Behavior::Silent,   Behavior::WrongAmount,
                                             Behavior::WrongReceiver, Behavior::Replayer, Behavior::Equivocator};

struct OracleIdentity {
  std::uint16_t index = 0;
  SecretKey secret;
  PublicKey public_key;
  Behavior behavior = Behavior::Honest;

  bool byzantine() const { return behavior != Behavior::Honest; }
};

/// Address an oracle uses when it broadcasts relay transactions.
Address oracle_address(std::uint16_t index);
/// Where WrongReceiver oracles redirect funds.
Address attacker_address();

/// One side of a relay: a chain and the depth events need before extraction.
struct RelayEndpoint {
  Chain* chain = nullptr;
  Height confirmation_depth = 6;
};

struct RoundReport {
  enum class Outcome : std::uint8_t { Idle, Submitted, NoQuorum };

  struct Endorsement {
    std::optional<Digest> hash;  // nullopt = the empty extraction
    std::vector<std::uint16_t> oracles;
  };
  struct Submission {
    Digest hash;
    std::vector<std::uint16_t> signers;
    std::uint16_t submitter = 0;
    bool forged = false;
    TxSeq pulse_seq = 0;
    TxSeq send_seq = 0;
  };

  std::uint64_t round = 0;
  ChainId source;
  ChainId target;
  Outcome outcome = Outcome::Idle;
  Height cursor_before = 0;
  Height cursor_after = 0;
  Height declared_height = 0;
  std::optional<Digest> honest_hash;  // what an honest extractor produced
  std::optional<RelayPayload> payload;  // the quorum payload, if any
  std::vector<Endorsement> endorsements;
  std::vector<Submission> submissions;
};

std::string_view to_string(RoundReport::Outcome o);

/// The off-chain half of the gateway.
///
/// Each round every oracle extracts the confirmed registration events of the
/// source chain past the shared cursor, plus any swaps re-queued by the
/// status controller. A payload endorsed byte-for-byte by at least
/// `threshold` oracles is signed by its endorsers and relayed (PULSE-TX then
/// SEND-DATA-TX) by the lowest-index signer. Byzantine oracles collude: every
/// non-silent Byzantine oracle signs every payload a Byzantine oracle
/// proposes, and those payloads are submitted too. The cursor only advances
/// when a round reaches quorum.
class OracleNet {
 public:
  OracleNet(std::vector<OracleIdentity> oracles, std::shared_ptr<const SignatureScheme> scheme,
            std::size_t threshold);

  const std::vector<OracleIdentity>& oracles() const { return oracles_; }
  std::size_t threshold() const { return threshold_; }

  /// What an honest extractor reports for `source` right now; nullopt when
  /// there is nothing to relay.
  std::optional<RelayPayload> honest_extraction(const RelayEndpoint& source, const Chain& target) const;

  /// Payloads `oracle` endorses this round (Equivocators endorse two, Silent
  /// oracles none).
  std::vector<RelayPayload> extract(const OracleIdentity& oracle, const RelayEndpoint& source,
                                    const Chain& target) const;

  /// Honest oracles sign only the hash of their own extraction.
  std::optional<Signature> sign_payload(const OracleIdentity& oracle, const Digest& data_hash, Height declared_height,
                                        ChainId target, const std::optional<Digest>& own_extraction) const;

  RoundReport relay_round(const RelayEndpoint& source, Chain& target);

  /// Schedules a registered swap for re-attestation in the next round.
  void requeue(ChainId source, const SwapId& id);
  const std::set<SwapId>& requeued(ChainId source) const;

  Height cursor(ChainId source) const;

  /// Copies of the last honest relay pair sent to `target`, for replay tests.
  std::optional<std::pair<PulseTx, SendDataTx>> last_relay(ChainId target) const;

 private:
  std::vector<RelayPayload> perturb(const OracleIdentity& oracle, const std::optional<RelayPayload>& honest) const;
  std::vector<RelayEntry> replay_memory() const;

  std::vector<OracleIdentity> oracles_;
  std::shared_ptr<const SignatureScheme> scheme_;
  std::size_t threshold_;
  std::map<ChainId, Height> cursors_;
  std::map<ChainId, std::set<SwapId>> requeue_;
  std::vector<RelayEntry> relayed_;  // every entry that went out in a quorum payload
  std::map<ChainId, std::pair<PulseTx, SendDataTx>> last_relay_;
  std::uint64_t rounds_ = 0;
};

}  // namespace susy
