#include "catch_amalgamated.hpp"

#include "susy/gateway.hpp"
#include "susy/hash.hpp"

using namespace susy;

namespace {

const AccountId kAlice{kOriginChain, account_address("alice")};
const AccountId kBob{kDestinationChain, account_address("bob")};
const TokenId kT = TokenId::native("T", kOriginChain);
const TokenId kSwT = TokenId::wrapped(kT.ref(), kDestinationChain);

GatewayConfig config(std::vector<Behavior> behaviors = std::vector<Behavior>(5, Behavior::Honest)) {
  GatewayConfig c;
  c.seed = 3;
  c.behaviors = std::move(behaviors);
  c.balances.push_back({kOriginChain, "alice", "T", 10'000});
  return c;
}

void produce(Chain& c, int n) {
  for (int i = 0; i < n; ++i) REQUIRE(c.produce_block(c.canonical_branch()));
}

// Lock in block 1, then bury it `depth` blocks deep.
void lock_and_bury(Gateway& gw, Amount amount, int depth) {
  gw.origin().submit(LockTx{kAlice, kT, amount, kBob});
  produce(gw.origin(), 1 + depth);
}

Amount minted(const Gateway& gw) { return gw.chain(kDestinationChain).canonical_state().ledger.total_supply(kSwT); }

}  // namespace

TEST_CASE("extraction waits for exactly D_conf confirmations", "[oracle]") {
  Gateway gw(config());
  lock_and_bury(gw, 100, 5);
  auto r = gw.relay(kOriginChain);
  CHECK(r.outcome == RoundReport::Outcome::Idle);
  CHECK_FALSE(r.honest_hash);
  CHECK(gw.destination().pending_count() == 0);

  produce(gw.origin(), 1);
  r = gw.relay(kOriginChain);
  REQUIRE(r.outcome == RoundReport::Outcome::Submitted);
  REQUIRE(r.payload);
  CHECK(r.payload->entries.size() == 1);
  CHECK(r.payload->entries[0].amount == 100);
  CHECK(r.submissions.size() == 1);
  CHECK(r.submissions[0].signers.size() == 5);
  CHECK(r.submissions[0].submitter == 0);
  CHECK(r.cursor_after == 1);

  produce(gw.destination(), 1);
  CHECK(minted(gw) == 100);
  CHECK(gw.destination().canonical_state().ledger.balance(kSwT, kBob) == 100);

  // nothing new: idle, and the execution is not relayed again
  produce(gw.origin(), 3);
  CHECK(gw.relay(kOriginChain).outcome == RoundReport::Outcome::Idle);
}

TEST_CASE("honest oracles sign only their own extraction", "[oracle]") {
  Gateway gw(config({Behavior::Honest, Behavior::Silent, Behavior::WrongAmount}));
  const auto& o = gw.oracles().oracles();
  const Digest mine = sha256(Bytes{1});
  const Digest other = sha256(Bytes{2});
  CHECK(gw.oracles().sign_payload(o[0], mine, 4, kDestinationChain, mine));
  CHECK_FALSE(gw.oracles().sign_payload(o[0], other, 4, kDestinationChain, mine));
  CHECK_FALSE(gw.oracles().sign_payload(o[0], mine, 4, kDestinationChain, std::nullopt));
  CHECK_FALSE(gw.oracles().sign_payload(o[1], mine, 4, kDestinationChain, mine));
  CHECK(gw.oracles().sign_payload(o[2], other, 4, kDestinationChain, mine));
}

TEST_CASE("two wrong-amount oracles of five block quorum without forging", "[oracle]") {
  Gateway gw(config({Behavior::WrongAmount, Behavior::WrongAmount, Behavior::Honest, Behavior::Honest, Behavior::Honest}));
  lock_and_bury(gw, 100, 6);
  const auto r = gw.relay(kOriginChain);
  CHECK(r.outcome == RoundReport::Outcome::NoQuorum);
  CHECK(r.cursor_after == r.cursor_before);
  // the coalition still tries its own payload
  REQUIRE(r.submissions.size() == 1);
  CHECK(r.submissions[0].forged);
  CHECK(r.submissions[0].signers == std::vector<std::uint16_t>{0, 1});
  produce(gw.destination(), 1);
  CHECK(minted(gw) == 0);
  CHECK(gw.destination().canonical_state().nebula.pulses().empty());
}

TEST_CASE("no subset of signers gives a forged payload a quorum", "[oracle][property]") {
  // f = 1 of 5: the forger plus every honest signer that would cooperate
  Gateway gw(config({Behavior::Honest, Behavior::WrongReceiver, Behavior::Honest, Behavior::Honest, Behavior::Honest}));
  lock_and_bury(gw, 100, 6);
  const RelayEndpoint src{&gw.origin(), 6};
  const auto honest = gw.oracles().honest_extraction(src, gw.destination());
  REQUIRE(honest);
  const Digest honest_hash = *payload_hash(*honest);
  const auto forged = gw.oracles().extract(gw.oracles().oracles()[1], src, gw.destination());
  REQUIRE(forged.size() == 1);
  const Digest forged_hash = *payload_hash(forged[0]);
  REQUIRE(forged_hash != honest_hash);

  const Height h = gw.destination().canonical_tip().height;
  for (unsigned mask = 0; mask < 32; ++mask) {
    std::vector<OracleSignature> sigs;
    for (std::uint16_t i = 0; i < 5; ++i) {
      if (!(mask & (1u << i))) continue;
      auto s = gw.oracles().sign_payload(gw.oracles().oracles()[i], forged_hash, h, kDestinationChain, honest_hash);
      if (s) sigs.push_back({i, *s});
    }
    Nebula nb = gw.destination().canonical_state().nebula;
    const auto r = nb.submit_pulse(forged_hash, h, sigs, h);
    REQUIRE_FALSE(r);
    CHECK(r.error() == Error::InsufficientSignatures);
  }
}

TEST_CASE("honest quorum delivers within one round per batch", "[oracle]") {
  for (auto bad : {Behavior::Silent, Behavior::WrongAmount, Behavior::WrongReceiver, Behavior::Replayer,
                   Behavior::Equivocator}) {
    DYNAMIC_SECTION(to_string(bad)) {
      Gateway gw(config({Behavior::Honest, Behavior::Honest, bad, Behavior::Honest, Behavior::Honest}));
      lock_and_bury(gw, 70, 6);
      auto r = gw.relay(kOriginChain);
      produce(gw.destination(), 1);
      if (minted(gw) == 0) {
        r = gw.relay(kOriginChain);
        produce(gw.destination(), 1);
      }
      CHECK(minted(gw) == 70);
      for (const auto& s : r.submissions) {
        if (s.forged) CHECK(s.signers.size() < gw.oracles().threshold());
      }
      // every accepted pulse is the honest one
      for (const auto& p : gw.destination().canonical_state().nebula.pulses()) {
        CHECK(p.data_hash == *r.honest_hash);
      }
    }
  }
}

TEST_CASE("equivocator endorses two payloads", "[oracle]") {
  Gateway gw(config({Behavior::Equivocator, Behavior::Honest, Behavior::Honest, Behavior::Honest, Behavior::Honest}));
  lock_and_bury(gw, 10, 6);
  const RelayEndpoint src{&gw.origin(), 6};
  const auto both = gw.oracles().extract(gw.oracles().oracles()[0], src, gw.destination());
  REQUIRE(both.size() == 2);
  CHECK(both[0] != both[1]);
  const auto r = gw.relay(kOriginChain);
  CHECK(r.outcome == RoundReport::Outcome::Submitted);
  REQUIRE(r.endorsements.size() == 2);
}

TEST_CASE("rounds are deterministic", "[oracle]") {
  auto run = [] {
    Gateway gw(config({Behavior::Replayer, Behavior::Honest, Behavior::Honest, Behavior::WrongAmount, Behavior::Honest}));
    std::vector<std::string> out;
    for (int i = 0; i < 4; ++i) {
      lock_and_bury(gw, 10 + i, 3);
      const auto r = gw.relay(kOriginChain);
      produce(gw.destination(), 1);
      out.push_back(std::string(to_string(r.outcome)) + (r.honest_hash ? r.honest_hash->hex() : "-"));
      for (const auto& s : r.submissions) out.push_back(s.hash.hex() + std::to_string(s.submitter));
    }
    out.push_back(gw.destination().canonical_tip().hash.hex());
    return out;
  };
  CHECK(run() == run());
}

TEST_CASE("requeued swaps are re-attested", "[oracle]") {
  Gateway gw(config());
  lock_and_bury(gw, 40, 6);
  REQUIRE(gw.relay(kOriginChain).outcome == RoundReport::Outcome::Submitted);
  // the relay is lost: drop the queued txs by forking the destination
  const BranchId b = gw.destination().fork_at(0).value();
  produce(gw.destination(), 1);  // carries the relay txs
  REQUIRE(minted(gw) == 40);
  REQUIRE(gw.destination().produce_block(b));
  REQUIRE(gw.destination().produce_block(b));
  REQUIRE(minted(gw) == 0);

  CHECK(gw.relay(kOriginChain).outcome == RoundReport::Outcome::Idle);  // cursor moved on
  const SwapId id = gw.origin().canonical_state().registry().records().begin()->first;
  gw.oracles().requeue(kOriginChain, id);
  CHECK(gw.oracles().requeued(kOriginChain).contains(id));
  const auto r = gw.relay(kOriginChain);
  CHECK(r.outcome == RoundReport::Outcome::Submitted);
  CHECK(gw.oracles().requeued(kOriginChain).empty());
  produce(gw.destination(), 1);
  CHECK(minted(gw) == 40);
}
