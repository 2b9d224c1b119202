#include "susy/oracle_net.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "susy/hash.hpp"

namespace susy {

namespace {

constexpr std::string_view kBehaviorNames[] = {"Honest",        "Silent",   "WrongAmount",
                                               "WrongReceiver", "Replayer", "Equivocator"};

Amount saturating_double(Amount a) {
  return a > std::numeric_limits<Amount>::max() / 2 ? std::numeric_limits<Amount>::max() : a * 2;
}

RelayEntry entry_from_event(const ChainEvent& ev) {
  return RelayEntry{ev.direction, *ev.swap_id, ev.token, ev.receiver, ev.amount};
}

Digest hash_of(const RelayPayload& p) {
  auto h = payload_hash(p);
  if (!h) throw std::logic_error("oracle produced an unencodable payload");
  return *h;
}

}  // namespace

std::string_view to_string(Behavior b) { return kBehaviorNames[static_cast<std::size_t>(b)]; }

std::optional<Behavior> behavior_from_string(std::string_view name) {
  for (auto b : kAllBehaviors) {
    if (to_string(b) == name) return b;
  }
  return std::nullopt;
}

std::string_view to_string(RoundReport::Outcome o) {
  switch (o) {
    case RoundReport::Outcome::Idle:
      return "Idle";
    case RoundReport::Outcome::Submitted:
      return "Submitted";
    case RoundReport::Outcome::NoQuorum:
      return "NoQuorum";
  }
  return "?";
}

Address oracle_address(std::uint16_t index) { return account_address("oracle-" + std::to_string(index)); }

Address attacker_address() { return account_address("attacker"); }

OracleNet::OracleNet(std::vector<OracleIdentity> oracles, std::shared_ptr<const SignatureScheme> scheme,
                     std::size_t threshold)
    : oracles_(std::move(oracles)), scheme_(std::move(scheme)), threshold_(threshold) {
  if (oracles_.empty() || threshold_ < 1 || threshold_ > oracles_.size()) {
    throw std::invalid_argument("oracle net needs 1 <= threshold <= n");
  }
  for (std::size_t i = 0; i < oracles_.size(); ++i) {
    if (oracles_[i].index != i) throw std::invalid_argument("oracle indices must match roster positions");
  }
}

Height OracleNet::cursor(ChainId source) const {
  auto it = cursors_.find(source);
  return it == cursors_.end() ? 0 : it->second;
}

const std::set<SwapId>& OracleNet::requeued(ChainId source) const {
  static const std::set<SwapId> kEmpty;
  auto it = requeue_.find(source);
  return it == requeue_.end() ? kEmpty : it->second;
}

void OracleNet::requeue(ChainId source, const SwapId& id) { requeue_[source].insert(id); }

std::optional<std::pair<PulseTx, SendDataTx>> OracleNet::last_relay(ChainId target) const {
  auto it = last_relay_.find(target);
  if (it == last_relay_.end()) return std::nullopt;
  return it->second;
}

std::optional<RelayPayload> OracleNet::honest_extraction(const RelayEndpoint& source, const Chain& target) const {
  const Chain& src = *source.chain;
  const Height tip = src.canonical_tip().height;
  const EventKind wanted = src.canonical_state().lu_port() ? EventKind::LockRegistered : EventKind::BurnRegistered;
  const SwapRegistry& executed_on_target = target.canonical_state().registry();
  const Height cur = cursor(src.id());

  RelayPayload out;
  std::set<SwapId> included;
  if (tip >= source.confirmation_depth) {
    const Height upper = tip - source.confirmation_depth;
    if (upper > cur) {
      for (const auto& ev : src.events_since(cur)) {
        if (ev.block.height > upper) break;
        if (ev.kind != wanted || !ev.swap_id || executed_on_target.executed(*ev.swap_id)) continue;
        out.entries.push_back(entry_from_event(ev));
        included.insert(*ev.swap_id);
      }
    }
  }

  // Re-queued swaps: still registered on the canonical source chain, deep
  // enough, and not executed on the target.
  const SwapRegistry& source_registry = src.canonical_state().registry();
  for (const auto& id : requeued(src.id())) {
    if (included.contains(id) || executed_on_target.executed(id)) continue;
    const SwapRecord* rec = source_registry.find(id);
    if (!rec || rec->status != SwapStatus::Registered) continue;
    if (tip - rec->registered_at.height < source.confirmation_depth) continue;
    out.entries.push_back(RelayEntry{rec->direction, rec->id, rec->token.ref(), rec->receiver.address, rec->amount});
    included.insert(id);
  }

  if (out.entries.empty()) return std::nullopt;
  return out;
}

std::vector<RelayEntry> OracleNet::replay_memory() const { return relayed_; }

std::vector<RelayPayload> OracleNet::perturb(const OracleIdentity& oracle,
                                             const std::optional<RelayPayload>& honest) const {
  switch (oracle.behavior) {
    case Behavior::Honest:
      if (honest) return {*honest};
      return {};
    case Behavior::Silent:
      return {};
    case Behavior::WrongAmount: {
      if (!honest) return {};
      RelayPayload p = *honest;
      for (auto& e : p.entries) e.amount = saturating_double(e.amount);
      return {p};
    }
    case Behavior::WrongReceiver: {
      if (!honest) return {};
      RelayPayload p = *honest;
      for (auto& e : p.entries) e.receiver = attacker_address();
      return {p};
    }
    case Behavior::Replayer: {
      RelayPayload p = honest.value_or(RelayPayload{});
      std::set<SwapId> have;
      for (const auto& e : p.entries) have.insert(e.swap_id);
      for (const auto& e : relayed_) {
        if (have.insert(e.swap_id).second) p.entries.push_back(e);
      }
      if (p.entries.empty()) return {};
      return {p};
    }
    case Behavior::Equivocator: {
      if (!honest) return {};
      RelayPayload alt = *honest;
      Amount& a = alt.entries.front().amount;
      a = a == std::numeric_limits<Amount>::max() ? a - 1 : a + 1;
      return {*honest, alt};
    }
  }
  return {};
}

std::vector<RelayPayload> OracleNet::extract(const OracleIdentity& oracle, const RelayEndpoint& source,
                                             const Chain& target) const {
  return perturb(oracle, honest_extraction(source, target));
}

std::optional<Signature> OracleNet::sign_payload(const OracleIdentity& oracle, const Digest& data_hash,
                                                 Height declared_height, ChainId target,
                                                 const std::optional<Digest>& own_extraction) const {
  if (oracle.behavior == Behavior::Silent) return std::nullopt;
  if (oracle.behavior == Behavior::Honest && (!own_extraction || *own_extraction != data_hash)) return std::nullopt;
  const Bytes msg = pulse_message(data_hash, declared_height, target);
  return scheme_->sign(oracle.secret, ByteView{msg});
}

RoundReport OracleNet::relay_round(const RelayEndpoint& source, Chain& target) {
  const Chain& src = *source.chain;
  RoundReport report;
  report.round = rounds_++;
  report.source = src.id();
  report.target = target.id();
  report.cursor_before = cursor(src.id());
  report.cursor_after = report.cursor_before;
  report.declared_height = target.canonical_tip().height;

  const std::optional<RelayPayload> honest = honest_extraction(source, target);
  if (honest) report.honest_hash = hash_of(*honest);

  struct Group {
    RelayPayload payload;
    std::vector<std::uint16_t> endorsers;
    bool byzantine = false;
  };
  std::map<Digest, Group> groups;
  std::vector<std::uint16_t> empty;
  for (const auto& o : oracles_) {
    auto payloads = perturb(o, honest);
    if (payloads.empty()) empty.push_back(o.index);
    for (auto& p : payloads) {
      auto& g = groups[hash_of(p)];
      if (g.endorsers.empty()) g.payload = std::move(p);
      g.endorsers.push_back(o.index);
      g.byzantine = g.byzantine || o.byzantine();
    }
  }
  if (!empty.empty()) report.endorsements.push_back({std::nullopt, empty});
  for (const auto& [h, g] : groups) report.endorsements.push_back({h, g.endorsers});

  const Group* quorum = nullptr;
  Digest quorum_hash;
  for (const auto& [h, g] : groups) {
    if (g.endorsers.size() < threshold_) continue;
    if (!quorum || g.endorsers.size() > quorum->endorsers.size()) {
      quorum = &g;
      quorum_hash = h;
    }
  }

  const Height tip = src.canonical_tip().height;
  const Height upper = tip >= source.confirmation_depth ? tip - source.confirmation_depth : 0;
  const Height advanced = std::max(report.cursor_before, upper);

  struct Pending {
    RoundReport::Submission sub;
    const RelayPayload* payload;
    std::vector<OracleSignature> sigs;
  };
  std::vector<Pending> pending;

  if (quorum) {
    Pending p{{quorum_hash, {}, 0, false, 0, 0}, &quorum->payload, {}};
    for (auto idx : quorum->endorsers) {
      auto sig = sign_payload(oracles_[idx], quorum_hash, report.declared_height, target.id(), report.honest_hash);
      if (!sig) continue;
      p.sigs.push_back({idx, std::move(*sig)});
      p.sub.signers.push_back(idx);
    }
    if (!p.sigs.empty()) {
      p.sub.submitter = p.sub.signers.front();
      pending.push_back(std::move(p));
    }
    report.outcome = RoundReport::Outcome::Submitted;
    report.payload = quorum->payload;
    report.cursor_after = advanced;
    cursors_[src.id()] = advanced;
    auto& rq = requeue_[src.id()];
    for (const auto& e : quorum->payload.entries) {
      rq.erase(e.swap_id);
      const bool seen =
          std::any_of(relayed_.begin(), relayed_.end(), [&](const RelayEntry& r) { return r.swap_id == e.swap_id; });
      if (!seen) relayed_.push_back(e);
    }
  } else if (empty.size() >= threshold_) {
    report.outcome = RoundReport::Outcome::Idle;
    report.cursor_after = advanced;
    cursors_[src.id()] = advanced;
  } else {
    report.outcome = RoundReport::Outcome::NoQuorum;
  }

  // Colluding Byzantine oracles push every payload one of them proposed.
  std::vector<std::uint16_t> coalition;
  for (const auto& o : oracles_) {
    if (o.byzantine() && o.behavior != Behavior::Silent) coalition.push_back(o.index);
  }
  for (const auto& [h, g] : groups) {
    if ((quorum && h == quorum_hash) || !g.byzantine) continue;
    Pending p{{h, {}, 0, true, 0, 0}, &g.payload, {}};
    for (auto idx : coalition) {
      auto sig = sign_payload(oracles_[idx], h, report.declared_height, target.id(), std::nullopt);
      if (!sig) continue;
      p.sigs.push_back({idx, std::move(*sig)});
      p.sub.signers.push_back(idx);
    }
    for (auto idx : g.endorsers) {
      if (oracles_[idx].byzantine()) {
        p.sub.submitter = idx;
        break;
      }
    }
    pending.push_back(std::move(p));
  }

  std::sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
    if (a.sub.submitter != b.sub.submitter) return a.sub.submitter < b.sub.submitter;
    if (a.sub.forged != b.sub.forged) return !a.sub.forged;
    return a.sub.hash < b.sub.hash;
  });
  for (auto& p : pending) {
    const Address from = oracle_address(p.sub.submitter);
    PulseTx pulse{from, p.sub.hash, report.declared_height, std::move(p.sigs)};
    SendDataTx send{from, p.sub.hash, *p.payload};
    if (!p.sub.forged) last_relay_[target.id()] = {pulse, send};
    p.sub.pulse_seq = target.submit(std::move(pulse));
    p.sub.send_seq = target.submit(std::move(send));
    report.submissions.push_back(std::move(p.sub));
  }
  return report;
}

}  // namespace susy
