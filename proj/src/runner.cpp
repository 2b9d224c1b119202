#include "susy/runner.hpp"

#include <map>
#include <set>

#include "susy/hash.hpp"
#include "susy/trace.hpp"

namespace susy::scenario {

using nlohmann::json;

namespace {

std::string name(ChainId c) { return std::string(chain_name(c)); }

json status_json(const Status& s) {
  if (s.ok()) return "ok";
  return std::string(to_string(s.error()));
}

json block_ref_json(const BlockRef& b) {
  return {{"chain", name(b.chain)}, {"height", b.height}, {"hash", b.hash.hex()}};
}

json event_json(const ChainEvent& ev) {
  json j{{"kind", std::string(to_string(ev.kind))}, {"index", ev.index}, {"tx", ev.tx_seq}};
  if (is_registration(ev.kind) || is_execution(ev.kind)) {
    j["swap"] = ev.swap_id->hex();
    j["direction"] = std::string(to_string(ev.direction));
    j["token"] = ev.token.symbol;
    j["receiver"] = ev.receiver.hex();
    j["amount"] = ev.amount;
    if (is_registration(ev.kind)) j["sender"] = ev.sender.hex();
  } else {
    j["pulse"] = ev.pulse_id;
    j["data_hash"] = ev.data_hash.hex();
    if (ev.kind == EventKind::SendDataConsumed) {
      json results = json::array();
      for (const auto& r : ev.entry_results) results.push_back(status_json(r));
      j["results"] = results;
    }
  }
  return j;
}

json totals_json(const TokenLedger& ledger) {
  json out = json::array();
  for (const auto& t : ledger.totals()) {
    json j{{"token", t.token.symbol}, {"supply", t.total_supply}, {"locked", t.locked}, {"balances", t.balances}};
    if (t.token.wrapped_of) j["wrapped_of"] = {{"token", t.token.wrapped_of->symbol}, {"chain", name(t.token.wrapped_of->chain)}};
    out.push_back(j);
  }
  return out;
}

json payload_json(const RelayPayload& p) {
  json entries = json::array();
  for (const auto& e : p.entries) {
    entries.push_back({{"direction", std::string(to_string(e.direction))},
                       {"swap", e.swap_id.hex()},
                       {"token", e.token.symbol},
                       {"receiver", e.receiver.hex()},
                       {"amount", e.amount}});
  }
  return entries;
}

class Runner {
 public:
  Runner(const Scenario& s, std::uint64_t seed) : s_(s), seed_(seed), gw_(config()) {}

  void run() {
    header();
    for (step_ = 0; step_ < s_.timeline.size(); ++step_) std::visit([this](const auto& st) { apply(st); }, s_.timeline[step_]);
  }

  void emit(json j) {
    records_.push_back(std::move(j));
  }
  std::vector<json> take_records() { return std::move(records_); }

 private:
  GatewayConfig config() const {
    GatewayConfig c = s_.gateway_config();
    c.seed = seed_;
    return c;
  }

  void header() {
    json behaviors = json::array();
    std::size_t byz = 0;
    for (const auto& o : gw_.oracles().oracles()) {
      behaviors.push_back(std::string(to_string(o.behavior)));
      if (o.byzantine()) ++byz;
    }
    json params;
    json genesis;
    for (ChainId c : {kOriginChain, kDestinationChain}) {
      const auto& p = gw_.params(c);
      params[name(c)] = {{"window", p.window},
                         {"confirmations", p.confirmation_depth},
                         {"finality", p.finality_depth},
                         {"timeout", p.timeout}};
      const Chain& ch = gw_.chain(c);
      genesis_ledger_[c] = ch.canonical_state().ledger.serialize_amounts();
      genesis[name(c)] = {{"hash", ch.canonical_tip().hash.hex()}, {"totals", totals_json(ch.canonical_state().ledger)}};
    }
    emit({{"kind", "header"},
          {"scenario", s_.name},
          {"seed", seed_},
          {"params", params},
          {"roster",
           {{"n", behaviors.size()},
            {"threshold", gw_.roster().threshold},
            {"behaviors", behaviors},
            {"byzantine", byz},
            {"scheme", std::string(gw_.scheme().name())}}},
          {"genesis", genesis}});
  }

  json base(const char* kind) const { return {{"kind", kind}, {"step", step_}}; }

  // --- block production and the controller -------------------------------

  void produce(ChainId c, std::optional<BranchId> branch) {
    Chain& ch = gw_.chain(c);
    auto ref = ch.produce_block(branch.value_or(ch.canonical_branch()));
    if (!ref) throw InvalidScenario("cannot produce block: " + std::string(to_string(ref.error())));
    const Block& b = *ch.block(ref->hash);

    json txs = json::array();
    for (const auto& r : b.receipts) {
      txs.push_back({{"seq", r.seq}, {"type", std::string(tx_kind(r.tx))}, {"status", status_json(r.status)}});
    }
    json events = json::array();
    for (const auto& ev : b.events) events.push_back(event_json(ev));
    json j = base("block");
    j["chain"] = name(c);
    j["branch"] = ref->branch;
    j["height"] = ref->height;
    j["hash"] = ref->hash.hex();
    j["parent"] = b.parent.hex();
    j["txs"] = txs;
    j["events"] = events;
    j["tip"] = {{"height", ch.canonical_tip().height}, {"hash", ch.canonical_tip().hash.hex()}};
    j["totals"] = totals_json(ch.canonical_state().ledger);
    emit(j);

    if (const auto& reorg = ch.last_reorg()) {
      json abandoned = json::array();
      for (const auto& h : reorg->abandoned) abandoned.push_back(h.hex());
      json r = base("reorg");
      r["chain"] = name(c);
      r["old_tip"] = reorg->old_tip.hash.hex();
      r["new_tip"] = reorg->new_tip.hash.hex();
      r["common_height"] = reorg->common_height;
      r["depth"] = reorg->depth;
      r["abandoned"] = abandoned;
      emit(r);
      if (reorg->depth > gw_.params(c).finality_depth) {
        throw InvalidScenario("reorg of depth " + std::to_string(reorg->depth) + " on " + name(c) +
                              " exceeds the finality depth");
      }
      json rc = base("replay_check");
      rc["chain"] = name(c);
      rc["ok"] = ch.replay_matches();
      emit(rc);
    }
    tick();
  }

  void tick() {
    const TickReport rep = gw_.tick();
    for (const auto& r : rep.retractions) {
      json j = base("retract");
      j["swap"] = r.swap.hex();
      j["status"] = std::string(to_string(r.status));
      j["at"] = block_ref_json(r.at);
      emit(j);
    }
    for (const auto& t : rep.transitions) {
      json j = base("status");
      j["swap"] = t.swap.hex();
      j["from"] = t.from ? json(std::string(to_string(*t.from))) : json(nullptr);
      j["to"] = std::string(to_string(t.to));
      j["at"] = block_ref_json(t.at);
      emit(j);
    }
    for (const auto& st : rep.stuck) {
      stuck_.insert(st.swap);
      json j = base("stuck");
      j["swap"] = st.swap.hex();
      j["source"] = name(st.source);
      j["waiting_since"] = st.waiting_since;
      j["detected_at"] = st.detected_at;
      emit(j);
    }
  }

  void relay(ChainId source) {
    const RoundReport rep = gw_.relay(source);
    last_outcome_[source] = rep.outcome;
    if (rep.honest_hash) honest_[rep.target].insert(*rep.honest_hash);

    json endorsements = json::array();
    for (const auto& e : rep.endorsements) {
      endorsements.push_back({{"hash", e.hash ? json(e.hash->hex()) : json(nullptr)}, {"oracles", e.oracles}});
    }
    json submissions = json::array();
    for (const auto& sub : rep.submissions) {
      submissions.push_back({{"hash", sub.hash.hex()},
                             {"signers", sub.signers},
                             {"submitter", sub.submitter},
                             {"forged", sub.forged},
                             {"pulse_seq", sub.pulse_seq},
                             {"send_seq", sub.send_seq}});
    }
    json j = base("round");
    j["round"] = rep.round;
    j["source"] = name(rep.source);
    j["target"] = name(rep.target);
    j["outcome"] = std::string(to_string(rep.outcome));
    j["cursor_before"] = rep.cursor_before;
    j["cursor_after"] = rep.cursor_after;
    j["declared_height"] = rep.declared_height;
    j["honest_hash"] = rep.honest_hash ? json(rep.honest_hash->hex()) : json(nullptr);
    j["payload"] = rep.payload ? payload_json(*rep.payload) : json(nullptr);
    j["endorsements"] = endorsements;
    j["submissions"] = submissions;
    emit(j);
  }

  void submitted(ChainId c, TxSeq seq, const Transaction& tx, const std::string& label, const SwapId* id) {
    json j = base("submit");
    j["chain"] = name(c);
    j["seq"] = seq;
    j["type"] = std::string(tx_kind(tx));
    if (!label.empty()) j["label"] = label;
    if (id) j["swap"] = id->hex();
    emit(j);
  }

  TokenId token_on(ChainId c, const std::string& symbol) const {
    if (const TokenId* t = gw_.chain(c).canonical_state().ledger.find_token(symbol)) return *t;
    if (c == kDestinationChain && symbol.starts_with("sw")) {
      return TokenId::wrapped(TokenRef{symbol.substr(2), kOriginChain}, c);
    }
    return TokenId::native(symbol, c);
  }

  // --- steps --------------------------------------------------------------

  void apply(const ProduceStep& p) {
    std::optional<BranchId> b;
    if (p.branch) b = branches_.at({p.chain, *p.branch});
    for (std::uint32_t i = 0; i < p.count; ++i) produce(p.chain, b);
  }

  void apply(const LockStep& l) {
    const AccountId sender{kOriginChain, account_address(l.sender)};
    const AccountId receiver{kDestinationChain, account_address(l.receiver)};
    Transaction tx = LockTx{sender, TokenId::native(l.token, kOriginChain), l.amount, receiver};
    const TxSeq seq = gw_.origin().submit(tx);
    const SwapId id = compute_swap_id(Direction::OriginToDestination, kOriginChain, lu_port_address(kOriginChain),
                                      sender.address, receiver.address, l.amount, seq);
    labels_[l.label] = id;
    submitted(kOriginChain, seq, tx, l.label, &id);
  }

  void apply(const BurnStep& b) {
    const AccountId holder{kDestinationChain, account_address(b.holder)};
    const AccountId receiver{kOriginChain, account_address(b.receiver)};
    Transaction tx = BurnTx{holder, token_on(kDestinationChain, b.token), b.amount, receiver};
    const TxSeq seq = gw_.destination().submit(tx);
    const SwapId id = compute_swap_id(Direction::DestinationToOrigin, kDestinationChain,
                                      ib_port_address(kDestinationChain), holder.address, receiver.address, b.amount, seq);
    labels_[b.label] = id;
    submitted(kDestinationChain, seq, tx, b.label, &id);
  }

  void apply(const TransferStep& t) {
    Transaction tx = TransferTx{token_on(t.chain, t.token), AccountId{t.chain, account_address(t.from)},
                                AccountId{t.chain, account_address(t.to)}, t.amount};
    submitted(t.chain, gw_.chain(t.chain).submit(tx), tx, "", nullptr);
  }

  void apply(const RelayStep& r) {
    if (r.from) {
      relay(*r.from);
    } else {
      relay(kOriginChain);
      relay(kDestinationChain);
    }
  }

  void apply(const CycleStep& c) {
    for (std::uint32_t i = 0; i < c.count; ++i) {
      relay(kOriginChain);
      relay(kDestinationChain);
      produce(kOriginChain, std::nullopt);
      produce(kDestinationChain, std::nullopt);
    }
  }

  void apply(const ForkStep& f) {
    Chain& ch = gw_.chain(f.chain);
    const Height tip = ch.canonical_tip().height;
    if (f.height <= tip && tip - f.height > gw_.params(f.chain).finality_depth) {
      throw InvalidScenario("fork at height " + std::to_string(f.height) + " is deeper than the finality depth");
    }
    auto id = ch.fork_at(f.height);
    if (!id) throw InvalidScenario("fork at height " + std::to_string(f.height) + ": " + std::string(to_string(id.error())));
    branches_[{f.chain, f.branch}] = *id;
    json j = base("fork");
    j["chain"] = name(f.chain);
    j["height"] = f.height;
    j["branch"] = f.branch;
    j["branch_id"] = *id;
    emit(j);
  }

  void apply(const TickStep&) { tick(); }

  void apply(const ReplayRelayStep& r) {
    json j = base("replay");
    j["target"] = name(r.target);
    auto last = gw_.oracles().last_relay(r.target);
    if (!last) {
      j["available"] = false;
      emit(j);
      return;
    }
    Chain& ch = gw_.chain(r.target);
    const TxSeq p = ch.submit(last->first);
    const TxSeq sd = ch.submit(last->second);
    last_replay_ = {r.target, p, sd};
    j["available"] = true;
    j["pulse_seq"] = p;
    j["send_seq"] = sd;
    emit(j);
  }

  void apply(const DirectCallStep& d) {
    ByteWriter w;
    w.raw(std::string_view{"susy.forged"}).u64(step_);
    const RelayEntry entry{d.chain == kDestinationChain ? Direction::OriginToDestination : Direction::DestinationToOrigin,
                           SwapId{sha256(w)}, TokenRef{d.token, kOriginChain}, account_address(d.receiver), d.amount};
    Transaction tx = PortCallTx{attacker_address(), entry};
    submitted(d.chain, gw_.chain(d.chain).submit(tx), tx, "", &entry.swap_id);
  }

  void apply(const AssertStep& a) {
    json actual;
    bool ok = false;
    const json& args = a.args;
    auto chain_arg = [&](const char* key) { return *chain_from_name(args.at(key).get<std::string>()); };
    auto swap_arg = [&] { return labels_.at(args.at("swap").get<std::string>()); };

    if (a.check == "status") {
      auto st = gw_.controller().status(swap_arg());
      actual = st ? std::string(to_string(*st)) : "none";
      ok = actual == args.at("is");
    } else if (a.check == "port_status") {
      auto st = gw_.chain(chain_arg("chain")).canonical_state().registry().swap_status(swap_arg());
      actual = st ? std::string(to_string(*st)) : "none";
      ok = actual == args.at("is");
    } else if (a.check == "balance") {
      const ChainId c = chain_arg("chain");
      actual = gw_.chain(c).canonical_state().ledger.balance(token_on(c, args.at("token")),
                                                             AccountId{c, account_address(args.at("account").get<std::string>())});
      ok = actual == args.at("is");
    } else if (a.check == "locked") {
      actual = gw_.origin().canonical_state().ledger.locked(token_on(kOriginChain, args.at("token")));
      ok = actual == args.at("is");
    } else if (a.check == "supply") {
      const ChainId c = chain_arg("chain");
      actual = gw_.chain(c).canonical_state().ledger.total_supply(token_on(c, args.at("token")));
      ok = actual == args.at("is");
    } else if (a.check == "executions") {
      actual = executions(swap_arg());
      ok = actual == args.at("is");
    } else if (a.check == "quiescent") {
      std::string why = quiescence();
      ok = why.empty();
      actual = ok ? "quiescent" : why;
    } else if (a.check == "all_finalized") {
      std::size_t open = 0;
      for (const auto& [id, v] : gw_.controller().swaps()) open += v.status != SwapStatus::Finalized;
      actual = open;
      ok = open == 0;
    } else if (a.check == "ledger_initial") {
      const ChainId c = chain_arg("chain");
      ok = gw_.chain(c).canonical_state().ledger.serialize_amounts() == genesis_ledger_.at(c);
      actual = ok;
    } else if (a.check == "last_round") {
      auto it = last_outcome_.find(chain_arg("from"));
      actual = it == last_outcome_.end() ? json(nullptr) : json(std::string(to_string(it->second)));
      ok = actual == args.at("outcome");
    } else if (a.check == "no_forged_pulses") {
      std::size_t forged = 0;
      for (ChainId c : {kOriginChain, kDestinationChain}) {
        for (const auto& ev : gw_.chain(c).events_since(0)) {
          if (ev.kind == EventKind::PulseAccepted && !honest_[c].contains(ev.data_hash)) ++forged;
        }
      }
      actual = forged;
      ok = forged == 0;
    } else if (a.check == "last_replay_rejected") {
      actual = replay_outcome();
      ok = actual == "rejected";
    } else if (a.check == "stuck_seen") {
      ok = stuck_.contains(swap_arg());
      actual = ok;
    }

    json j = base("assert");
    j["check"] = a.check;
    j["args"] = args;
    j["actual"] = actual;
    j["ok"] = ok;
    emit(j);
  }

  std::size_t executions(const SwapId& id) const {
    std::size_t n = 0;
    for (ChainId c : {kOriginChain, kDestinationChain}) {
      for (const auto& ev : gw_.chain(c).events_since(0)) n += is_execution(ev.kind) && ev.swap_id == id;
    }
    return n;
  }

  // Empty when every swap is finalized and each locked pool exactly backs
  // its sw-token.
  std::string quiescence() const {
    for (const auto& [id, v] : gw_.controller().swaps()) {
      if (v.status != SwapStatus::Finalized) return "swap " + id.hex() + " is " + std::string(to_string(v.status));
    }
    const TokenLedger& o = gw_.chain(kOriginChain).canonical_state().ledger;
    const TokenLedger& d = gw_.chain(kDestinationChain).canonical_state().ledger;
    for (const auto& [sym, token] : o.tokens()) {
      if (token.is_wrapped()) continue;
      const Amount supply = d.total_supply(TokenId::wrapped(token.ref(), kDestinationChain));
      if (o.locked(token) != supply) {
        return "locked " + sym + " = " + std::to_string(o.locked(token)) + " but sw" + sym + " supply = " +
               std::to_string(supply);
      }
    }
    return {};
  }

  std::string replay_outcome() const {
    if (!last_replay_) return "no replay";
    const auto& [c, pulse_seq, send_seq] = *last_replay_;
    const Chain& ch = gw_.chain(c);
    for (Height h = 1; h <= ch.canonical_tip().height; ++h) {
      const Block& b = ch.canonical_block(h);
      for (const auto& r : b.receipts) {
        if (r.seq != send_seq) continue;
        if (!r.status.ok()) return "rejected";
        for (const auto& ev : b.events) {
          if (ev.tx_seq != send_seq || ev.kind != EventKind::SendDataConsumed) continue;
          for (const auto& er : ev.entry_results) {
            if (er.ok()) return "executed";
          }
        }
        return "rejected";
      }
    }
    return "not included";
  }

  const Scenario& s_;
  std::uint64_t seed_;
  Gateway gw_;
  std::vector<json> records_;
  std::size_t step_ = 0;
  std::map<std::string, SwapId> labels_;
  std::map<std::pair<ChainId, std::string>, BranchId> branches_;
  std::map<ChainId, std::set<Digest>> honest_;
  std::map<ChainId, RoundReport::Outcome> last_outcome_;
  std::map<ChainId, Bytes> genesis_ledger_;
  std::set<SwapId> stuck_;
  std::optional<std::tuple<ChainId, TxSeq, TxSeq>> last_replay_;
};

}  // namespace

RunResult run(const Scenario& s, std::optional<std::uint64_t> seed_override, bool serialize) {
  RunResult out;
  const std::uint64_t seed = seed_override.value_or(s.seed);
  std::optional<Runner> runner;
  try {
    validate(s);
    runner.emplace(s, seed);
    runner->run();
  } catch (const InvalidScenario& e) {
    out.exit_code = 2;
    out.failures.push_back(std::string("invalid scenario: ") + e.what());
  } catch (const std::invalid_argument& e) {
    out.exit_code = 2;
    out.failures.push_back(std::string("invalid scenario: ") + e.what());
  }
  if (runner) {
    if (out.exit_code == 2) runner->emit({{"kind", "invalid"}, {"reason", out.failures.back()}});
    runner->emit({{"kind", "end"}, {"scenario", s.name}, {"seed", seed}});
    out.records = runner->take_records();
  } else {
    out.records.push_back(json{{"kind", "invalid"}, {"reason", out.failures.back()}});
    out.records.push_back(json{{"kind", "end"}, {"scenario", s.name}, {"seed", seed}});
  }
  if (serialize) {
    out.trace.reserve(out.records.size());
    for (const auto& r : out.records) out.trace.push_back(r.dump());
  }
  if (out.exit_code == 2) return out;

  const trace::CheckReport rep = trace::check_records(out.records);
  out.exit_code = rep.exit_code;
  out.failures = rep.failures;
  if (rep.malformed) out.failures.push_back("malformed trace: " + *rep.malformed);
  return out;
}

}  // namespace susy::scenario
