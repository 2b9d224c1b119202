// Acceptance gate: one PASS/FAIL line per criterion, exit 1 if any fails.
//
// The trace analysis here is written separately from the library's own
// checker (src/trace.cpp) so the two can disagree.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "susy/bundled.hpp"
#include "susy/gateway.hpp"
#include "susy/hash.hpp"
#include "susy/nebula.hpp"
#include "susy/relay_payload.hpp"
#include "susy/runner.hpp"
#include "susy/scenario.hpp"
#include "susy/trace.hpp"

using namespace susy;
using nlohmann::json;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string golden_path(const std::string& name) { return std::string(SUSY_GOLDEN_DIR) + "/" + name; }

// --- trace analysis ----------------------------------------------------------

struct Node {
  std::string parent;
  std::uint64_t height = 0;
  json events;
};

struct TraceFacts {
  std::map<std::string, std::map<std::string, Node>> blocks;  // chain -> hash -> node
  std::map<std::string, std::string> tip;                     // chain -> hash
  std::map<std::string, std::uint64_t> tip_height;
  std::map<std::string, std::uint64_t> finality;
  std::map<std::string, json> totals;  // latest per chain
  std::set<std::string> honest;        // target|hash
  std::size_t accepted_pulses = 0;
  std::size_t forged_accepted = 0;
  std::size_t backing_violations = 0;
  std::size_t status_violations = 0;
  std::size_t byzantine = 0;
  std::vector<std::string> notes;

  std::uint64_t total(const std::string& chain, const std::string& token, const char* field) const {
    auto it = totals.find(chain);
    if (it == totals.end()) return 0;
    for (const auto& t : it->second) {
      if (t.at("token") == token) return t.at(field).get<std::uint64_t>();
    }
    return 0;
  }

  // Every sw-token on destination against the locked pool on origin.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> backing() const {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    auto it = totals.find("destination");
    if (it == totals.end()) return out;
    for (const auto& t : it->second) {
      if (!t.contains("wrapped_of")) continue;
      out.emplace_back(t.at("supply").get<std::uint64_t>(),
                       total("origin", t.at("wrapped_of").at("token"), "locked"));
    }
    return out;
  }

  std::vector<std::string> canonical_path(const std::string& chain) const {
    std::vector<std::string> path;
    const auto& bs = blocks.at(chain);
    for (std::string h = tip.at(chain); bs.contains(h); h = bs.at(h).parent) path.push_back(h);
    return path;
  }

  // swap -> number of executions / registrations on the final canonical branches
  std::map<std::string, int> canonical_count(bool executions) const {
    std::map<std::string, int> out;
    for (const auto& [chain, bs] : blocks) {
      for (const auto& h : canonical_path(chain)) {
        for (const auto& ev : bs.at(h).events) {
          const std::string k = ev.at("kind");
          const bool is_exec = k == "MintExecuted" || k == "UnlockExecuted";
          const bool is_reg = k == "LockRegistered" || k == "BurnRegistered";
          if ((executions && is_exec) || (!executions && is_reg)) ++out[ev.at("swap").get<std::string>()];
        }
      }
    }
    return out;
  }
};

TraceFacts analyze(const std::vector<json>& records) {
  TraceFacts f;
  std::map<std::string, std::vector<std::string>> effective;  // swap -> statuses, retractions applied
  const std::vector<std::string> order{"Registered", "Processed", "Finalized"};

  for (const json& r : records) {
    const std::string kind = r.at("kind");
    if (kind == "header") {
      f.byzantine = r.at("roster").at("byzantine");
      for (const auto& [chain, g] : r.at("genesis").items()) {
        f.blocks[chain][g.at("hash")] = Node{"", 0, json::array()};
        f.tip[chain] = g.at("hash");
        f.tip_height[chain] = 0;
        f.totals[chain] = g.at("totals");
        f.finality[chain] = r.at("params").at(chain).at("finality");
      }
    } else if (kind == "round") {
      if (!r.at("honest_hash").is_null()) {
        f.honest.insert(r.at("target").get<std::string>() + "|" + r.at("honest_hash").get<std::string>());
      }
    } else if (kind == "block") {
      const std::string chain = r.at("chain");
      f.blocks[chain][r.at("hash")] = Node{r.at("parent"), r.at("height"), r.at("events")};
      f.tip[chain] = r.at("tip").at("hash");
      f.tip_height[chain] = r.at("tip").at("height");
      f.totals[chain] = r.at("totals");
      for (const auto& ev : r.at("events")) {
        if (ev.at("kind") != "PulseAccepted") continue;
        ++f.accepted_pulses;
        if (!f.honest.contains(chain + "|" + ev.at("data_hash").get<std::string>())) ++f.forged_accepted;
      }
      for (auto [supply, locked] : f.backing()) {
        if (supply > locked) ++f.backing_violations;
      }
    } else if (kind == "status") {
      auto& seq = effective[r.at("swap")];
      const std::string to = r.at("to");
      const std::size_t want = seq.size();
      if (want >= order.size() || order[want] != to) {
        ++f.status_violations;
        f.notes.push_back("status step to " + to + " after " + std::to_string(seq.size()) + " statuses");
      }
      seq.push_back(to);
      if (to == "Finalized") {
        const std::string chain = r.at("at").at("chain");
        const std::uint64_t depth = f.tip_height[chain] - r.at("at").at("height").get<std::uint64_t>();
        if (depth < f.finality[chain]) {
          ++f.status_violations;
          f.notes.push_back("finalized at depth " + std::to_string(depth));
        }
      }
    } else if (kind == "retract") {
      auto& seq = effective[r.at("swap")];
      if (seq.empty() || seq.back() != r.at("status") || seq.back() == "Finalized") {
        ++f.status_violations;
        f.notes.push_back("bad retraction");
      } else {
        seq.pop_back();
      }
    }
  }
  return f;
}

std::string short_seed(std::uint64_t s) { return "seed " + std::to_string(s); }

// --- criteria ------------------------------------------------------------------

Verdict conservation_at_quiescence() {
  Verdict v;
  std::size_t swaps = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto r = scenario::run(scenario::generate_random(seed, 50), std::nullopt, false);
    if (r.exit_code != 0) {
      v.fail(short_seed(seed) + ": exit " + std::to_string(r.exit_code) + (r.failures.empty() ? "" : " " + r.failures[0]));
      continue;
    }
    const TraceFacts f = analyze(r.records);
    swaps += f.canonical_count(false).size();
    if (f.backing_violations) v.fail(short_seed(seed) + ": supply exceeded locked in flight");
    const auto b = f.backing();
    if (b.empty()) v.fail(short_seed(seed) + ": nothing was minted");
    for (auto [supply, locked] : b) {
      if (supply != locked) v.fail(short_seed(seed) + ": locked " + std::to_string(locked) + " != supply " + std::to_string(supply));
    }
  }
  if (v.ok) v.detail = "100 seeds, " + std::to_string(swaps) + " swaps, locked == supply at quiescence";
  return v;
}

const std::vector<std::string> kAdversarial{"byzantine_minority_silent",  "byzantine_minority_wrong_amount",
                                            "byzantine_minority_wrong_receiver", "byzantine_minority_replayer",
                                            "byzantine_minority_equivocator", "equivocation", "replay_attack"};

// All assignments of at most three Byzantine profiles over five seats.
std::vector<std::vector<Behavior>> rosters() {
  const std::vector<Behavior> bad{Behavior::Silent, Behavior::WrongAmount, Behavior::WrongReceiver, Behavior::Replayer,
                                  Behavior::Equivocator};
  std::vector<std::vector<Behavior>> out;
  std::function<void(std::vector<Behavior>&, int)> rec = [&](std::vector<Behavior>& cur, int byz) {
    if (cur.size() == 5) {
      out.push_back(cur);
      return;
    }
    cur.push_back(Behavior::Honest);
    rec(cur, byz);
    cur.pop_back();
    if (byz == 3) return;
    for (auto b : bad) {
      cur.push_back(b);
      rec(cur, byz + 1);
      cur.pop_back();
    }
  };
  std::vector<Behavior> cur;
  rec(cur, 0);
  return out;
}

Verdict byzantine_minority_safety() {
  Verdict v;
  const auto all = rosters();
  if (all.size() != 1526) v.fail("expected 1526 roster assignments, built " + std::to_string(all.size()));
  std::size_t runs = 0, pulses = 0;
  for (const auto& name : kAdversarial) {
    scenario::Scenario base = scenario::parse_scenario_text(*scenario::find_bundled(name));
    // liveness assertions only hold for the scenario's own roster
    std::erase_if(base.timeline, [](const scenario::Step& s) {
      const auto* a = std::get_if<scenario::AssertStep>(&s);
      return a && a->check != "no_forged_pulses";
    });
    base.threshold.reset();
    for (const auto& roster : all) {
      scenario::Scenario s = base;
      s.behaviors = roster;
      const auto r = scenario::run(s, std::nullopt, false);
      ++runs;
      const TraceFacts f = analyze(r.records);
      pulses += f.accepted_pulses;
      std::string who;
      for (auto b : roster) who += std::string(to_string(b)) + " ";
      if (r.exit_code != 0) v.fail(name + " [" + who + "]: exit " + std::to_string(r.exit_code) + (r.failures.empty() ? "" : " " + r.failures[0]));
      if (f.forged_accepted) v.fail(name + " [" + who + "]: forged pulse accepted");
      if (f.backing_violations) v.fail(name + " [" + who + "]: supply exceeded locked");
    }
  }
  if (v.ok) {
    v.detail = std::to_string(runs) + " runs (" + std::to_string(all.size()) + " rosters x " +
               std::to_string(kAdversarial.size()) + " scenarios), " + std::to_string(pulses) +
               " pulses accepted, 0 forged";
  }
  return v;
}

Verdict exactly_once_under_recovery() {
  Verdict v;
  std::size_t swaps = 0;
  for (const auto* name : {"stuck_swap_recovery", "reorg_before_conf"}) {
    const auto r = scenario::run(scenario::parse_scenario_text(*scenario::find_bundled(name)));
    if (r.exit_code != 0) v.fail(std::string(name) + ": exit " + std::to_string(r.exit_code));
    const TraceFacts f = analyze(r.records);
    const auto regs = f.canonical_count(false);
    const auto execs = f.canonical_count(true);
    bool saw_retract = false, saw_stuck = false;
    for (const auto& line : r.trace) {
      saw_retract |= line.find("\"kind\":\"retract\"") != std::string::npos;
      saw_stuck |= line.find("\"kind\":\"stuck\"") != std::string::npos;
    }
    if (!saw_retract || !saw_stuck) v.fail(std::string(name) + ": recovery path not exercised");
    for (const auto& [swap, n] : regs) {
      auto it = execs.find(swap);
      const int e = it == execs.end() ? 0 : it->second;
      if (n != 1 || e != 1) v.fail(std::string(name) + ": swap " + swap.substr(0, 12) + " executed " + std::to_string(e) + " times");
      ++swaps;
    }
    for (const auto& [swap, n] : execs) {
      if (!regs.contains(swap)) v.fail(std::string(name) + ": execution without canonical registration");
    }
  }
  if (v.ok) v.detail = std::to_string(swaps) + " canonical swaps, one execution each";
  return v;
}

Verdict status_machine() {
  Verdict v;
  std::vector<std::pair<std::string, scenario::RunResult>> traces;
  for (const auto& b : scenario::bundled()) traces.emplace_back(std::string(b.name), scenario::run(scenario::parse_scenario_text(b.text)));
  for (std::uint64_t seed = 1000; seed < 1010; ++seed) traces.emplace_back(short_seed(seed), scenario::run(scenario::generate_random(seed, 30)));
  std::size_t statuses = 0;
  for (const auto& [name, r] : traces) {
    const TraceFacts f = analyze(r.records);
    if (f.status_violations) v.fail(name + ": " + f.notes.front());
    const auto& t = r.trace;
    const auto rep = trace::check_lines(t);  // the serialized form, as `susy check` sees it
    if (rep.exit_code != 0) v.fail(name + ": checker exit " + std::to_string(rep.exit_code));
    for (const auto& l : t) statuses += l.find("\"kind\":\"status\"") != std::string::npos;
  }
  if (v.ok) v.detail = std::to_string(traces.size()) + " traces, " + std::to_string(statuses) + " transitions, all prefixes";
  return v;
}

Verdict nebula_rules() {
  Verdict v;
  const json g = json::parse(read_file(golden_path("vectors.json"))).at("pulses");
  auto scheme = std::make_shared<MacSignatureScheme>();
  std::vector<SecretKey> secrets;
  std::vector<PublicKey> keys;
  for (std::uint16_t i = 0; i < g.at("n").get<std::uint16_t>(); ++i) {
    secrets.push_back(oracle_secret(g.at("seed"), i));
    keys.push_back(scheme->public_key(secrets.back()));
    if (keys.back().bytes.hex() != g.at("public_keys").at(i)) v.fail("public key " + std::to_string(i) + " differs");
  }
  auto roster = std::make_shared<const OracleRoster>(OracleRoster::make(keys));
  if (roster->threshold != g.at("threshold").get<std::size_t>()) v.fail("threshold differs");
  const NebulaConfig cfg{ChainId{g.at("chain").get<std::uint8_t>()}, g.at("window"), roster, scheme};
  const Height current = g.at("current_height");

  std::size_t cases = 0;
  for (const auto& c : g.at("cases")) {
    Nebula nb(cfg);
    for (const auto& pre : c.at("preregistered")) {
      const Digest h = *Digest::from_hex(pre.get<std::string>());
      std::vector<OracleSignature> sigs;
      for (std::uint16_t i = 0; i < 4; ++i) sigs.push_back({i, scheme->sign(secrets[i], pulse_message(h, current, cfg.chain))});
      if (!nb.submit_pulse(h, current, sigs, current)) v.fail("could not preregister");
    }
    std::vector<OracleSignature> sigs;
    for (const auto& p : c.at("signatures")) sigs.push_back({p.at(0).get<std::uint16_t>(), *from_hex(p.at(1).get<std::string>())});
    const auto r = nb.submit_pulse(*Digest::from_hex(c.at("data_hash").get<std::string>()), c.at("declared_height"), sigs, current);
    const std::string got = r ? "Accepted" : std::string(to_string(r.error()));
    if (got != c.at("expected")) v.fail(c.at("name").get<std::string>() + ": got " + got);
    ++cases;
  }

  // send-data: hash match, every single-bit flip, one-shot consumption
  const std::string raw = read_file(golden_path("payload_a.bin"));
  const Bytes enc(raw.begin(), raw.end());
  const auto payload = decode_payload(enc);
  if (!payload) return Verdict{false, "payload_a.bin does not decode"};
  Nebula nb(cfg);
  const Digest h = sha256(ByteView{enc});
  std::vector<OracleSignature> sigs;
  for (std::uint16_t i = 0; i < 4; ++i) sigs.push_back({i, scheme->sign(secrets[i], pulse_message(h, current, cfg.chain))});
  const auto id = nb.submit_pulse(h, current, sigs, current);
  if (!id) return Verdict{false, "payload_a pulse rejected"};
  int routed = 0;
  const EntryRouter route = [&](const RelayEntry&) {
    ++routed;
    return Status{};
  };
  std::size_t flips = 0;
  for (std::size_t bit = 0; bit < enc.size() * 8; ++bit) {
    Bytes b = enc;
    b[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    const auto p = decode_payload(b);
    if (!p) continue;  // cannot even be submitted as a payload
    ++flips;
    const auto res = nb.submit_send_data(*id, *p, route);
    if (res || res.error() != Error::HashMismatch) v.fail("bit flip " + std::to_string(bit) + " was not a hash mismatch");
  }
  if (routed != 0) v.fail("a mismatched payload was routed");
  if (!nb.submit_send_data(*id, *payload, route) || routed != 1) v.fail("matching payload not routed");
  const auto again = nb.submit_send_data(*id, *payload, route);
  if (again || again.error() != Error::AlreadyConsumed || routed != 1) v.fail("second send-data was not AlreadyConsumed");
  if (v.ok) v.detail = std::to_string(cases) + " pulse vectors, " + std::to_string(flips) + " decodable bit flips rejected, one-shot ok";
  return v;
}

Verdict encoding_round_trip() {
  Verdict v;
  const json g = json::parse(read_file(golden_path("vectors.json"))).at("payloads");
  for (const auto& [name, want] : g.items()) {
    const std::string raw = read_file(golden_path(name + ".bin"));
    RelayPayload p;
    for (const auto& e : want.at("entries")) {
      p.entries.push_back(RelayEntry{static_cast<Direction>(e.at("direction").get<int>()),
                                     SwapId{*Digest::from_hex(e.at("swap_id").get<std::string>())},
                                     TokenRef{e.at("symbol"), ChainId{e.at("origin_chain").get<std::uint8_t>()}},
                                     *Address::from_hex(e.at("receiver").get<std::string>()),
                                     std::stoull(e.at("amount").get<std::string>())});
    }
    const auto enc = encode_payload(p);
    if (!enc || Bytes(raw.begin(), raw.end()) != *enc) v.fail(name + " bytes differ from the checked-in file");
    if (!enc || payload_hash(p)->hex() != want.at("sha256")) v.fail(name + " hash differs");
  }

  std::mt19937_64 rng(1000);
  std::map<Bytes, RelayPayload> seen;
  for (int i = 0; i < 1000; ++i) {
    RelayPayload p;
    const std::size_t n = 1 + rng() % 6;
    for (std::size_t k = 0; k < n; ++k) {
      RelayEntry e;
      e.direction = static_cast<Direction>(rng() % 2);
      for (auto& b : e.swap_id.value.data) b = static_cast<std::uint8_t>(rng());
      e.token.symbol = std::string(1 + rng() % 10, 'a');
      for (auto& ch : e.token.symbol) ch = static_cast<char>('A' + rng() % 26);
      e.token.chain = ChainId{static_cast<std::uint8_t>(rng() % 2)};
      for (auto& b : e.receiver.data) b = static_cast<std::uint8_t>(rng() % 4);  // narrow, to invite collisions
      e.amount = rng() % 3 == 0 ? rng() : rng() % 10;
      p.entries.push_back(std::move(e));
    }
    const auto enc = encode_payload(p);
    if (!enc) {
      v.fail("payload " + std::to_string(i) + " did not encode");
      continue;
    }
    const auto dec = decode_payload(*enc);
    if (!dec || !(*dec == p)) v.fail("payload " + std::to_string(i) + " did not round trip");
    if (payload_hash(p).value() != sha256(ByteView{*enc})) v.fail("hash is not sha256 of the encoding");
    auto [it, fresh] = seen.emplace(*enc, p);
    if (!fresh && !(it->second == p)) v.fail("two distinct payloads share an encoding");
  }
  if (v.ok) v.detail = "3 golden files bit-exact, 1000 random payloads lossless, " + std::to_string(seen.size()) + " distinct encodings";
  return v;
}

Verdict replay_determinism() {
  Verdict v;
  std::size_t lines = 0;
  for (const auto& b : scenario::bundled()) {
    const auto s = scenario::parse_scenario_text(b.text);
    const auto first = scenario::run(s);
    const auto second = scenario::run(s);
    if (first.trace != second.trace) v.fail(std::string(b.name) + ": traces differ");
    lines += first.trace.size();
  }
  if (v.ok) v.detail = std::to_string(scenario::bundled().size()) + " scenarios, " + std::to_string(lines) + " records identical";
  return v;
}

Verdict end_to_end_round_trip() {
  Verdict v;
  // Drive the gateway directly rather than through a scenario.
  GatewayConfig cfg;
  cfg.seed = 42;
  cfg.balances.push_back({kOriginChain, "alice", "T", 1000});
  Gateway gw(cfg);
  const Bytes origin0 = gw.origin().canonical_state().ledger.serialize_amounts();
  const Bytes dest0 = gw.destination().canonical_state().ledger.serialize_amounts();

  const AccountId alice{kOriginChain, account_address("alice")};
  const AccountId alice_dest{kDestinationChain, account_address("alice")};
  auto cycle = [&](int n) {
    for (int i = 0; i < n; ++i) {
      gw.relay(kOriginChain);
      gw.relay(kDestinationChain);
      (void)gw.origin().produce_block(gw.origin().canonical_branch());
      (void)gw.destination().produce_block(gw.destination().canonical_branch());
      gw.tick();
    }
  };
  gw.origin().submit(LockTx{alice, TokenId::native("T", kOriginChain), 100, alice_dest});
  cycle(20);
  const TokenId* sw = gw.destination().canonical_state().ledger.find_token("swT");
  if (!sw || gw.destination().canonical_state().ledger.balance(*sw, alice_dest) != 100) return Verdict{false, "100 swT not minted"};
  gw.destination().submit(BurnTx{alice_dest, *sw, 100, alice});
  cycle(20);
  if (!gw.controller().all_finalized() || gw.controller().swaps().size() != 2) v.fail("swaps not both finalized");
  if (gw.origin().canonical_state().ledger.serialize_amounts() != origin0) v.fail("origin ledger differs from genesis");
  if (gw.destination().canonical_state().ledger.serialize_amounts() != dest0) v.fail("destination ledger differs from genesis");

  // and the bundled scenario asserting the same thing through the trace
  const auto r = scenario::run(scenario::parse_scenario_text(*scenario::find_bundled("round_trip")));
  std::set<std::string> asserted;
  for (const auto& line : r.trace) {
    const json rec = json::parse(line);
    if (rec.at("kind") == "assert" && rec.at("check") == "ledger_initial" && rec.at("ok").get<bool>()) {
      asserted.insert(rec.at("args").at("chain").get<std::string>());
    }
  }
  if (r.exit_code != 0) v.fail("round_trip scenario exit " + std::to_string(r.exit_code));
  if (asserted != std::set<std::string>{"origin", "destination"}) v.fail("round_trip lacks ledger_initial on both chains");
  if (v.ok) v.detail = "lock/mint/burn/unlock of 100 T leaves both ledgers byte-identical";
  return v;
}

struct Criterion {
  int id;
  const char* title;
  double budget_s;  // 0 = no time limit
  Verdict (*fn)();
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "conservation at quiescence", 10.0, conservation_at_quiescence},
      {2, "byzantine-minority safety", 30.0, byzantine_minority_safety},
      {3, "exactly-once under recovery", 5.0, exactly_once_under_recovery},
      {4, "status machine", 0, status_machine},
      {5, "nebula rule suite", 0, nebula_rules},
      {6, "canonical encoding round trip", 0, encoding_round_trip},
      {7, "replay determinism", 0, replay_determinism},
      {8, "end-to-end round trip", 0, end_to_end_round_trip},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.fn();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs >= c.budget_s) {
      v.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(c.budget_s) + " s");
    }
    failed += !v.ok;
    std::printf("%s C%d %-32s %7.2fs  %s\n", v.ok ? "PASS" : "FAIL", c.id, c.title, secs, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
