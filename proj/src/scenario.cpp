#include "susy/scenario.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <type_traits>

namespace susy::scenario {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw InvalidScenario(what); }

void allow_keys(const json& obj, std::initializer_list<std::string_view> keys, const std::string& where) {
  for (const auto& [k, v] : obj.items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) fail(where + ": unexpected field '" + k + "'");
  }
}

template <typename T>
T get(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) fail(where + ": missing field '" + key + "'");
  if constexpr (std::is_integral_v<T> && std::is_unsigned_v<T>) {
    // nlohmann would happily wrap -5 into a huge unsigned value
    if (!obj.at(key).is_number_unsigned()) fail(where + ": field '" + key + "' must be a non-negative integer");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    fail(where + ": field '" + key + "' has the wrong type");
  }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  return get<T>(obj, key, where);
}

ChainId chain_field(const json& obj, const char* key, const std::string& where) {
  auto c = chain_from_name(get<std::string>(obj, key, where));
  if (!c) fail(where + ": unknown chain '" + obj.at(key).get<std::string>() + "'");
  return *c;
}

ChainParams parse_params(const json& obj, const std::string& where) {
  if (!obj.is_object()) fail(where + ": expected an object");
  allow_keys(obj, {"window", "confirmations", "finality", "timeout"}, where);
  ChainParams p;
  p.window = get_or<Height>(obj, "window", p.window, where);
  p.confirmation_depth = get_or<Height>(obj, "confirmations", p.confirmation_depth, where);
  p.finality_depth = get_or<Height>(obj, "finality", p.finality_depth, where);
  p.timeout = get_or<Height>(obj, "timeout", p.timeout, where);
  return p;
}

json params_json(const ChainParams& p) {
  return {{"window", p.window},
          {"confirmations", p.confirmation_depth},
          {"finality", p.finality_depth},
          {"timeout", p.timeout}};
}

// Which arguments each assertion takes.
const std::map<std::string, std::vector<std::string>, std::less<>>& assert_args() {
  static const std::map<std::string, std::vector<std::string>, std::less<>> table{
      {"status", {"swap", "is"}},
      {"port_status", {"swap", "chain", "is"}},
      {"balance", {"chain", "account", "token", "is"}},
      {"locked", {"token", "is"}},
      {"supply", {"chain", "token", "is"}},
      {"executions", {"swap", "is"}},
      {"quiescent", {}},
      {"all_finalized", {}},
      {"ledger_initial", {"chain"}},
      {"last_round", {"from", "outcome"}},
      {"no_forged_pulses", {}},
      {"last_replay_rejected", {}},
      {"stuck_seen", {"swap"}},
  };
  return table;
}

Step parse_step(const json& s, std::size_t index) {
  const std::string where = "timeline[" + std::to_string(index) + "]";
  if (!s.is_object()) fail(where + ": expected an object");
  const auto op = get<std::string>(s, "op", where);

  if (op == "produce" || op == "extend") {
    allow_keys(s, {"op", "chain", "branch", "count"}, where);
    ProduceStep p{chain_field(s, "chain", where), std::nullopt, get_or<std::uint32_t>(s, "count", 1, where)};
    if (s.contains("branch")) p.branch = get<std::string>(s, "branch", where);
    if (op == "extend" && !p.branch) fail(where + ": extend needs a branch");
    if (p.count == 0) fail(where + ": count must be positive");
    return p;
  }
  if (op == "lock") {
    allow_keys(s, {"op", "label", "sender", "token", "amount", "receiver"}, where);
    return LockStep{get<std::string>(s, "label", where), get<std::string>(s, "sender", where),
                    get<std::string>(s, "token", where), get<Amount>(s, "amount", where),
                    get<std::string>(s, "receiver", where)};
  }
  if (op == "burn") {
    allow_keys(s, {"op", "label", "holder", "token", "amount", "receiver"}, where);
    return BurnStep{get<std::string>(s, "label", where), get<std::string>(s, "holder", where),
                    get<std::string>(s, "token", where), get<Amount>(s, "amount", where),
                    get<std::string>(s, "receiver", where)};
  }
  if (op == "transfer") {
    allow_keys(s, {"op", "chain", "from", "to", "token", "amount"}, where);
    return TransferStep{chain_field(s, "chain", where), get<std::string>(s, "from", where),
                        get<std::string>(s, "to", where), get<std::string>(s, "token", where),
                        get<Amount>(s, "amount", where)};
  }
  if (op == "relay") {
    allow_keys(s, {"op", "from"}, where);
    RelayStep r;
    if (s.contains("from")) r.from = chain_field(s, "from", where);
    return r;
  }
  if (op == "cycle") {
    allow_keys(s, {"op", "count"}, where);
    CycleStep c{get_or<std::uint32_t>(s, "count", 1, where)};
    if (c.count == 0) fail(where + ": count must be positive");
    return c;
  }
  if (op == "fork") {
    allow_keys(s, {"op", "chain", "height", "branch"}, where);
    return ForkStep{chain_field(s, "chain", where), get<Height>(s, "height", where),
                    get<std::string>(s, "branch", where)};
  }
  if (op == "tick") {
    allow_keys(s, {"op"}, where);
    return TickStep{};
  }
  if (op == "replay_relay") {
    allow_keys(s, {"op", "target"}, where);
    return ReplayRelayStep{chain_field(s, "target", where)};
  }
  if (op == "direct_call") {
    allow_keys(s, {"op", "chain", "receiver", "token", "amount"}, where);
    return DirectCallStep{chain_field(s, "chain", where), get<std::string>(s, "receiver", where),
                          get<std::string>(s, "token", where), get<Amount>(s, "amount", where)};
  }
  if (op == "assert") {
    const auto check = get<std::string>(s, "check", where);
    auto it = assert_args().find(check);
    if (it == assert_args().end()) fail(where + ": unknown check '" + check + "'");
    json args = json::object();
    for (const auto& [k, v] : s.items()) {
      if (k == "op" || k == "check") continue;
      if (std::find(it->second.begin(), it->second.end(), k) == it->second.end()) {
        fail(where + ": check '" + check + "' does not take '" + k + "'");
      }
      args[k] = v;
    }
    for (const auto& k : it->second) {
      if (!args.contains(k)) fail(where + ": check '" + check + "' needs '" + k + "'");
    }
    for (const char* k : {"chain", "from"}) {
      if (args.contains(k)) (void)chain_field(args, k, where);
    }
    return AssertStep{check, args};
  }
  fail(where + ": unknown op '" + op + "'");
}

struct StepJson {
  json operator()(const ProduceStep& p) const {
    json j{{"op", p.branch ? "extend" : "produce"}, {"chain", chain_name(p.chain)}, {"count", p.count}};
    if (p.branch) j["branch"] = *p.branch;
    return j;
  }
  json operator()(const LockStep& l) const {
    return {{"op", "lock"},       {"label", l.label},   {"sender", l.sender},
            {"token", l.token},   {"amount", l.amount}, {"receiver", l.receiver}};
  }
  json operator()(const BurnStep& b) const {
    return {{"op", "burn"},     {"label", b.label},   {"holder", b.holder},
            {"token", b.token}, {"amount", b.amount}, {"receiver", b.receiver}};
  }
  json operator()(const TransferStep& t) const {
    return {{"op", "transfer"}, {"chain", chain_name(t.chain)}, {"from", t.from},
            {"to", t.to},       {"token", t.token},             {"amount", t.amount}};
  }
  json operator()(const RelayStep& r) const {
    json j{{"op", "relay"}};
    if (r.from) j["from"] = chain_name(*r.from);
    return j;
  }
  json operator()(const CycleStep& c) const { return {{"op", "cycle"}, {"count", c.count}}; }
  json operator()(const ForkStep& f) const {
    return {{"op", "fork"}, {"chain", chain_name(f.chain)}, {"height", f.height}, {"branch", f.branch}};
  }
  json operator()(const TickStep&) const { return {{"op", "tick"}}; }
  json operator()(const ReplayRelayStep& r) const { return {{"op", "replay_relay"}, {"target", chain_name(r.target)}}; }
  json operator()(const DirectCallStep& d) const {
    return {{"op", "direct_call"}, {"chain", chain_name(d.chain)}, {"receiver", d.receiver},
            {"token", d.token},    {"amount", d.amount}};
  }
  json operator()(const AssertStep& a) const {
    json j = a.args;
    j["op"] = "assert";
    j["check"] = a.check;
    return j;
  }
};

}  // namespace

GatewayConfig Scenario::gateway_config() const {
  GatewayConfig c;
  c.seed = seed;
  c.origin = origin;
  c.destination = destination;
  c.behaviors = behaviors;
  c.threshold = threshold;
  c.scheme = scheme;
  c.balances = balances;
  return c;
}

const std::vector<std::string>& assert_checks() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, v] : assert_args()) out.push_back(k);
    return out;
  }();
  return names;
}

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) fail("scenario: expected a JSON object");
  allow_keys(doc, {"name", "description", "seed", "chains", "roster", "signature_scheme", "balances", "timeline"},
             "scenario");
  Scenario s;
  s.name = get<std::string>(doc, "name", "scenario");
  s.description = get_or<std::string>(doc, "description", "", "scenario");
  s.seed = get_or<std::uint64_t>(doc, "seed", 0, "scenario");
  s.scheme = get_or<std::string>(doc, "signature_scheme", "mac", "scenario");

  if (doc.contains("chains")) {
    const json& chains = doc.at("chains");
    if (!chains.is_object()) fail("chains: expected an object");
    allow_keys(chains, {"origin", "destination"}, "chains");
    if (chains.contains("origin")) s.origin = parse_params(chains.at("origin"), "chains.origin");
    if (chains.contains("destination")) s.destination = parse_params(chains.at("destination"), "chains.destination");
  }

  if (doc.contains("roster")) {
    const json& r = doc.at("roster");
    if (!r.is_object()) fail("roster: expected an object");
    allow_keys(r, {"n", "threshold", "behaviors"}, "roster");
    const auto n = get_or<std::size_t>(r, "n", 5, "roster");
    if (n == 0 || n > 0xffff) fail("roster: n out of range");
    s.behaviors.assign(n, Behavior::Honest);
    if (r.contains("behaviors")) {
      const auto names = get<std::vector<std::string>>(r, "behaviors", "roster");
      if (names.size() != n) fail("roster: behaviors must list exactly n entries");
      for (std::size_t i = 0; i < n; ++i) {
        auto b = behavior_from_string(names[i]);
        if (!b) fail("roster: unknown behavior '" + names[i] + "'");
        s.behaviors[i] = *b;
      }
    }
    if (r.contains("threshold")) s.threshold = get<std::size_t>(r, "threshold", "roster");
  }

  if (doc.contains("balances")) {
    const json& bs = doc.at("balances");
    if (!bs.is_array()) fail("balances: expected an array");
    for (std::size_t i = 0; i < bs.size(); ++i) {
      const std::string where = "balances[" + std::to_string(i) + "]";
      allow_keys(bs[i], {"chain", "account", "token", "amount"}, where);
      s.balances.push_back(GenesisBalance{chain_field(bs[i], "chain", where), get<std::string>(bs[i], "account", where),
                                          get<std::string>(bs[i], "token", where), get<Amount>(bs[i], "amount", where)});
    }
  }

  const json& tl = doc.contains("timeline") ? doc.at("timeline") : json::array();
  if (!tl.is_array()) fail("timeline: expected an array");
  for (std::size_t i = 0; i < tl.size(); ++i) s.timeline.push_back(parse_step(tl[i], i));
  return s;
}

Scenario parse_scenario_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("scenario is not valid JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

json to_json(const Scenario& s) {
  json roster{{"n", s.behaviors.size()}};
  json behaviors = json::array();
  for (auto b : s.behaviors) behaviors.push_back(std::string(to_string(b)));
  roster["behaviors"] = behaviors;
  if (s.threshold) roster["threshold"] = *s.threshold;
  json balances = json::array();
  for (const auto& b : s.balances) {
    balances.push_back({{"chain", chain_name(b.chain)}, {"account", b.account}, {"token", b.token}, {"amount", b.amount}});
  }
  json timeline = json::array();
  for (const auto& step : s.timeline) timeline.push_back(std::visit(StepJson{}, step));
  return {{"name", s.name},
          {"description", s.description},
          {"seed", s.seed},
          {"chains", {{"origin", params_json(s.origin)}, {"destination", params_json(s.destination)}}},
          {"roster", roster},
          {"signature_scheme", s.scheme},
          {"balances", balances},
          {"timeline", timeline}};
}

void validate(const Scenario& s) {
  if (s.name.empty()) fail("scenario: name must not be empty");
  for (const auto* p : {&s.origin, &s.destination}) {
    if (auto err = validate_params(*p)) fail("chains: " + *err);
  }
  if (s.threshold && (*s.threshold < 1 || *s.threshold > s.behaviors.size())) {
    fail("roster: threshold must be between 1 and n");
  }
  if (s.scheme != "mac" && s.scheme != "ed25519") fail("unknown signature scheme '" + s.scheme + "'");
  for (const auto& b : s.balances) {
    if (b.account.empty() || b.token.empty()) fail("balances: account and token must be named");
    if (b.token.starts_with("sw")) fail("balances: wrapped tokens cannot be seeded at genesis");
  }

  // Heights are tracked statically: the canonical tip is always the highest
  // branch, so a fork deeper than D_fin below it can be rejected up front.
  // Reorgs that only become deep at run time are caught by the runner.
  struct ChainShape {
    Height tip = 0;
    std::map<std::string, Height> branches;
  };
  std::map<ChainId, ChainShape> shape{{kOriginChain, {}}, {kDestinationChain, {}}};
  auto params = [&](ChainId c) -> const ChainParams& { return c == kOriginChain ? s.origin : s.destination; };
  std::set<std::string> labels;

  for (std::size_t i = 0; i < s.timeline.size(); ++i) {
    const std::string where = "timeline[" + std::to_string(i) + "]";
    const Step& step = s.timeline[i];
    if (const auto* p = std::get_if<ProduceStep>(&step)) {
      auto& sh = shape[p->chain];
      if (p->branch) {
        auto it = sh.branches.find(*p->branch);
        if (it == sh.branches.end()) fail(where + ": unknown branch '" + *p->branch + "'");
        it->second += p->count;
        sh.tip = std::max(sh.tip, it->second);
      } else {
        sh.tip += p->count;
      }
    } else if (const auto* c = std::get_if<CycleStep>(&step)) {
      shape[kOriginChain].tip += c->count;
      shape[kDestinationChain].tip += c->count;
    } else if (const auto* f = std::get_if<ForkStep>(&step)) {
      auto& sh = shape[f->chain];
      if (f->branch.empty()) fail(where + ": branch must be named");
      if (sh.branches.contains(f->branch)) fail(where + ": branch '" + f->branch + "' already exists");
      if (f->height > sh.tip) fail(where + ": fork height " + std::to_string(f->height) + " is beyond the tip");
      if (sh.tip - f->height > params(f->chain).finality_depth) {
        fail(where + ": fork at height " + std::to_string(f->height) + " would reorg deeper than the finality depth");
      }
      sh.branches[f->branch] = f->height;
    } else if (const auto* l = std::get_if<LockStep>(&step)) {
      if (l->label.empty() || !labels.insert(l->label).second) fail(where + ": labels must be unique and non-empty");
      if (l->sender.empty() || l->receiver.empty() || l->token.empty()) fail(where + ": incomplete lock");
    } else if (const auto* b = std::get_if<BurnStep>(&step)) {
      if (b->label.empty() || !labels.insert(b->label).second) fail(where + ": labels must be unique and non-empty");
      if (b->holder.empty() || b->receiver.empty() || b->token.empty()) fail(where + ": incomplete burn");
    } else if (const auto* a = std::get_if<AssertStep>(&step)) {
      if (a->args.contains("swap")) {
        if (!a->args.at("swap").is_string() || !labels.contains(a->args.at("swap").get<std::string>())) {
          fail(where + ": swap label is not defined by an earlier step");
        }
      }
      if (a->args.contains("is") && (a->check == "status" || a->check == "port_status")) {
        const auto& is = a->args.at("is");
        if (!is.is_string() || (is != "none" && !swap_status_from_string(is.get<std::string>()))) {
          fail(where + ": 'is' must be a swap status or \"none\"");
        }
      }
      if (a->check == "last_round") {
        const auto& o = a->args.at("outcome");
        if (o != "Idle" && o != "Submitted" && o != "NoQuorum") fail(where + ": unknown round outcome");
      }
    }
  }
}

Scenario generate_random(std::uint64_t seed, std::size_t swaps, std::vector<Behavior> behaviors) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  auto chance = [&](unsigned percent) { return rng() % 100 < percent; };

  Scenario s;
  s.name = "random-" + std::to_string(seed);
  s.description = "generated workload";
  s.seed = seed;
  if (!behaviors.empty()) s.behaviors = std::move(behaviors);

  const std::vector<std::string> users{"u0", "u1", "u2", "u3", "u4", "u5"};
  const std::vector<std::string> tokens{"T", "U"};
  for (const auto& u : users) {
    for (const auto& t : tokens) s.balances.push_back({kOriginChain, u, t, 10'000});
  }

  std::map<ChainId, Height> tip{{kOriginChain, 0}, {kDestinationChain, 0}};
  std::size_t forks = 0;
  auto cycle = [&](std::uint32_t n) {
    s.timeline.push_back(CycleStep{n});
    tip[kOriginChain] += n;
    tip[kDestinationChain] += n;
  };
  auto maybe_fork = [&] {
    if (!chance(6)) return;
    const ChainId c = chance(50) ? kOriginChain : kDestinationChain;
    const Height depth = 1 + pick(3);
    if (tip[c] < depth) return;
    const std::string name = "f" + std::to_string(forks++);
    s.timeline.push_back(ForkStep{c, tip[c] - depth, name});
    s.timeline.push_back(ProduceStep{c, name, static_cast<std::uint32_t>(depth + 1)});
    tip[c] += 1;
  };

  const std::size_t locks = std::max<std::size_t>(1, swaps * 2 / 3);
  std::map<std::pair<std::string, std::string>, Amount> minted;  // (user, token) on destination
  for (std::size_t i = 0; i < locks; ++i) {
    const auto& sender = users[pick(users.size())];
    const auto& receiver = users[pick(users.size())];
    const auto& token = tokens[pick(tokens.size())];
    const Amount amount = 1 + pick(500);
    s.timeline.push_back(LockStep{"L" + std::to_string(i), sender, token, amount, receiver});
    minted[{receiver, token}] += amount;
    if (chance(50)) cycle(1 + static_cast<std::uint32_t>(pick(2)));
    maybe_fork();
  }
  cycle(16);

  for (std::size_t j = 0; locks + j < swaps; ++j) {
    std::vector<std::pair<std::string, std::string>> holders;
    for (const auto& [k, v] : minted) {
      if (v > 0) holders.push_back(k);
    }
    if (holders.empty()) break;
    const auto [holder, token] = holders[pick(holders.size())];
    const Amount amount = 1 + pick(minted[{holder, token}]);
    minted[{holder, token}] -= amount;
    s.timeline.push_back(BurnStep{"B" + std::to_string(j), holder, "sw" + token, amount, users[pick(users.size())]});
    if (chance(50)) cycle(1 + static_cast<std::uint32_t>(pick(2)));
    maybe_fork();
  }

  // Long enough for a timeout-driven re-attestation to land and finalize.
  cycle(s.destination.timeout + s.destination.confirmation_depth + s.destination.finality_depth + 20);
  s.timeline.push_back(AssertStep{"all_finalized", json::object()});
  s.timeline.push_back(AssertStep{"quiescent", json::object()});
  s.timeline.push_back(AssertStep{"no_forged_pulses", json::object()});
  return s;
}

}  // namespace susy::scenario
