#include "susy/trace.hpp"

#include <map>
#include <set>

#include "json.hpp"

namespace susy::trace {

using nlohmann::json;

namespace {

struct Malformed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BlockNode {
  std::string parent;
  std::uint64_t height = 0;
  std::set<std::string> executed;      // executions on the path from genesis
  std::set<std::string> executions;    // executions in this block
  std::set<std::string> registrations; // registrations in this block
};

struct ChainView {
  std::map<std::string, BlockNode> blocks;
  std::string tip;
  std::uint64_t tip_height = 0;
  std::uint64_t finality = 0;
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> totals;  // token -> (supply, locked)
  std::map<std::string, std::string> wrapped_of;                          // sw-token -> original
  std::set<std::string> honest_hashes;

  bool canonical(const std::string& hash, std::uint64_t height) const {
    if (height > tip_height) return false;
    std::string cur = tip;
    for (std::uint64_t h = tip_height; h > height; --h) cur = blocks.at(cur).parent;
    return cur == hash;
  }
};

const std::vector<std::string> kOrder{"Registered", "Processed", "Finalized"};

int rank(const std::string& status) {
  for (std::size_t i = 0; i < kOrder.size(); ++i) {
    if (kOrder[i] == status) return static_cast<int>(i);
  }
  throw Malformed("unknown status '" + status + "'");
}

class Checker {
 public:
  void record(const json& r, std::size_t line) {
    if (!r.is_object() || !r.contains("kind")) throw Malformed("line " + std::to_string(line) + ": no kind");
    const std::string kind = r.at("kind");
    if (!header_seen_ && kind != "header" && kind != "invalid") {
      throw Malformed("line " + std::to_string(line) + ": trace must start with a header");
    }
    if (ended_) throw Malformed("line " + std::to_string(line) + ": records after end");
    where_ = "line " + std::to_string(line);

    if (kind == "header") {
      header(r);
    } else if (kind == "invalid") {
      invalid_ = r.value("reason", "invalid scenario");
    } else if (kind == "block") {
      block(r);
    } else if (kind == "round") {
      if (!r.at("honest_hash").is_null()) chain(r.at("target")).honest_hashes.insert(r.at("honest_hash"));
    } else if (kind == "status") {
      status(r);
    } else if (kind == "retract") {
      retract(r);
    } else if (kind == "reorg") {
      if (r.at("depth").get<std::uint64_t>() > chain(r.at("chain")).finality) {
        fail("reorg of depth " + std::to_string(r.at("depth").get<std::uint64_t>()) + " passed the finality depth");
      }
    } else if (kind == "replay_check") {
      if (!r.at("ok").get<bool>()) fail("replaying " + r.at("chain").get<std::string>() + " from genesis diverged");
    } else if (kind == "assert") {
      if (!r.at("ok").get<bool>()) {
        fail("assertion '" + r.at("check").get<std::string>() + "' at step " + std::to_string(r.at("step").get<int>()) +
             " failed (actual " + r.at("actual").dump() + ")");
      }
    } else if (kind == "end") {
      finish();
      ended_ = true;
    } else if (kind != "submit" && kind != "fork" && kind != "stuck" && kind != "replay") {
      throw Malformed(where_ + ": unknown record kind '" + kind + "'");
    }
  }

  CheckReport report() const {
    CheckReport rep;
    rep.failures = failures_;
    if (!ended_) {
      rep.exit_code = 2;
      rep.malformed = "trace has no end record (truncated?)";
    } else if (invalid_) {
      rep.exit_code = 2;
      rep.malformed = *invalid_;
    } else {
      rep.exit_code = failures_.empty() ? 0 : 1;
    }
    return rep;
  }

 private:
  void fail(std::string what) { failures_.push_back(where_ + ": " + std::move(what)); }

  ChainView& chain(const std::string& name) {
    auto it = chains_.find(name);
    if (it == chains_.end()) throw Malformed(where_ + ": unknown chain '" + name + "'");
    return it->second;
  }

  void header(const json& r) {
    if (header_seen_) throw Malformed(where_ + ": second header");
    header_seen_ = true;
    const auto& roster = r.at("roster");
    honest_majority_ = roster.at("byzantine").get<std::size_t>() < roster.at("threshold").get<std::size_t>();
    for (const auto& [name, g] : r.at("genesis").items()) {
      ChainView& v = chains_[name];
      v.finality = r.at("params").at(name).at("finality");
      v.tip = g.at("hash");
      v.blocks[v.tip] = BlockNode{};
      load_totals(v, g.at("totals"));
    }
    if (!chains_.contains("origin") || !chains_.contains("destination")) throw Malformed("header lacks a chain");
  }

  void load_totals(ChainView& v, const json& totals) {
    v.totals.clear();
    for (const auto& t : totals) {
      const std::string token = t.at("token");
      const auto supply = t.at("supply").get<std::uint64_t>();
      const auto locked = t.at("locked").get<std::uint64_t>();
      const auto balances = t.at("balances").get<std::uint64_t>();
      if (supply != balances + locked) {
        fail("conservation broken for " + token + ": supply " + std::to_string(supply) + " != balances " +
             std::to_string(balances) + " + locked " + std::to_string(locked));
      }
      v.totals[token] = {supply, locked};
      if (t.contains("wrapped_of")) v.wrapped_of[token] = t.at("wrapped_of").at("token");
    }
  }

  void backing() {
    const ChainView& o = chains_.at("origin");
    const ChainView& d = chains_.at("destination");
    for (const auto& [sw, original] : d.wrapped_of) {
      auto s = d.totals.find(sw);
      auto l = o.totals.find(original);
      const std::uint64_t supply = s == d.totals.end() ? 0 : s->second.first;
      const std::uint64_t locked = l == o.totals.end() ? 0 : l->second.second;
      if (supply > locked) {
        fail(sw + " supply " + std::to_string(supply) + " exceeds locked " + original + " " + std::to_string(locked));
      }
    }
  }

  void block(const json& r) {
    ChainView& v = chain(r.at("chain"));
    const std::string hash = r.at("hash");
    const std::string parent = r.at("parent");
    const auto height = r.at("height").get<std::uint64_t>();
    auto p = v.blocks.find(parent);
    if (p == v.blocks.end()) {
      fail("block " + hash + " has an unknown parent");
      return;
    }
    if (v.blocks.contains(hash)) {
      fail("block hash " + hash + " appears twice");
      return;
    }
    if (height != p->second.height + 1) fail("block " + hash + " has the wrong height");

    BlockNode node{parent, height, p->second.executed, {}, {}};
    for (const auto& ev : r.at("events")) {
      const std::string kind = ev.at("kind");
      if (kind == "MintExecuted" || kind == "UnlockExecuted") {
        const std::string swap = ev.at("swap");
        if (!node.executed.insert(swap).second) fail("swap " + swap + " executed more than once on one branch");
        node.executions.insert(swap);
      } else if (kind == "LockRegistered" || kind == "BurnRegistered") {
        node.registrations.insert(ev.at("swap").get<std::string>());
      } else if (kind == "PulseAccepted" && honest_majority_) {
        if (!v.honest_hashes.contains(ev.at("data_hash"))) {
          fail("forged pulse " + ev.at("data_hash").get<std::string>() + " accepted");
        }
      }
    }
    v.blocks.emplace(hash, std::move(node));

    // Fork choice: longest branch, ties to the smaller hash.
    if (height > v.tip_height || (height == v.tip_height && hash < v.tip)) {
      v.tip = hash;
      v.tip_height = height;
    }
    if (r.at("tip").at("hash") != v.tip) fail("stated tip disagrees with fork choice");

    load_totals(v, r.at("totals"));
    if (honest_majority_) backing();
  }

  void status(const json& r) {
    const std::string swap = r.at("swap");
    const std::string to = r.at("to");
    const json& at = r.at("at");
    auto cur = current_.find(swap);
    const int have = cur == current_.end() ? -1 : rank(cur->second);
    const std::string from = r.at("from").is_null() ? "none" : r.at("from").get<std::string>();
    if (from != (cur == current_.end() ? "none" : cur->second)) fail("swap " + swap + " transition from wrong status");
    if (rank(to) != have + 1) {
      fail("swap " + swap + " went " + from + " -> " + to + ", not a step along Registered/Processed/Finalized");
    }
    current_[swap] = to;

    ChainView& v = chain(at.at("chain"));
    const std::string hash = at.at("hash");
    const auto height = at.at("height").get<std::uint64_t>();
    auto b = v.blocks.find(hash);
    if (b == v.blocks.end() || !v.canonical(hash, height)) {
      fail("swap " + swap + " marked " + to + " from a non-canonical block");
      return;
    }
    if (to == "Registered" && !b->second.registrations.contains(swap)) fail("swap " + swap + " has no registration there");
    if (to != "Registered" && !b->second.executions.contains(swap)) fail("swap " + swap + " has no execution there");
    if (to == "Finalized" && v.tip_height - height < v.finality) {
      fail("swap " + swap + " finalized at depth " + std::to_string(v.tip_height - height));
    }
  }

  void retract(const json& r) {
    const std::string swap = r.at("swap");
    const std::string st = r.at("status");
    auto cur = current_.find(swap);
    if (cur == current_.end() || cur->second != st) {
      fail("swap " + swap + " retracts " + st + " it does not hold");
      return;
    }
    if (st == "Finalized") fail("swap " + swap + " left Finalized");
    if (st == "Registered") {
      current_.erase(cur);
    } else {
      cur->second = kOrder[rank(st) - 1];
    }
  }

  void finish() {
    if (!header_seen_ || !honest_majority_) return;
    for (const auto& [swap, st] : current_) {
      if (st != "Finalized") return;
    }
    // Quiescent: every pool must back its sw-token exactly.
    const ChainView& o = chains_.at("origin");
    const ChainView& d = chains_.at("destination");
    for (const auto& [sw, original] : d.wrapped_of) {
      const auto supply = d.totals.at(sw).first;
      auto l = o.totals.find(original);
      const std::uint64_t locked = l == o.totals.end() ? 0 : l->second.second;
      if (supply != locked) fail("at quiescence " + sw + " supply " + std::to_string(supply) + " != locked " + std::to_string(locked));
    }
  }

  bool header_seen_ = false;
  bool ended_ = false;
  bool honest_majority_ = true;
  std::optional<std::string> invalid_;
  std::string where_;
  std::map<std::string, ChainView> chains_;
  std::map<std::string, std::string> current_;  // swap -> effective status
  std::vector<std::string> failures_;
};

}  // namespace

CheckReport check_records(const std::vector<json>& records) {
  Checker c;
  try {
    for (std::size_t i = 0; i < records.size(); ++i) c.record(records[i], i + 1);
  } catch (const json::exception& e) {
    return CheckReport{2, {}, std::string("unreadable trace: ") + e.what()};
  } catch (const Malformed& e) {
    return CheckReport{2, {}, e.what()};
  }
  return c.report();
}

CheckReport check_lines(const std::vector<std::string>& lines) {
  std::vector<json> records;
  records.reserve(lines.size());
  try {
    for (const auto& line : lines) {
      if (!line.empty()) records.push_back(json::parse(line));
    }
  } catch (const json::exception& e) {
    return CheckReport{2, {}, std::string("unreadable trace: ") + e.what()};
  }
  return check_records(records);
}

CheckReport check_stream(std::istream& in) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(std::move(line));
  return check_lines(lines);
}

}  // namespace susy::trace
