#include "susy/chain_sim.hpp"

#include <stdexcept>

#include "susy/hash.hpp"

namespace susy {

Chain::Chain(ChainId id, ChainState genesis, std::uint64_t salt)
    : id_(id), salt_(salt), genesis_state_(std::make_shared<const ChainState>(std::move(genesis))) {
  Block g;
  g.parent = Digest{};
  g.coinbase = coinbase_digest(kMainBranch, 0);
  ByteWriter w;
  w.raw(g.parent).u64(0).raw(g.coinbase);
  g.ref = BlockRef{id_, kMainBranch, 0, sha256(w)};
  g.state = genesis_state_;
  tip_ = g.ref;
  canonical_.push_back(g.ref.hash);
  branches_[kMainBranch] = g.ref.hash;
  blocks_.emplace(g.ref.hash, std::move(g));
}

Digest Chain::coinbase_digest(BranchId branch, Height height) const {
  ByteWriter w;
  w.raw(std::string_view{"susy.coinbase"}).u64(salt_).u8(id_.value).u32(branch).u64(height);
  return sha256(w);
}

TxSeq Chain::submit(Transaction tx) {
  const TxSeq seq = next_seq_++;
  pending_.emplace_back(seq, std::move(tx));
  return seq;
}

Result<BlockRef> Chain::produce_block(BranchId branch) {
  auto br = branches_.find(branch);
  if (br == branches_.end()) return Error::UnknownBranch;
  const Block& parent = blocks_.at(br->second);

  Block b;
  b.parent = parent.ref.hash;
  b.coinbase = coinbase_digest(branch, parent.ref.height + 1);
  b.receipts.reserve(pending_.size());
  ByteWriter header;
  header.raw(b.parent).u64(parent.ref.height + 1).raw(b.coinbase);
  for (auto& [seq, tx] : pending_) {
    const Digest digest = sha256(ByteView{encode_transaction(tx, seq)});
    header.raw(digest);
    b.receipts.push_back(TxReceipt{seq, std::move(tx), digest, {}});
  }
  pending_.clear();
  b.ref = BlockRef{id_, branch, parent.ref.height + 1, sha256(header)};
  if (blocks_.contains(b.ref.hash)) throw std::logic_error("block hash collision");

  auto state = std::make_shared<ChainState>(*parent.state);
  EventSink sink;
  for (auto& r : b.receipts) r.status = apply_transaction(*state, r.tx, ExecContext{b.ref, r.seq}, sink);
  b.events = std::move(sink).take();
  b.state = std::move(state);

  const BlockRef ref = b.ref;
  br->second = ref.hash;
  blocks_.emplace(ref.hash, std::move(b));
  reselect_tip();
  return ref;
}

void Chain::reselect_tip() {
  last_reorg_.reset();
  BranchId best_branch = canonical_branch_;
  const Block* best = &blocks_.at(tip_.hash);
  for (const auto& [id, hash] : branches_) {
    const Block& cand = blocks_.at(hash);
    const bool longer = cand.ref.height > best->ref.height;
    const bool tie_smaller = cand.ref.height == best->ref.height && cand.ref.hash < best->ref.hash;
    if (longer || tie_smaller) {
      best = &cand;
      best_branch = id;
    }
  }
  if (best->ref.hash == tip_.hash) {
    canonical_branch_ = best_branch;
    return;
  }

  const BlockRef old_tip = tip_;
  // Walk back from the new tip until we meet the old canonical branch.
  std::vector<Digest> path;
  const Block* cur = best;
  while (!(cur->ref.height < canonical_.size() && canonical_[cur->ref.height] == cur->ref.hash)) {
    path.push_back(cur->ref.hash);
    cur = &blocks_.at(cur->parent);
  }
  const Height common = cur->ref.height;

  std::vector<Digest> abandoned;
  for (Height h = common + 1; h < canonical_.size(); ++h) abandoned.push_back(canonical_[h]);
  canonical_.resize(common + 1);
  for (auto it = path.rbegin(); it != path.rend(); ++it) canonical_.push_back(*it);

  tip_ = best->ref;
  canonical_branch_ = best_branch;
  if (!abandoned.empty()) {
    last_reorg_ = ReorgInfo{old_tip, tip_, common, old_tip.height - common, std::move(abandoned)};
  }
}

Result<BranchId> Chain::fork_at(Height height) {
  if (height > tip_.height) return Error::HeightBeyondTip;
  const BranchId id = branches_.rbegin()->first + 1;
  branches_[id] = canonical_[height];
  return id;
}

bool Chain::is_canonical(const Digest& hash, Height height) const {
  return height < canonical_.size() && canonical_[height] == hash;
}

bool Chain::is_canonical(const BlockRef& ref) const { return ref.chain == id_ && is_canonical(ref.hash, ref.height); }

std::optional<Height> Chain::confirmations(const ChainEvent& event) const {
  if (!is_canonical(event.block)) return std::nullopt;
  return tip_.height - event.block.height;
}

std::vector<ChainEvent> Chain::events_since(Height cursor) const {
  std::vector<ChainEvent> out;
  for (Height h = cursor + 1; h <= tip_.height; ++h) {
    const auto& evs = blocks_.at(canonical_[h]).events;
    out.insert(out.end(), evs.begin(), evs.end());
  }
  return out;
}

const Block* Chain::block(const Digest& hash) const {
  auto it = blocks_.find(hash);
  return it == blocks_.end() ? nullptr : &it->second;
}

const Block& Chain::canonical_block(Height height) const { return blocks_.at(canonical_.at(height)); }

std::optional<BlockRef> Chain::branch_tip(BranchId branch) const {
  auto it = branches_.find(branch);
  if (it == branches_.end()) return std::nullopt;
  return blocks_.at(it->second).ref;
}

ChainState Chain::replay_canonical() const {
  ChainState state = *genesis_state_;
  for (Height h = 1; h <= tip_.height; ++h) {
    const Block& b = canonical_block(h);
    EventSink sink;
    for (const auto& r : b.receipts) (void)apply_transaction(state, r.tx, ExecContext{b.ref, r.seq}, sink);
  }
  return state;
}

bool Chain::replay_matches() const {
  ChainState state = *genesis_state_;
  for (Height h = 1; h <= tip_.height; ++h) {
    const Block& b = canonical_block(h);
    EventSink sink;
    for (const auto& r : b.receipts) {
      if (apply_transaction(state, r.tx, ExecContext{b.ref, r.seq}, sink) != r.status) return false;
    }
    if (sink.events() != b.events) return false;
  }
  return state == canonical_state();
}

}  // namespace susy
