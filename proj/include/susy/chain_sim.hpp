#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "susy/chain_state.hpp"
#include "susy/error.hpp"
#include "susy/events.hpp"
#include "susy/transaction.hpp"
#include "susy/types.hpp"

namespace susy {

struct TxReceipt {
  TxSeq seq = 0;
  Transaction tx;
  Digest digest;
  Status status;  // failure marker; failed txs change nothing
};

struct Block {
  BlockRef ref;
  Digest parent;
  Digest coinbase;
  std::vector<TxReceipt> receipts;
  std::vector<ChainEvent> events;
  std::shared_ptr<const ChainState> state;  // post-state
};

struct ReorgInfo {
  BlockRef old_tip;
  BlockRef new_tip;
  Height common_height = 0;
  Height depth = 0;  // old_tip.height - common_height
  std::vector<Digest> abandoned;  // formerly canonical blocks, lowest first
};

/// A simulated blockchain: block tree, branches, fork choice and the
/// contract state carried by every block.
///
/// Fork choice is longest chain, ties broken by the lexicographically
/// smallest tip hash. Block hash = sha256(parent | u64 height | coinbase |
/// tx digests...), where the coinbase digest binds (salt, chain, branch,
/// height) so sibling blocks never collide. Transactions sit in one pending
/// queue per chain and are all drained into whichever block is produced
/// next; transactions in blocks abandoned by a reorg are dropped.
class Chain {
 public:
  static constexpr BranchId kMainBranch = 0;

  Chain(ChainId id, ChainState genesis, std::uint64_t salt);

  ChainId id() const { return id_; }

  /// Queues a transaction; returns its chain-wide sequence number.
  TxSeq submit(Transaction tx);
  std::size_t pending_count() const { return pending_.size(); }
  TxSeq next_seq() const { return next_seq_; }

  Result<BlockRef> produce_block(BranchId branch);
  Result<BranchId> fork_at(Height height);

  /// Depth of the event's block below the canonical tip, or nullopt when the
  /// block is not on the canonical branch.
  std::optional<Height> confirmations(const ChainEvent& event) const;
  bool is_canonical(const BlockRef& ref) const;
  bool is_canonical(const Digest& hash, Height height) const;

  /// Canonical events above `cursor`, in (height, index) order.
  std::vector<ChainEvent> events_since(Height cursor) const;

  const BlockRef& canonical_tip() const { return tip_; }
  BranchId canonical_branch() const { return canonical_branch_; }
  const ChainState& canonical_state() const { return *block(tip_.hash)->state; }
  const Block* block(const Digest& hash) const;
  const Block& canonical_block(Height height) const;
  std::optional<BlockRef> branch_tip(BranchId branch) const;
  std::size_t branch_count() const { return branches_.size(); }

  /// Set by the last produce_block when it moved the tip off its old branch.
  const std::optional<ReorgInfo>& last_reorg() const { return last_reorg_; }

  /// Replays every canonical transaction from genesis and compares the
  /// result (state, receipts and events) with the stored tip.
  bool replay_matches() const;
  ChainState replay_canonical() const;

 private:
  Digest coinbase_digest(BranchId branch, Height height) const;
  void reselect_tip();

  ChainId id_;
  std::uint64_t salt_;
  std::shared_ptr<const ChainState> genesis_state_;
  std::map<Digest, Block> blocks_;
  std::map<BranchId, Digest> branches_;
  std::vector<Digest> canonical_;  // by height
  BlockRef tip_;
  BranchId canonical_branch_ = kMainBranch;
  std::vector<std::pair<TxSeq, Transaction>> pending_;
  TxSeq next_seq_ = 0;
  std::optional<ReorgInfo> last_reorg_;
};

}  // namespace susy
