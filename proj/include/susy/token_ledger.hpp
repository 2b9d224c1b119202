#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "susy/bytes.hpp"
#include "susy/error.hpp"
#include "susy/types.hpp"

namespace susy {

/// Per-token accounting totals, used by conservation checks and traces.
struct TokenTotals {
  TokenId token;
  Amount total_supply = 0;
  Amount balances = 0;  // sum over holders
  Amount locked = 0;

  bool conserved() const { return total_supply == balances + locked; }
};

/// Fungible-token accounting for one chain.
///
/// Amounts are unsigned minimal units. Zero entries are never stored, so two
/// ledgers holding the same amounts compare (and serialize) identically no
/// matter which operations produced them. Lock/unlock may only be invoked by
/// the chain's LU-PORT address and mint/burn only by its IB-PORT address.
class TokenLedger {
 public:
  TokenLedger(ChainId chain, Address lu_port, Address ib_port);

  ChainId chain() const { return chain_; }

  Status register_token(const TokenId& token);
  const TokenId* find_token(std::string_view symbol) const;
  const std::map<std::string, TokenId, std::less<>>& tokens() const { return tokens_; }

  /// Initial allocation: creates supply out of nothing. Only the scenario
  /// loader calls this, before the first block.
  Status credit_genesis(const TokenId& token, const AccountId& to, Amount amount);

  Status transfer(const TokenId& token, const AccountId& from, const AccountId& to, Amount amount);

  Status lock(const Address& caller, const TokenId& token, const AccountId& from, Amount amount);
  Status unlock(const Address& caller, const TokenId& token, const AccountId& to, Amount amount);

  Status mint(const Address& caller, const TokenId& token, const AccountId& to, Amount amount);
  Status burn(const Address& caller, const TokenId& token, const AccountId& from, Amount amount);

  Amount balance(const TokenId& token, const AccountId& account) const;
  Amount locked(const TokenId& token) const;
  Amount total_supply(const TokenId& token) const;

  std::vector<TokenTotals> totals() const;
  bool conserved() const;

  /// Canonical bytes of balances, locked pools and supplies (token
  /// registrations excluded).
  Bytes serialize_amounts() const;

  bool operator==(const TokenLedger&) const = default;

 private:
  using BalanceKey = std::pair<std::string, Address>;

  Status check_token(const TokenId& token) const;
  Status check_account(const AccountId& account) const;

  static Amount get(const std::map<std::string, Amount, std::less<>>& m, const std::string& key);
  static void put(std::map<std::string, Amount, std::less<>>& m, const std::string& key, Amount v);
  Amount get_balance(const std::string& symbol, const Address& addr) const;
  void put_balance(const std::string& symbol, const Address& addr, Amount v);

  ChainId chain_;
  Address lu_port_;
  Address ib_port_;
  std::map<std::string, TokenId, std::less<>> tokens_;
  std::map<BalanceKey, Amount> balances_;
  std::map<std::string, Amount, std::less<>> locked_;
  std::map<std::string, Amount, std::less<>> supply_;
};

}  // namespace susy
