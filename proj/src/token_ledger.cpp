#include "susy/token_ledger.hpp"

#include <limits>

namespace susy {

TokenLedger::TokenLedger(ChainId chain, Address lu_port, Address ib_port)
    : chain_(chain), lu_port_(lu_port), ib_port_(ib_port) {}

Status TokenLedger::register_token(const TokenId& token) {
  if (token.chain != chain_) return Error::WrongChain;
  if (token.symbol.empty() || token.symbol.size() > 255) return Error::UnknownToken;
  auto it = tokens_.find(token.symbol);
  if (it != tokens_.end()) {
    // Re-registering the identical token is a no-op.
    return it->second == token ? Status{} : Status{Error::UnknownToken};
  }
  tokens_.emplace(token.symbol, token);
  return {};
}

const TokenId* TokenLedger::find_token(std::string_view symbol) const {
  auto it = tokens_.find(symbol);
  return it == tokens_.end() ? nullptr : &it->second;
}

Status TokenLedger::check_token(const TokenId& token) const {
  if (token.chain != chain_) return Error::WrongChain;
  auto it = tokens_.find(token.symbol);
  if (it == tokens_.end() || it->second != token) return Error::UnknownToken;
  return {};
}

Status TokenLedger::check_account(const AccountId& account) const {
  if (account.chain != chain_) return Error::WrongChain;
  return {};
}

Amount TokenLedger::get(const std::map<std::string, Amount, std::less<>>& m, const std::string& key) {
  auto it = m.find(key);
  return it == m.end() ? 0 : it->second;
}

void TokenLedger::put(std::map<std::string, Amount, std::less<>>& m, const std::string& key, Amount v) {
  if (v == 0) {
    m.erase(key);
  } else {
    m[key] = v;
  }
}

Amount TokenLedger::get_balance(const std::string& symbol, const Address& addr) const {
  auto it = balances_.find({symbol, addr});
  return it == balances_.end() ? 0 : it->second;
}

void TokenLedger::put_balance(const std::string& symbol, const Address& addr, Amount v) {
  if (v == 0) {
    balances_.erase({symbol, addr});
  } else {
    balances_[{symbol, addr}] = v;
  }
}

Status TokenLedger::credit_genesis(const TokenId& token, const AccountId& to, Amount amount) {
  if (amount == 0) return Error::ZeroAmount;
  if (auto s = check_account(to); !s) return s;
  if (!find_token(token.symbol)) {
    if (auto s = register_token(token); !s) return s;
  }
  if (auto s = check_token(token); !s) return s;
  const Amount supply = get(supply_, token.symbol);
  if (supply > std::numeric_limits<Amount>::max() - amount) return Error::AmountOverflow;
  put(supply_, token.symbol, supply + amount);
  put_balance(token.symbol, to.address, get_balance(token.symbol, to.address) + amount);
  return {};
}

Status TokenLedger::transfer(const TokenId& token, const AccountId& from, const AccountId& to, Amount amount) {
  if (amount == 0) return Error::ZeroAmount;
  if (auto s = check_account(from); !s) return s;
  if (auto s = check_account(to); !s) return s;
  if (auto s = check_token(token); !s) return s;
  const Amount have = get_balance(token.symbol, from.address);
  if (have < amount) return Error::InsufficientBalance;
  put_balance(token.symbol, from.address, have - amount);
  put_balance(token.symbol, to.address, get_balance(token.symbol, to.address) + amount);
  return {};
}

Status TokenLedger::lock(const Address& caller, const TokenId& token, const AccountId& from, Amount amount) {
  if (caller != lu_port_) return Error::NotAuthorized;
  if (amount == 0) return Error::ZeroAmount;
  if (auto s = check_account(from); !s) return s;
  if (auto s = check_token(token); !s) return s;
  const Amount have = get_balance(token.symbol, from.address);
  if (have < amount) return Error::InsufficientBalance;
  put_balance(token.symbol, from.address, have - amount);
  put(locked_, token.symbol, get(locked_, token.symbol) + amount);
  return {};
}

Status TokenLedger::unlock(const Address& caller, const TokenId& token, const AccountId& to, Amount amount) {
  if (caller != lu_port_) return Error::NotAuthorized;
  if (amount == 0) return Error::ZeroAmount;
  if (auto s = check_account(to); !s) return s;
  if (auto s = check_token(token); !s) return s;
  const Amount pool = get(locked_, token.symbol);
  if (pool < amount) return Error::InsufficientLocked;
  put(locked_, token.symbol, pool - amount);
  put_balance(token.symbol, to.address, get_balance(token.symbol, to.address) + amount);
  return {};
}

Status TokenLedger::mint(const Address& caller, const TokenId& token, const AccountId& to, Amount amount) {
  if (caller != ib_port_) return Error::NotAuthorized;
  if (amount == 0) return Error::ZeroAmount;
  if (!token.is_wrapped()) return Error::NotWrappedToken;
  if (auto s = check_account(to); !s) return s;
  if (auto s = check_token(token); !s) return s;
  const Amount supply = get(supply_, token.symbol);
  if (supply > std::numeric_limits<Amount>::max() - amount) return Error::AmountOverflow;
  put(supply_, token.symbol, supply + amount);
  put_balance(token.symbol, to.address, get_balance(token.symbol, to.address) + amount);
  return {};
}

Status TokenLedger::burn(const Address& caller, const TokenId& token, const AccountId& from, Amount amount) {
  if (caller != ib_port_) return Error::NotAuthorized;
  if (amount == 0) return Error::ZeroAmount;
  if (!token.is_wrapped()) return Error::NotWrappedToken;
  if (auto s = check_account(from); !s) return s;
  if (auto s = check_token(token); !s) return s;
  const Amount have = get_balance(token.symbol, from.address);
  if (have < amount) return Error::InsufficientBalance;
  put_balance(token.symbol, from.address, have - amount);
  put(supply_, token.symbol, get(supply_, token.symbol) - amount);
  return {};
}

Amount TokenLedger::balance(const TokenId& token, const AccountId& account) const {
  if (account.chain != chain_ || token.chain != chain_) return 0;
  return get_balance(token.symbol, account.address);
}

Amount TokenLedger::locked(const TokenId& token) const {
  return token.chain == chain_ ? get(locked_, token.symbol) : 0;
}

Amount TokenLedger::total_supply(const TokenId& token) const {
  return token.chain == chain_ ? get(supply_, token.symbol) : 0;
}

std::vector<TokenTotals> TokenLedger::totals() const {
  std::vector<TokenTotals> out;
  out.reserve(tokens_.size());
  for (const auto& [symbol, token] : tokens_) {
    TokenTotals t{token, get(supply_, symbol), 0, get(locked_, symbol)};
    for (auto it = balances_.lower_bound({symbol, Address{}}); it != balances_.end() && it->first.first == symbol;
         ++it) {
      t.balances += it->second;
    }
    out.push_back(std::move(t));
  }
  return out;
}

bool TokenLedger::conserved() const {
  for (const auto& t : totals()) {
    if (!t.conserved()) return false;
  }
  return true;
}

Bytes TokenLedger::serialize_amounts() const {
  ByteWriter w;
  w.u8(chain_.value);
  w.u32(static_cast<std::uint32_t>(balances_.size()));
  for (const auto& [key, amount] : balances_) {
    w.u8(static_cast<std::uint8_t>(key.first.size())).raw(key.first).raw(key.second).u64(amount);
  }
  w.u32(static_cast<std::uint32_t>(locked_.size()));
  for (const auto& [symbol, amount] : locked_) {
    w.u8(static_cast<std::uint8_t>(symbol.size())).raw(symbol).u64(amount);
  }
  w.u32(static_cast<std::uint32_t>(supply_.size()));
  for (const auto& [symbol, amount] : supply_) {
    w.u8(static_cast<std::uint8_t>(symbol.size())).raw(symbol).u64(amount);
  }
  return std::move(w).bytes();
}

}  // namespace susy
