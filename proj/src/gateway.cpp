#include "susy/gateway.hpp"

#include <stdexcept>

#include "susy/hash.hpp"

namespace susy {

std::optional<std::string> validate_params(const ChainParams& p) {
  if (p.window < 1) return "window must be at least 1";
  if (p.finality_depth < 1) return "finality depth must be at least 1";
  if (p.timeout <= p.confirmation_depth + p.finality_depth) return "timeout must exceed confirmation + finality depth";
  return std::nullopt;
}

namespace {

void seed_balances(ChainState& st, const GatewayConfig& config) {
  for (const auto& b : config.balances) {
    if (b.chain != st.ledger.chain()) continue;
    if (b.token.starts_with("sw")) throw std::invalid_argument("genesis balance of a wrapped token: " + b.token);
    const TokenId token = TokenId::native(b.token, b.chain);
    if (!st.ledger.find_token(b.token)) {
      if (auto s = st.ledger.register_token(token); !s.ok()) {
        throw std::invalid_argument("bad genesis token " + b.token + ": " + std::string(to_string(s.error())));
      }
    }
    if (auto s = st.ledger.credit_genesis(token, AccountId{b.chain, account_address(b.account)}, b.amount); !s.ok()) {
      throw std::invalid_argument("bad genesis balance for " + b.account + ": " + std::string(to_string(s.error())));
    }
  }
}

}  // namespace

Gateway::Gateway(const GatewayConfig& config)
    : config_(config),
      controller_(FinalityPolicy{config.origin.finality_depth, config.origin.timeout},
                  FinalityPolicy{config.destination.finality_depth, config.destination.timeout}) {
  for (const auto* p : {&config.origin, &config.destination}) {
    if (auto err = validate_params(*p)) throw std::invalid_argument(*err);
  }
  if (config.behaviors.empty() || config.behaviors.size() > 0xffff) {
    throw std::invalid_argument("roster size out of range");
  }

  std::unique_ptr<SignatureScheme> scheme = make_signature_scheme(config.scheme);
  if (!scheme) throw std::invalid_argument("unknown signature scheme: " + config.scheme);
  std::vector<OracleIdentity> identities;
  std::vector<PublicKey> keys;
  for (std::size_t i = 0; i < config.behaviors.size(); ++i) {
    const auto idx = static_cast<std::uint16_t>(i);
    OracleIdentity o{idx, oracle_secret(config.seed, idx), {}, config.behaviors[i]};
    o.public_key = scheme->public_key(o.secret);
    keys.push_back(o.public_key);
    identities.push_back(std::move(o));
  }
  scheme_ = std::shared_ptr<const SignatureScheme>(std::move(scheme));
  roster_ = std::make_shared<const OracleRoster>(OracleRoster::make(std::move(keys), config.threshold));

  ChainState o = make_origin_state(kOriginChain, kDestinationChain,
                                   NebulaConfig{kOriginChain, config.origin.window, roster_, scheme_});
  ChainState d = make_destination_state(kDestinationChain, kOriginChain,
                                        NebulaConfig{kDestinationChain, config.destination.window, roster_, scheme_});
  seed_balances(o, config);
  seed_balances(d, config);
  origin_ = std::make_unique<Chain>(kOriginChain, std::move(o), config.seed);
  destination_ = std::make_unique<Chain>(kDestinationChain, std::move(d), config.seed);
  oracles_ = std::make_unique<OracleNet>(std::move(identities), scheme_, roster_->threshold);
}

RoundReport Gateway::relay(ChainId source) {
  const ChainId target = source == kOriginChain ? kDestinationChain : kOriginChain;
  return oracles_->relay_round(RelayEndpoint{&chain(source), params(source).confirmation_depth}, chain(target));
}

}  // namespace susy
