#pragma once

#include <variant>

#include "susy/events.hpp"
#include "susy/nebula.hpp"
#include "susy/ports.hpp"
#include "susy/token_ledger.hpp"
#include "susy/transaction.hpp"

namespace susy {

/// Everything a chain's contracts hold: the token ledger, the local port
/// (LU-PORT on the origin chain, IB-PORT on the destination chain) and the
/// NEBULA-SC instance. A value type; each block owns a snapshot.
struct ChainState {
  TokenLedger ledger;
  std::variant<LuPort, IbPort> port;
  Nebula nebula;

  const LuPort* lu_port() const { return std::get_if<LuPort>(&port); }
  const IbPort* ib_port() const { return std::get_if<IbPort>(&port); }
  const SwapRegistry& registry() const {
    return std::visit([](const auto& p) -> const SwapRegistry& { return p; }, port);
  }

  bool operator==(const ChainState&) const = default;
};

/// Origin-side state: LU-PORT paired with `destination`.
ChainState make_origin_state(ChainId origin, ChainId destination, NebulaConfig nebula);
/// Destination-side state: IB-PORT paired with `origin`.
ChainState make_destination_state(ChainId destination, ChainId origin, NebulaConfig nebula);

/// Runs one transaction against `state`. A failing transaction leaves the
/// state untouched and emits nothing.
Status apply_transaction(ChainState& state, const Transaction& tx, const ExecContext& ctx, EventSink& events);

}  // namespace susy
