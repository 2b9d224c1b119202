#include "susy/events.hpp"

#include <array>

namespace susy {

std::string_view to_string(EventKind kind) {
  static constexpr std::array<std::string_view, 6> kNames{"LockRegistered", "BurnRegistered",  "MintExecuted",
                                                          "UnlockExecuted", "PulseAccepted", "SendDataConsumed"};
  return kNames[static_cast<std::size_t>(kind)];
}

std::optional<EventKind> event_kind_from_string(std::string_view name) {
  for (int i = 0; i < 6; ++i) {
    auto k = static_cast<EventKind>(i);
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

}  // namespace susy
