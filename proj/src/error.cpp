#include "susy/error.hpp"

#include <array>

namespace susy {

namespace {
constexpr std::array<std::pair<Error, std::string_view>, 22> kNames{{
    {Error::UnknownBranch, "UnknownBranch"},
    {Error::HeightBeyondTip, "HeightBeyondTip"},
    {Error::ZeroAmount, "ZeroAmount"},
    {Error::InsufficientBalance, "InsufficientBalance"},
    {Error::InsufficientLocked, "InsufficientLocked"},
    {Error::WrongChain, "WrongChain"},
    {Error::NotAuthorized, "NotAuthorized"},
    {Error::NotWrappedToken, "NotWrappedToken"},
    {Error::UnknownToken, "UnknownToken"},
    {Error::AmountOverflow, "AmountOverflow"},
    {Error::WrongChainReceiver, "WrongChainReceiver"},
    {Error::DuplicateExecution, "DuplicateExecution"},
    {Error::UnknownSwap, "UnknownSwap"},
    {Error::InsufficientSignatures, "InsufficientSignatures"},
    {Error::InvalidSignature, "InvalidSignature"},
    {Error::StaleHeight, "StaleHeight"},
    {Error::FutureHeight, "FutureHeight"},
    {Error::DuplicatePulse, "DuplicatePulse"},
    {Error::UnknownPulse, "UnknownPulse"},
    {Error::HashMismatch, "HashMismatch"},
    {Error::AlreadyConsumed, "AlreadyConsumed"},
    {Error::MalformedPayload, "MalformedPayload"},
}};
}  // namespace

std::string_view to_string(Error e) {
  for (const auto& [err, name] : kNames) {
    if (err == e) return name;
  }
  return "UnknownError";
}

std::optional<Error> error_from_string(std::string_view name) {
  for (const auto& [err, n] : kNames) {
    if (n == name) return err;
  }
  return std::nullopt;
}

}  // namespace susy
