#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <variant>

namespace susy {

/// Every rejection a contract or chain operation can produce. Failed
/// transactions carry one of these as their failure marker.
enum class Error : std::uint8_t {
  // chain_sim
  UnknownBranch,
  HeightBeyondTip,
  // token_ledger
  ZeroAmount,
  InsufficientBalance,
  InsufficientLocked,
  WrongChain,
  NotAuthorized,
  NotWrappedToken,
  UnknownToken,
  AmountOverflow,
  // ports
  WrongChainReceiver,
  DuplicateExecution,
  UnknownSwap,
  // nebula
  InsufficientSignatures,
  InvalidSignature,
  StaleHeight,
  FutureHeight,
  DuplicatePulse,
  UnknownPulse,
  HashMismatch,
  AlreadyConsumed,
  MalformedPayload,
};

std::string_view to_string(Error e);
std::optional<Error> error_from_string(std::string_view name);

class [[nodiscard]] Status {
 public:
  Status() = default;
  Status(Error e) : error_(e) {}  // NOLINT(google-explicit-constructor)

  bool ok() const { return !error_; }
  explicit operator bool() const { return ok(); }
  Error error() const {
    if (!error_) throw std::logic_error("Status::error() on ok status");
    return *error_;
  }
  const std::optional<Error>& maybe_error() const { return error_; }

  bool operator==(const Status&) const = default;

 private:
  std::optional<Error> error_;
};

template <typename T>
class [[nodiscard]] Result {
 public:
  Result(T value) : v_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Result(Error e) : v_(e) {}                 // NOLINT(google-explicit-constructor)

  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    if (!ok()) throw std::logic_error("Result::value() on error");
    return std::get<T>(v_);
  }
  T&& value() && {
    if (!ok()) throw std::logic_error("Result::value() on error");
    return std::get<T>(std::move(v_));
  }
  const T& operator*() const& { return value(); }
  const T* operator->() const { return &value(); }

  Error error() const {
    if (ok()) throw std::logic_error("Result::error() on value");
    return std::get<Error>(v_);
  }
  Status status() const { return ok() ? Status{} : Status{error()}; }

 private:
  std::variant<T, Error> v_;
};

}  // namespace susy
