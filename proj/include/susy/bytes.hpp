#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace susy {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

std::string to_hex(ByteView bytes);
std::optional<Bytes> from_hex(std::string_view hex);

/// Fixed-width opaque byte string (digests, addresses).
template <std::size_t N>
struct FixedBytes {
  static constexpr std::size_t kSize = N;

  std::array<std::uint8_t, N> data{};

  ByteView view() const { return {data.data(), data.size()}; }
  bool is_zero() const {
    for (auto b : data) {
      if (b != 0) return false;
    }
    return true;
  }
  std::string hex() const { return to_hex(view()); }

  static std::optional<FixedBytes> from_hex(std::string_view hex) {
    auto raw = susy::from_hex(hex);
    if (!raw || raw->size() != N) return std::nullopt;
    FixedBytes out;
    std::copy(raw->begin(), raw->end(), out.data.begin());
    return out;
  }

  /// First N bytes of a longer buffer.
  static FixedBytes truncate(ByteView src) {
    if (src.size() < N) throw std::invalid_argument("FixedBytes::truncate: source too short");
    FixedBytes out;
    std::copy_n(src.begin(), N, out.data.begin());
    return out;
  }

  auto operator<=>(const FixedBytes&) const = default;
};

using Digest = FixedBytes<32>;
using Address = FixedBytes<20>;

struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Big-endian append-only writer.
class ByteWriter {
 public:
  ByteWriter& u8(std::uint8_t v) {
    buf_.push_back(v);
    return *this;
  }
  ByteWriter& u16(std::uint16_t v) { return be(v, 2); }
  ByteWriter& u32(std::uint32_t v) { return be(v, 4); }
  ByteWriter& u64(std::uint64_t v) { return be(v, 8); }
  ByteWriter& raw(ByteView v) {
    buf_.insert(buf_.end(), v.begin(), v.end());
    return *this;
  }
  ByteWriter& raw(std::string_view s) {
    buf_.insert(buf_.end(), s.begin(), s.end());
    return *this;
  }
  template <std::size_t N>
  ByteWriter& raw(const FixedBytes<N>& v) {
    return raw(v.view());
  }

  const Bytes& bytes() const& { return buf_; }
  Bytes bytes() && { return std::move(buf_); }

 private:
  ByteWriter& be(std::uint64_t v, int width) {
    for (int i = width - 1; i >= 0; --i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    return *this;
  }

  Bytes buf_;
};

/// Big-endian reader; throws DecodeError on underrun.
class ByteReader {
 public:
  explicit ByteReader(ByteView in) : in_(in) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(be(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(be(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(be(4)); }
  std::uint64_t u64() { return be(8); }

  ByteView take(std::size_t n) {
    need(n);
    auto out = in_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  template <std::size_t N>
  FixedBytes<N> fixed() {
    FixedBytes<N> out;
    auto src = take(N);
    std::copy(src.begin(), src.end(), out.data.begin());
    return out;
  }

  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw DecodeError("unexpected end of input");
  }
  std::uint64_t be(std::size_t width) {
    need(width);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < width; ++i) v = (v << 8) | in_[pos_ + i];
    pos_ += width;
    return v;
  }

  ByteView in_;
  std::size_t pos_ = 0;
};

}  // namespace susy
