#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "susy/bytes.hpp"

namespace susy::test {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline const nlohmann::json& golden() {
  static const nlohmann::json doc = nlohmann::json::parse(read_file(std::string(SUSY_GOLDEN_DIR) + "/vectors.json"));
  return doc;
}

template <std::size_t N>
FixedBytes<N> fixed(const std::string& hex) {
  auto v = FixedBytes<N>::from_hex(hex);
  if (!v) throw std::runtime_error("bad hex in test vector: " + hex);
  return *v;
}

inline Bytes bytes_of(const std::string& hex) {
  auto v = from_hex(hex);
  if (!v) throw std::runtime_error("bad hex in test vector: " + hex);
  return *v;
}

}  // namespace susy::test
