#pragma once

#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "forge/errors.hpp"

namespace forge {

using Sha256Digest = std::array<std::uint8_t, 32>;

inline Sha256Digest sha256(std::span<const std::uint8_t> data) {
  Sha256Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size()) {
    throw Error("sha256 failed");
  }
  return out;
}

inline Sha256Digest sha256(std::string_view text) {
  return sha256(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

inline std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0xF]);
  }
  return s;
}

inline std::string sha256_hex(std::span<const std::uint8_t> data) {
  auto d = sha256(data);
  return to_hex(d);
}

inline std::string sha256_hex(std::string_view text) {
  auto d = sha256(text);
  return to_hex(d);
}

/// Per-problem seed: the first 8 bytes (big-endian) of
/// SHA-256("forge/v1|<master>|<split>|<index>").
/// Any single problem can be regenerated from these three values alone.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view split,
                                 std::uint64_t index) {
  std::string key = "forge/v1|" + std::to_string(master) + "|" + std::string(split) + "|" +
                    std::to_string(index);
  auto d = sha256(key);
  std::uint64_t s = 0;
  for (int i = 0; i < 8; ++i) s = (s << 8) | d[i];
  return s;
}

/// Sub-stream seed for a named purpose inside one problem (e.g. "replace-0").
inline std::uint64_t derive_seed(std::uint64_t parent, std::string_view purpose) {
  std::string key = "forge/v1/sub|" + std::to_string(parent) + "|" + std::string(purpose);
  auto d = sha256(key);
  std::uint64_t s = 0;
  for (int i = 0; i < 8; ++i) s = (s << 8) | d[i];
  return s;
}

}  // namespace forge
