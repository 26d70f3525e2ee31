//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_CORE_HASH_HPP
#define ONCOGAT_CORE_HASH_HPP

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>

namespace onco {

// 64-bit FNV-1a over little-endian words. Stable across platforms; used for
// fingerprint identifiers and digests, never for security.
class StableHash {
public:
  static constexpr std::uint64_t kOffset = 0xcbf29ce484222325ULL;
  static constexpr std::uint64_t kPrime = 0x100000001b3ULL;

  StableHash &add(std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
      state_ ^= (word >> (8 * i)) & 0xffU;
      state_ *= kPrime;
    }
    return *this;
  }

  StableHash &add(std::int64_t word) {
    return add(static_cast<std::uint64_t>(word));
  }

  StableHash &add(int word) {
    return add(static_cast<std::uint64_t>(static_cast<std::int64_t>(word)));
  }

  StableHash &add(std::string_view bytes) {
    for (unsigned char c: bytes) {
      state_ ^= c;
      state_ *= kPrime;
    }
    return *this;
  }

  std::uint64_t value() const { return state_; }

private:
  std::uint64_t state_ = kOffset;
};

inline std::uint64_t stable_hash(std::initializer_list<std::uint64_t> words) {
  StableHash h;
  for (auto w: words)
    h.add(w);
  return h.value();
}

inline std::uint64_t stable_hash(std::string_view bytes) {
  return StableHash().add(bytes).value();
}

} // namespace onco

#endif // ONCOGAT_CORE_HASH_HPP
