#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace assgp {

// 64-bit FNV-1a, used for stable content hashes of systems, words and
// manifests. Stable across platforms and runs.
class Fnv64 {
public:
  Fnv64& bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      state_ ^= p[i];
      state_ *= 0x100000001b3ULL;
    }
    return *this;
  }
  Fnv64& u64(std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    return bytes(b, 8);
  }
  Fnv64& i64(std::int64_t v) { return u64(static_cast<std::uint64_t>(v)); }
  Fnv64& u32(std::uint32_t v) { return u64(v); }
  Fnv64& i32(std::int32_t v) { return i64(v); }
  Fnv64& str(std::string_view s) {
    u64(s.size());
    return bytes(s.data(), s.size());
  }
  template <typename T>
  Fnv64& span(std::span<const T> xs) {
    u64(xs.size());
    for (const T& x : xs) i64(static_cast<std::int64_t>(x));
    return *this;
  }
  std::uint64_t value() const { return state_; }

private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string hashHex(std::uint64_t h);

}  // namespace assgp
