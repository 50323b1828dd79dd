#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace jcfinder {

inline constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

constexpr std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = kFnvOffset) {
  for (char c : bytes) {
    h ^= static_cast<std::uint8_t>(c);
    h *= kFnvPrime;
  }
  return h;
}

// Continues an FNV-1a-64 state over the 8-byte little-endian encoding of v.
constexpr std::uint64_t fnv1a64_u64le(std::uint64_t v, std::uint64_t h) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xffU;
    h *= kFnvPrime;
  }
  return h;
}

// 64-bit class/function fingerprint.
struct FeatureHash {
  std::uint64_t value = 0;

  std::string hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) out[static_cast<size_t>(15 - i)] = kDigits[(value >> (4 * i)) & 0xf];
    return out;
  }

  static std::optional<FeatureHash> from_hex(std::string_view text) {
    if (text.size() != 16) return std::nullopt;
    std::uint64_t v = 0;
    for (char c : text) {
      v <<= 4;
      if (c >= '0' && c <= '9') v |= static_cast<std::uint64_t>(c - '0');
      else if (c >= 'a' && c <= 'f') v |= static_cast<std::uint64_t>(c - 'a' + 10);
      else return std::nullopt;
    }
    return FeatureHash{v};
  }

  friend constexpr auto operator<=>(const FeatureHash&, const FeatureHash&) = default;
};

}  // namespace jcfinder

template <>
struct std::hash<jcfinder::FeatureHash> {
  size_t operator()(const jcfinder::FeatureHash& h) const noexcept { return static_cast<size_t>(h.value); }
};
