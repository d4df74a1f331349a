#pragma once

// Seeded randomness with a fixed, platform-independent output sequence.
//
// std::mt19937_64 has a bit-exact sequence mandated by the standard, but the
// standard distributions do not, so bounded draws and shuffles are done here.

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace corpsize {

/// 64-bit FNV-1a over the bytes of `s`.
constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Per-domain seed: base seed XOR FNV-1a(domain id).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view domain_id) noexcept {
  return seed ^ fnv1a64(domain_id);
}

class StableRng {
 public:
  explicit StableRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound) by rejection; bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    // reject the top partial bucket so every residue is equally likely
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Fisher-Yates, drawing positions from the back.
  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace corpsize
