#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace emostrat {

// splitmix64 generator. The output stream for a given seed is part of the
// partition file contract, so this must not change.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform draw in [0, bound) by rejection: raw values below
  // (2^64 - bound) mod bound are discarded so the remaining range is an
  // exact multiple of bound. bound must be positive.
  constexpr std::uint64_t bounded(std::uint64_t bound) noexcept {
    const std::uint64_t reject_below = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= reject_below) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
};

// Fisher-Yates from the back: for i = n-1 .. 1, swap items[i] with
// items[bounded(i + 1)].
template <typename T>
void shuffle(std::span<T> items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.bounded(i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace emostrat
