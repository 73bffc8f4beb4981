#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace mrb {

/// Fixed-width bitset of W 64-bit words. Used as the subset key of the
/// search-based solvers; W is chosen at the call site from the instance size.
template <std::size_t W>
struct WideMask {
  static constexpr std::size_t kWords = W;
  static constexpr int kBits = static_cast<int>(64 * W);

  std::array<std::uint64_t, W> words{};

  void set(int i) { words[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { words[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (words[i >> 6] >> (i & 63)) & 1U; }

  int count() const {
    int c = 0;
    for (auto w : words) c += std::popcount(w);
    return c;
  }
  bool none() const {
    for (auto w : words)
      if (w) return false;
    return true;
  }
  bool any() const { return !none(); }

  // True iff every bit of *this is also set in other.
  bool subset_of(const WideMask& other) const {
    for (std::size_t i = 0; i < W; ++i)
      if (words[i] & ~other.words[i]) return false;
    return true;
  }
  bool intersects(const WideMask& other) const {
    for (std::size_t i = 0; i < W; ++i)
      if (words[i] & other.words[i]) return true;
    return false;
  }
  // |*this \ other|
  int count_minus(const WideMask& other) const {
    int c = 0;
    for (std::size_t i = 0; i < W; ++i) c += std::popcount(words[i] & ~other.words[i]);
    return c;
  }

  WideMask& operator|=(const WideMask& o) {
    for (std::size_t i = 0; i < W; ++i) words[i] |= o.words[i];
    return *this;
  }
  WideMask& operator&=(const WideMask& o) {
    for (std::size_t i = 0; i < W; ++i) words[i] &= o.words[i];
    return *this;
  }
  friend WideMask operator|(WideMask a, const WideMask& b) { return a |= b; }
  friend WideMask operator&(WideMask a, const WideMask& b) { return a &= b; }
  friend bool operator==(const WideMask&, const WideMask&) = default;

  // Calls f(i) for every set bit in ascending order.
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < W; ++wi) {
      std::uint64_t w = words[wi];
      while (w) {
        f(static_cast<int>(wi * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  static WideMask first_n(int n) {
    WideMask m;
    for (int i = 0; i < n; ++i) m.set(i);
    return m;
  }
};

struct WideMaskHash {
  template <std::size_t W>
  std::size_t operator()(const WideMask<W>& m) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : m.words) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xbf58476d1ce4e5b9ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

/// Picks the narrowest mask width for n bits and invokes f with a
/// std::integral_constant carrying the word count. Returns false if n is
/// larger than the widest supported mask.
template <typename F>
bool dispatch_mask_width(int n, F&& f) {
  if (n <= 64) {
    f(std::integral_constant<std::size_t, 1>{});
  } else if (n <= 128) {
    f(std::integral_constant<std::size_t, 2>{});
  } else if (n <= 256) {
    f(std::integral_constant<std::size_t, 4>{});
  } else if (n <= 512) {
    f(std::integral_constant<std::size_t, 8>{});
  } else {
    return false;
  }
  return true;
}

inline constexpr int kMaxMaskBits = 512;

}  // namespace mrb
