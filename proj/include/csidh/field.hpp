#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace csidh {

// Widest supported modulus: 16 x 32-bit words (512 bits).
inline constexpr std::size_t kMaxWords = 16;

// A value mod p as little-endian 32-bit words. Words at index >= n_words of
// the owning parameter set are always zero.
struct FieldElement {
  std::array<std::uint32_t, kMaxWords> words{};

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

// Double-width integer, the product of two field elements.
struct WideProduct {
  std::array<std::uint32_t, 2 * kMaxWords> words{};

  friend bool operator==(const WideProduct&, const WideProduct&) = default;
};

// All-ones when bit is 1, zero otherwise.
constexpr std::uint32_t mask_from_bit(std::uint32_t bit) { return 0U - (bit & 1U); }

inline FieldElement cselect(std::uint32_t mask, const FieldElement& if_set, const FieldElement& if_clear) {
  FieldElement out;
  for (std::size_t i = 0; i < kMaxWords; ++i) {
    out.words[i] = (if_set.words[i] & mask) | (if_clear.words[i] & ~mask);
  }
  return out;
}

inline void cswap(std::uint32_t mask, FieldElement& a, FieldElement& b) {
  for (std::size_t i = 0; i < kMaxWords; ++i) {
    const std::uint32_t t = (a.words[i] ^ b.words[i]) & mask;
    a.words[i] ^= t;
    b.words[i] ^= t;
  }
}

// All-ones if the element is zero.
inline std::uint32_t zero_mask(const FieldElement& a) {
  std::uint32_t acc = 0;
  for (auto w : a.words) acc |= w;
  // acc == 0  ->  (acc | -acc) has top bit clear
  return mask_from_bit(~((acc | (0U - acc)) >> 31));
}

inline std::uint32_t equal_mask(const FieldElement& a, const FieldElement& b) {
  FieldElement d;
  for (std::size_t i = 0; i < kMaxWords; ++i) d.words[i] = a.words[i] ^ b.words[i];
  return zero_mask(d);
}

}  // namespace csidh
