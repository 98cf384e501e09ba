#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace csidh {

// Non-negative public integer of arbitrary size, used for ladder scalars and
// fixed exponents. Not constant-time; never holds secret data.
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(std::uint64_t value);

  static Scalar from_words(std::span<const std::uint32_t> words);
  static Scalar from_hex(std::string_view hex);

  Scalar& mul_small(std::uint32_t factor);
  Scalar& add_small(std::uint32_t value);
  // Requires *this >= value.
  Scalar& sub_small(std::uint32_t value);
  Scalar& shr1();

  [[nodiscard]] std::size_t bit_length() const;
  [[nodiscard]] bool bit(std::size_t index) const;
  [[nodiscard]] bool is_zero() const { return words_.empty(); }
  [[nodiscard]] std::span<const std::uint32_t> words() const { return words_; }
  [[nodiscard]] std::string to_hex() const;

  friend bool operator==(const Scalar&, const Scalar&) = default;

 private:
  void trim();

  std::vector<std::uint32_t> words_;  // little-endian, no leading zero words
};

}  // namespace csidh
