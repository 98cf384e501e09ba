#include "csidh/scalar.hpp"

#include <stdexcept>

namespace csidh {

Scalar::Scalar(std::uint64_t value) {
  words_ = {static_cast<std::uint32_t>(value), static_cast<std::uint32_t>(value >> 32)};
  trim();
}

Scalar Scalar::from_words(std::span<const std::uint32_t> words) {
  Scalar s;
  s.words_.assign(words.begin(), words.end());
  s.trim();
  return s;
}

Scalar Scalar::from_hex(std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  Scalar s;
  for (char c : hex) {
    std::uint32_t digit = 0;
    if (c >= '0' && c <= '9') {
      digit = static_cast<std::uint32_t>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      digit = static_cast<std::uint32_t>(c - 'a' + 10);
    } else if (c >= 'A' && c <= 'F') {
      digit = static_cast<std::uint32_t>(c - 'A' + 10);
    } else {
      throw std::invalid_argument("invalid hex digit");
    }
    s.mul_small(16).add_small(digit);
  }
  return s;
}

Scalar& Scalar::mul_small(std::uint32_t factor) {
  std::uint64_t carry = 0;
  for (auto& w : words_) {
    const std::uint64_t t = static_cast<std::uint64_t>(w) * factor + carry;
    w = static_cast<std::uint32_t>(t);
    carry = t >> 32;
  }
  if (carry != 0) words_.push_back(static_cast<std::uint32_t>(carry));
  trim();
  return *this;
}

Scalar& Scalar::add_small(std::uint32_t value) {
  std::uint64_t carry = value;
  for (std::size_t i = 0; carry != 0; ++i) {
    if (i == words_.size()) words_.push_back(0);
    const std::uint64_t t = static_cast<std::uint64_t>(words_[i]) + carry;
    words_[i] = static_cast<std::uint32_t>(t);
    carry = t >> 32;
  }
  return *this;
}

Scalar& Scalar::sub_small(std::uint32_t value) {
  std::uint64_t borrow = value;
  for (std::size_t i = 0; borrow != 0; ++i) {
    if (i == words_.size()) throw std::underflow_error("Scalar::sub_small underflow");
    const std::uint64_t w = words_[i];
    words_[i] = static_cast<std::uint32_t>(w - borrow);
    borrow = w < borrow ? 1 : 0;
  }
  trim();
  return *this;
}

Scalar& Scalar::shr1() {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const std::uint32_t hi = i + 1 < words_.size() ? words_[i + 1] : 0;
    words_[i] = (words_[i] >> 1) | (hi << 31);
  }
  trim();
  return *this;
}

std::size_t Scalar::bit_length() const {
  if (words_.empty()) return 0;
  const std::uint32_t top = words_.back();
  return 32 * (words_.size() - 1) + (32 - static_cast<std::size_t>(__builtin_clz(top)));
}

bool Scalar::bit(std::size_t index) const {
  const std::size_t w = index / 32;
  if (w >= words_.size()) return false;
  return ((words_[w] >> (index % 32)) & 1U) != 0;
}

std::string Scalar::to_hex() const {
  if (words_.empty()) return "0";
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = words_.size(); i-- > 0;) {
    for (int shift = 28; shift >= 0; shift -= 4) out.push_back(kDigits[(words_[i] >> shift) & 0xF]);
  }
  const auto first = out.find_first_not_of('0');
  return out.substr(first);
}

void Scalar::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

}  // namespace csidh
