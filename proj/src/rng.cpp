#include "csidh/rng.hpp"

#include <sodium.h>

#include <algorithm>
#include <bit>
#include <cstring>

#include "csidh/errors.hpp"
#include "csidh/fp.hpp"

namespace csidh {
namespace {

void ensure_sodium() {
  static const int status = sodium_init();
  if (status < 0) throw RngFailure("libsodium initialization failed");
}

}  // namespace

std::uint32_t RandomSource::next_u32() {
  std::uint8_t b[4];
  fill(b);
  return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
         static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
}

std::uint64_t RandomSource::next_u64() {
  const std::uint64_t lo = next_u32();
  return lo | static_cast<std::uint64_t>(next_u32()) << 32;
}

bool RandomSource::next_bit() {
  std::uint8_t b;
  fill({&b, 1});
  return (b & 1U) != 0;
}

std::uint32_t RandomSource::uniform(std::uint32_t bound) {
  if (bound <= 1) return 0;
  const std::uint32_t mask = ~0U >> std::countl_zero(bound - 1);
  for (;;) {
    const std::uint32_t v = next_u32() & mask;
    if (v < bound) return v;
  }
}

ChaChaRng::ChaChaRng(const std::array<std::uint8_t, 32>& key) : key_(key), offset_(buffer_.size()) {}

ChaChaRng ChaChaRng::from_seed(std::span<const std::uint8_t> seed) {
  ensure_sodium();
  std::array<std::uint8_t, 32> key{};
  crypto_generichash(key.data(), key.size(), seed.data(), seed.size(), nullptr, 0);
  return ChaChaRng(key);
}

ChaChaRng ChaChaRng::from_entropy() {
  ensure_sodium();
  std::array<std::uint8_t, 32> key{};
  randombytes_buf(key.data(), key.size());
  return ChaChaRng(key);
}

void ChaChaRng::refill() {
  static_assert(std::tuple_size_v<decltype(buffer_)> % 64 == 0);
  constexpr std::uint32_t kBlocks = std::tuple_size_v<decltype(buffer_)> / 64;
  if (block_counter_ > UINT32_MAX - kBlocks) throw RngExhausted();
  static const std::array<std::uint8_t, crypto_stream_chacha20_ietf_NONCEBYTES> nonce{};
  std::fill(buffer_.begin(), buffer_.end(), 0);
  if (crypto_stream_chacha20_ietf_xor_ic(buffer_.data(), buffer_.data(), buffer_.size(), nonce.data(),
                                         block_counter_, key_.data()) != 0) {
    throw RngFailure("chacha20 keystream generation failed");
  }
  block_counter_ += kBlocks;
  offset_ = 0;
}

void ChaChaRng::fill(std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    if (offset_ == buffer_.size()) refill();
    const std::size_t take = std::min(out.size() - done, buffer_.size() - offset_);
    std::memcpy(out.data() + done, buffer_.data() + offset_, take);
    offset_ += take;
    done += take;
  }
}

void FixedBytes::fill(std::span<std::uint8_t> out) {
  if (out.size() > remaining()) {
    pos_ = bytes_.size();
    throw RngExhausted();
  }
  std::memcpy(out.data(), bytes_.data() + pos_, out.size());
  pos_ += out.size();
}

FieldElement random_field_element(const CsidhParams& params, RandomSource& rng) {
  const std::size_t n = params.n_words;
  const std::uint32_t top = params.p.words[n - 1];
  const std::uint32_t top_mask = ~0U >> std::countl_zero(top);
  for (;;) {
    FieldElement x;
    rng.fill(std::span<std::uint8_t>(reinterpret_cast<std::uint8_t*>(x.words.data()), n * 4));
    x.words[n - 1] &= top_mask;
    if (fp::is_canonical(x, params)) return x;
  }
}

}  // namespace csidh
