#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "csidh/field.hpp"
#include "csidh/params.hpp"

namespace csidh {

// Byte source for all randomness consumed by the library. Implementations
// throw RngFailure when no bytes can be produced.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  bool next_bit();
  // Uniform in [0, bound); bound > 0.
  std::uint32_t uniform(std::uint32_t bound);
};

// ChaCha20 keystream. A seeded instance is fully deterministic; the key is
// BLAKE2b-256 of the seed bytes.
class ChaChaRng final : public RandomSource {
 public:
  static ChaChaRng from_seed(std::span<const std::uint8_t> seed);
  static ChaChaRng from_entropy();

  void fill(std::span<std::uint8_t> out) override;

 private:
  explicit ChaChaRng(const std::array<std::uint8_t, 32>& key);
  void refill();

  std::array<std::uint8_t, 32> key_{};
  std::uint32_t block_counter_ = 0;
  std::array<std::uint8_t, 4096> buffer_{};
  std::size_t offset_ = 0;
};

// Finite byte string; throws RngExhausted once consumed.
class FixedBytes final : public RandomSource {
 public:
  explicit FixedBytes(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}
  void fill(std::span<std::uint8_t> out) override;
  [[nodiscard]] std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

// Uniform element of [0, p) in the standard domain, by rejection on the
// masked top word. The number of draws depends only on the random stream.
FieldElement random_field_element(const CsidhParams& params, RandomSource& rng);

}  // namespace csidh
