#pragma once

#include <cstdint>
#include <optional>
#include <span>

// Data-parallel word kernels behind the datapath model. Each kernel has a
// portable scalar reference and, on x86-64, an AVX2 variant chosen at run
// time. All variants produce identical outputs.
namespace csidh::kernels {

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa);
bool isa_available(Isa isa);

// Best available ISA, unless an override is installed.
Isa active_isa();
// Pins dispatch to one ISA (must be available); nullopt restores detection.
void set_isa_override(std::optional<Isa> isa);

// Multiplier phase 1: lo[j] / hi[j] are the low / high halves of chunk * b[j].
void row_products(Isa isa, std::uint32_t chunk, std::span<const std::uint32_t> b, std::span<std::uint32_t> lo,
                  std::span<std::uint32_t> hi);

// Carry-select stage 1: per word, the sum (and carry-out) for carry-in 0 and 1.
void dual_sums(Isa isa, std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
               std::span<std::uint32_t> sum0, std::span<std::uint32_t> carry0, std::span<std::uint32_t> sum1,
               std::span<std::uint32_t> carry1);

// Borrow-select stage 1: per word, the difference (and borrow-out) for borrow-in 0 and 1.
void dual_diffs(Isa isa, std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                std::span<std::uint32_t> diff0, std::span<std::uint32_t> borrow0, std::span<std::uint32_t> diff1,
                std::span<std::uint32_t> borrow1);

inline void row_products(std::uint32_t chunk, std::span<const std::uint32_t> b, std::span<std::uint32_t> lo,
                         std::span<std::uint32_t> hi) {
  row_products(active_isa(), chunk, b, lo, hi);
}

inline void dual_sums(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                      std::span<std::uint32_t> sum0, std::span<std::uint32_t> carry0,
                      std::span<std::uint32_t> sum1, std::span<std::uint32_t> carry1) {
  dual_sums(active_isa(), a, b, sum0, carry0, sum1, carry1);
}

inline void dual_diffs(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                       std::span<std::uint32_t> diff0, std::span<std::uint32_t> borrow0,
                       std::span<std::uint32_t> diff1, std::span<std::uint32_t> borrow1) {
  dual_diffs(active_isa(), a, b, diff0, borrow0, diff1, borrow1);
}

namespace detail {
// Per-ISA entry points. Lengths are validated by the dispatchers.
void row_products_scalar(std::uint32_t chunk, const std::uint32_t* b, std::uint32_t* lo, std::uint32_t* hi,
                         std::size_t n);
void dual_sums_scalar(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* s0, std::uint32_t* c0,
                      std::uint32_t* s1, std::uint32_t* c1, std::size_t n);
void dual_diffs_scalar(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* d0, std::uint32_t* b0,
                       std::uint32_t* d1, std::uint32_t* b1, std::size_t n);
#if defined(__x86_64__)
void row_products_avx2(std::uint32_t chunk, const std::uint32_t* b, std::uint32_t* lo, std::uint32_t* hi,
                       std::size_t n);
void dual_sums_avx2(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* s0, std::uint32_t* c0,
                    std::uint32_t* s1, std::uint32_t* c1, std::size_t n);
void dual_diffs_avx2(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* d0, std::uint32_t* b0,
                     std::uint32_t* d1, std::uint32_t* b1, std::size_t n);
#endif
}  // namespace detail

}  // namespace csidh::kernels
