// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "csidh/kernels.hpp"

namespace csidh::kernels::detail {
namespace {

inline __m256i load_widened(const std::uint32_t* p) {
  return _mm256_cvtepu32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(p)));
}

// Splits four 64-bit lanes into their low and high 32-bit halves.
inline void store_halves(__m256i v, std::uint32_t* lo, std::uint32_t* hi) {
  const __m256i idx = _mm256_setr_epi32(0, 2, 4, 6, 1, 3, 5, 7);
  const __m256i packed = _mm256_permutevar8x32_epi32(v, idx);
  _mm_storeu_si128(reinterpret_cast<__m128i*>(lo), _mm256_castsi256_si128(packed));
  _mm_storeu_si128(reinterpret_cast<__m128i*>(hi), _mm256_extracti128_si256(packed, 1));
}

// Low halves to lo; bit 32 of each lane (the carry/borrow flag) to flag.
inline void store_with_flag(__m256i v, std::uint32_t* lo, std::uint32_t* flag) {
  alignas(16) std::uint32_t hi[4];
  store_halves(v, lo, hi);
  for (int k = 0; k < 4; ++k) flag[k] = hi[k] & 1U;
}

}  // namespace

void row_products_avx2(std::uint32_t chunk, const std::uint32_t* b, std::uint32_t* lo, std::uint32_t* hi,
                       std::size_t n) {
  const __m256i a = _mm256_set1_epi64x(chunk);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256i prod = _mm256_mul_epu32(a, load_widened(b + j));
    store_halves(prod, lo + j, hi + j);
  }
  row_products_scalar(chunk, b + j, lo + j, hi + j, n - j);
}

void dual_sums_avx2(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* s0, std::uint32_t* c0,
                    std::uint32_t* s1, std::uint32_t* c1, std::size_t n) {
  const __m256i one = _mm256_set1_epi64x(1);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i sum = _mm256_add_epi64(load_widened(a + i), load_widened(b + i));
    store_with_flag(sum, s0 + i, c0 + i);
    store_with_flag(_mm256_add_epi64(sum, one), s1 + i, c1 + i);
  }
  dual_sums_scalar(a + i, b + i, s0 + i, c0 + i, s1 + i, c1 + i, n - i);
}

void dual_diffs_avx2(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* d0, std::uint32_t* b0,
                     std::uint32_t* d1, std::uint32_t* b1, std::size_t n) {
  const __m256i one = _mm256_set1_epi64x(1);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // a - b wraps to 2^64 - x on borrow, which sets bit 32 as well as bit 63
    const __m256i diff = _mm256_sub_epi64(load_widened(a + i), load_widened(b + i));
    store_with_flag(diff, d0 + i, b0 + i);
    store_with_flag(_mm256_sub_epi64(diff, one), d1 + i, b1 + i);
  }
  dual_diffs_scalar(a + i, b + i, d0 + i, b0 + i, d1 + i, b1 + i, n - i);
}

}  // namespace csidh::kernels::detail
