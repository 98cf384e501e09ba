#include "csidh/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace csidh::kernels {
namespace {

std::atomic<int> g_override{-1};

void require_same(std::size_t expected, std::size_t actual) {
  if (expected != actual) throw std::invalid_argument("kernel operand length mismatch");
}

}  // namespace

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(__x86_64__)
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() {
  const int forced = g_override.load(std::memory_order_relaxed);
  if (forced >= 0) return static_cast<Isa>(forced);
  static const Isa detected = isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
  return detected;
}

void set_isa_override(std::optional<Isa> isa) {
  if (isa && !isa_available(*isa)) throw std::invalid_argument("requested ISA not available on this host");
  g_override.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

void row_products(Isa isa, std::uint32_t chunk, std::span<const std::uint32_t> b, std::span<std::uint32_t> lo,
                  std::span<std::uint32_t> hi) {
  require_same(b.size(), lo.size());
  require_same(b.size(), hi.size());
#if defined(__x86_64__)
  if (isa == Isa::Avx2) return detail::row_products_avx2(chunk, b.data(), lo.data(), hi.data(), b.size());
#endif
  detail::row_products_scalar(chunk, b.data(), lo.data(), hi.data(), b.size());
}

void dual_sums(Isa isa, std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
               std::span<std::uint32_t> sum0, std::span<std::uint32_t> carry0, std::span<std::uint32_t> sum1,
               std::span<std::uint32_t> carry1) {
  const std::size_t n = a.size();
  for (std::size_t len : {b.size(), sum0.size(), carry0.size(), sum1.size(), carry1.size()}) require_same(n, len);
#if defined(__x86_64__)
  if (isa == Isa::Avx2) {
    return detail::dual_sums_avx2(a.data(), b.data(), sum0.data(), carry0.data(), sum1.data(), carry1.data(), n);
  }
#endif
  detail::dual_sums_scalar(a.data(), b.data(), sum0.data(), carry0.data(), sum1.data(), carry1.data(), n);
}

void dual_diffs(Isa isa, std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                std::span<std::uint32_t> diff0, std::span<std::uint32_t> borrow0, std::span<std::uint32_t> diff1,
                std::span<std::uint32_t> borrow1) {
  const std::size_t n = a.size();
  for (std::size_t len : {b.size(), diff0.size(), borrow0.size(), diff1.size(), borrow1.size()}) {
    require_same(n, len);
  }
#if defined(__x86_64__)
  if (isa == Isa::Avx2) {
    return detail::dual_diffs_avx2(a.data(), b.data(), diff0.data(), borrow0.data(), diff1.data(), borrow1.data(),
                                   n);
  }
#endif
  detail::dual_diffs_scalar(a.data(), b.data(), diff0.data(), borrow0.data(), diff1.data(), borrow1.data(), n);
}

namespace detail {

void row_products_scalar(std::uint32_t chunk, const std::uint32_t* b, std::uint32_t* lo, std::uint32_t* hi,
                         std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const std::uint64_t p = static_cast<std::uint64_t>(chunk) * b[j];
    lo[j] = static_cast<std::uint32_t>(p);
    hi[j] = static_cast<std::uint32_t>(p >> 32);
  }
}

void dual_sums_scalar(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* s0, std::uint32_t* c0,
                      std::uint32_t* s1, std::uint32_t* c1, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t t = static_cast<std::uint64_t>(a[i]) + b[i];
    s0[i] = static_cast<std::uint32_t>(t);
    c0[i] = static_cast<std::uint32_t>(t >> 32);
    s1[i] = static_cast<std::uint32_t>(t + 1);
    c1[i] = static_cast<std::uint32_t>((t + 1) >> 32);
  }
}

void dual_diffs_scalar(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* d0, std::uint32_t* b0,
                       std::uint32_t* d1, std::uint32_t* b1, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t t = static_cast<std::uint64_t>(a[i]) - b[i];
    d0[i] = static_cast<std::uint32_t>(t);
    b0[i] = static_cast<std::uint32_t>(t >> 63);
    d1[i] = static_cast<std::uint32_t>(t - 1);
    b1[i] = static_cast<std::uint32_t>((t - 1) >> 63);
  }
}

}  // namespace detail
}  // namespace csidh::kernels
