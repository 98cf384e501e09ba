#include "csidh/fp.hpp"

#include <cstring>

#include "csidh/errors.hpp"

namespace csidh::fp {
namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

u32 add_n(u32* out, const u32* a, const u32* b, std::size_t n) {
  u64 carry = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const u64 t = static_cast<u64>(a[i]) + b[i] + carry;
    out[i] = static_cast<u32>(t);
    carry = t >> 32;
  }
  return static_cast<u32>(carry);
}

u32 sub_n(u32* out, const u32* a, const u32* b, std::size_t n) {
  u64 borrow = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const u64 t = static_cast<u64>(a[i]) - b[i] - borrow;
    out[i] = static_cast<u32>(t);
    borrow = (t >> 32) & 1U;
  }
  return static_cast<u32>(borrow);
}

// Reduces a value v < 2p held as n words plus a top carry word.
FieldElement reduce_once(const u32* v, u32 top, const CsidhParams& params) {
  const std::size_t n = params.n_words;
  FieldElement value;
  std::memcpy(value.words.data(), v, n * sizeof(u32));
  FieldElement diff;
  const u32 borrow = sub_n(diff.words.data(), value.words.data(), params.p.words.data(), n);
  // keep the difference when v >= p, i.e. top carry set or no borrow
  const u32 keep_diff = mask_from_bit(top | (borrow ^ 1U));
  return cselect(keep_diff, diff, value);
}

FieldElement cios32(const FieldElement& a, const FieldElement& b, const CsidhParams& params) {
  const std::size_t n = params.n_words;
  const u32* p = params.p.words.data();
  std::array<u32, kMaxWords + 2> t{};
  for (std::size_t i = 0; i < n; ++i) {
    u64 c = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const u64 s = static_cast<u64>(t[j]) + static_cast<u64>(a.words[j]) * b.words[i] + c;
      t[j] = static_cast<u32>(s);
      c = s >> 32;
    }
    u64 s = static_cast<u64>(t[n]) + c;
    t[n] = static_cast<u32>(s);
    t[n + 1] = static_cast<u32>(s >> 32);

    const u32 m = t[0] * params.pinv32;
    s = static_cast<u64>(t[0]) + static_cast<u64>(m) * p[0];
    c = s >> 32;
    for (std::size_t j = 1; j < n; ++j) {
      s = static_cast<u64>(t[j]) + static_cast<u64>(m) * p[j] + c;
      t[j - 1] = static_cast<u32>(s);
      c = s >> 32;
    }
    s = static_cast<u64>(t[n]) + c;
    t[n - 1] = static_cast<u32>(s);
    t[n] = t[n + 1] + static_cast<u32>(s >> 32);
  }
  return reduce_once(t.data(), t[n], params);
}

template <std::size_t N>
FieldElement cios64(const FieldElement& a, const FieldElement& b, const CsidhParams& params) {
  u64 x[N], y[N], p[N];
  std::memcpy(x, a.words.data(), sizeof(x));
  std::memcpy(y, b.words.data(), sizeof(y));
  std::memcpy(p, params.p.words.data(), sizeof(p));
  const u64 pinv = params.pinv64;
  u64 t[N + 2] = {};
  for (std::size_t i = 0; i < N; ++i) {
    u64 c = 0;
    for (std::size_t j = 0; j < N; ++j) {
      const u128 s = static_cast<u128>(x[j]) * y[i] + t[j] + c;
      t[j] = static_cast<u64>(s);
      c = static_cast<u64>(s >> 64);
    }
    u128 s = static_cast<u128>(t[N]) + c;
    t[N] = static_cast<u64>(s);
    t[N + 1] = static_cast<u64>(s >> 64);

    const u64 m = t[0] * pinv;
    s = static_cast<u128>(m) * p[0] + t[0];
    c = static_cast<u64>(s >> 64);
    for (std::size_t j = 1; j < N; ++j) {
      s = static_cast<u128>(m) * p[j] + t[j] + c;
      t[j - 1] = static_cast<u64>(s);
      c = static_cast<u64>(s >> 64);
    }
    s = static_cast<u128>(t[N]) + c;
    t[N - 1] = static_cast<u64>(s);
    t[N] = t[N + 1] + static_cast<u64>(s >> 64);
  }
  u32 words[2 * N];
  std::memcpy(words, t, sizeof(words));
  return reduce_once(words, static_cast<u32>(t[N]), params);
}

using KernelFn = FieldElement (*)(const FieldElement&, const FieldElement&, const CsidhParams&);

KernelFn cios64_for(std::size_t n_words) {
  switch (n_words) {
    case 2: return &cios64<1>;
    case 4: return &cios64<2>;
    case 8: return &cios64<4>;
    case 16: return &cios64<8>;
    default: return nullptr;
  }
}

}  // namespace

FieldElement add(const FieldElement& a, const FieldElement& b, const CsidhParams& params) {
  FieldElement sum;
  const u32 carry = add_n(sum.words.data(), a.words.data(), b.words.data(), params.n_words);
  return reduce_once(sum.words.data(), carry, params);
}

FieldElement sub(const FieldElement& a, const FieldElement& b, const CsidhParams& params) {
  const std::size_t n = params.n_words;
  FieldElement diff;
  const u32 borrow = sub_n(diff.words.data(), a.words.data(), b.words.data(), n);
  const FieldElement correction = cselect(mask_from_bit(borrow), params.p, FieldElement{});
  FieldElement out;
  add_n(out.words.data(), diff.words.data(), correction.words.data(), n);
  return out;
}

FieldElement neg(const FieldElement& a, const CsidhParams& params) { return sub(FieldElement{}, a, params); }

WideProduct mul_wide(const FieldElement& a, const FieldElement& b, const CsidhParams& params) {
  const std::size_t n = params.n_words;
  WideProduct out;
  for (std::size_t i = 0; i < n; ++i) {
    u64 c = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const u64 s = static_cast<u64>(a.words[i]) * b.words[j] + out.words[i + j] + c;
      out.words[i + j] = static_cast<u32>(s);
      c = s >> 32;
    }
    out.words[i + n] = static_cast<u32>(c);
  }
  return out;
}

FieldElement mont_reduce(const WideProduct& t, const CsidhParams& params) {
  const std::size_t n = params.n_words;
  // m = (T mod R) * pinv mod R, truncated to n words
  std::array<u32, kMaxWords> m{};
  for (std::size_t i = 0; i < n; ++i) {
    u64 c = 0;
    for (std::size_t j = 0; i + j < n; ++j) {
      const u64 s = static_cast<u64>(t.words[i]) * params.pinv.words[j] + m[i + j] + c;
      m[i + j] = static_cast<u32>(s);
      c = s >> 32;
    }
  }
  // T' = T + m * p over 2n + 1 words
  std::array<u32, 2 * kMaxWords + 1> acc{};
  std::memcpy(acc.data(), t.words.data(), 2 * n * sizeof(u32));
  for (std::size_t i = 0; i < n; ++i) {
    u64 c = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const u64 s = static_cast<u64>(m[i]) * params.p.words[j] + acc[i + j] + c;
      acc[i + j] = static_cast<u32>(s);
      c = s >> 32;
    }
    for (std::size_t k = i + n; c != 0 && k <= 2 * n; ++k) {
      const u64 s = static_cast<u64>(acc[k]) + c;
      acc[k] = static_cast<u32>(s);
      c = s >> 32;
    }
  }
  // T_out = T' / R, then one conditional subtraction
  return reduce_once(acc.data() + n, acc[2 * n], params);
}

MulKernel default_kernel(const CsidhParams& params) {
  return kernel_supported(MulKernel::Cios64, params) ? MulKernel::Cios64 : MulKernel::Cios32;
}

bool kernel_supported(MulKernel kernel, const CsidhParams& params) {
  if (kernel == MulKernel::Cios64) return cios64_for(params.n_words) != nullptr;
  return true;
}

FieldElement mont_mul_with(MulKernel kernel, const FieldElement& a, const FieldElement& b,
                           const CsidhParams& params) {
  switch (kernel) {
    case MulKernel::Reference: return mont_reduce(mul_wide(a, b, params), params);
    case MulKernel::Cios32: return cios32(a, b, params);
    case MulKernel::Cios64: {
      const KernelFn fn = cios64_for(params.n_words);
      if (fn == nullptr) throw Error("Cios64 kernel needs an even word count");
      return fn(a, b, params);
    }
  }
  return cios32(a, b, params);
}

FieldElement mont_mul(const FieldElement& a, const FieldElement& b, const CsidhParams& params) {
  if (const KernelFn fn = cios64_for(params.n_words)) return fn(a, b, params);
  return cios32(a, b, params);
}

FieldElement to_mont(const FieldElement& a, const CsidhParams& params) { return mont_mul(a, params.r2, params); }

FieldElement from_mont(const FieldElement& a, const CsidhParams& params) {
  WideProduct t;
  std::memcpy(t.words.data(), a.words.data(), params.n_words * sizeof(u32));
  return mont_reduce(t, params);
}

FieldElement pow(const FieldElement& a, const Scalar& exponent, const CsidhParams& params) {
  FieldElement result = params.r_mod_p;
  for (std::size_t i = exponent.bit_length(); i-- > 0;) {
    result = mont_mul(result, result, params);
    if (exponent.bit(i)) result = mont_mul(result, a, params);
  }
  return result;
}

FieldElement inv(const FieldElement& a, const CsidhParams& params) {
  if (is_zero(a)) throw ZeroInverse();
  return pow(a, params.p_minus_2, params);
}

bool is_square(const FieldElement& a, const CsidhParams& params) {
  const FieldElement r = pow(a, params.half_order, params);
  return ((equal_mask(r, params.r_mod_p) | zero_mask(a)) & 1U) != 0;
}

FieldElement from_u64(std::uint64_t value, const CsidhParams& params) {
  FieldElement out;
  out.words[0] = static_cast<u32>(value);
  if (params.n_words > 1) out.words[1] = static_cast<u32>(value >> 32);
  if (!is_canonical(out, params) || (params.n_words == 1 && (value >> 32) != 0)) {
    throw Error("from_u64: value not below p");
  }
  return out;
}

bool is_canonical(const FieldElement& a, const CsidhParams& params) {
  for (std::size_t i = params.n_words; i < kMaxWords; ++i) {
    if (a.words[i] != 0) return false;
  }
  FieldElement diff;
  return sub_n(diff.words.data(), a.words.data(), params.p.words.data(), params.n_words) == 1;
}

bool is_zero(const FieldElement& a) { return (zero_mask(a) & 1U) != 0; }

std::vector<std::uint8_t> to_bytes(const FieldElement& a, const CsidhParams& params) {
  std::vector<std::uint8_t> out(params.field_bytes());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(a.words[i / 4] >> (8 * (i % 4)));
  }
  return out;
}

FieldElement from_bytes(std::span<const std::uint8_t> bytes, const CsidhParams& params) {
  if (bytes.size() != params.field_bytes()) throw FormatError("field element has wrong length");
  FieldElement out;
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    out.words[i / 4] |= static_cast<u32>(bytes[i]) << (8 * (i % 4));
  }
  if (!is_canonical(out, params)) throw FormatError("field element not reduced mod p");
  return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * bytes.size());
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

std::vector<std::uint8_t> from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw FormatError("hex string has odd length");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw FormatError("invalid hex digit");
  };
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>((nibble(hex[2 * i]) << 4) | nibble(hex[2 * i + 1]));
  }
  return out;
}

}  // namespace csidh::fp
