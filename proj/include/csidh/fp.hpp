#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "csidh/field.hpp"
#include "csidh/params.hpp"
#include "csidh/scalar.hpp"

// Arithmetic in F_p. Every public function returns a canonical value (< p)
// and runs without secret-dependent branches or table lookups; the only
// branches are on public data (word counts, exponent bits).
namespace csidh::fp {

FieldElement add(const FieldElement& a, const FieldElement& b, const CsidhParams& params);
FieldElement sub(const FieldElement& a, const FieldElement& b, const CsidhParams& params);
FieldElement neg(const FieldElement& a, const CsidhParams& params);

// Plain double-width product.
WideProduct mul_wide(const FieldElement& a, const FieldElement& b, const CsidhParams& params);

// T * R^-1 mod p by word-level Montgomery reduction:
//   m = (T mod R) * pinv mod R;  T' = T + m * p;  T_out = T' / R;  subtract p once if needed.
// Requires T < p * R.
FieldElement mont_reduce(const WideProduct& t, const CsidhParams& params);

// Montgomery multiplication kernels. All return a * b * R^-1 mod p.
enum class MulKernel {
  Reference,  // mul_wide followed by mont_reduce
  Cios32,     // interleaved word-serial, any width
  Cios64,     // interleaved on 64-bit limbs, even word counts only
};

// Fastest kernel supported by the parameter set.
MulKernel default_kernel(const CsidhParams& params);
bool kernel_supported(MulKernel kernel, const CsidhParams& params);
FieldElement mont_mul_with(MulKernel kernel, const FieldElement& a, const FieldElement& b,
                           const CsidhParams& params);

FieldElement mont_mul(const FieldElement& a, const FieldElement& b, const CsidhParams& params);
inline FieldElement mont_sqr(const FieldElement& a, const CsidhParams& params) { return mont_mul(a, a, params); }

FieldElement to_mont(const FieldElement& a, const CsidhParams& params);
FieldElement from_mont(const FieldElement& a, const CsidhParams& params);

// a^e in the Montgomery domain with a schedule fixed by the public exponent.
FieldElement pow(const FieldElement& a, const Scalar& exponent, const CsidhParams& params);

// Inverse in the Montgomery domain (input aR, output a^-1 R) via a^(p-2).
// Throws ZeroInverse for a = 0.
FieldElement inv(const FieldElement& a, const CsidhParams& params);

// Euler criterion on a Montgomery-domain value. Zero counts as a square.
bool is_square(const FieldElement& a, const CsidhParams& params);

// Reduction-free constructors and predicates.
FieldElement from_u64(std::uint64_t value, const CsidhParams& params);  // standard domain, value < p
bool is_canonical(const FieldElement& a, const CsidhParams& params);
bool is_zero(const FieldElement& a);

// Little-endian serialization, exactly params.field_bytes() bytes.
std::vector<std::uint8_t> to_bytes(const FieldElement& a, const CsidhParams& params);
// Throws FormatError on wrong length or non-canonical value.
FieldElement from_bytes(std::span<const std::uint8_t> bytes, const CsidhParams& params);

std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(std::string_view hex);

}  // namespace csidh::fp
