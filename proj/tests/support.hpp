#pragma once

#include <random>
#include <vector>

#include "csidh/context.hpp"
#include "csidh/curve.hpp"
#include "csidh/field.hpp"
#include "csidh/params.hpp"
#include "oracle.hpp"

namespace testing_support {

inline oracle::Big big(const csidh::FieldElement& a, const csidh::CsidhParams& params) {
  return oracle::from_words(std::span<const std::uint32_t>(a.words.data(), params.n_words));
}

inline oracle::Big big(const csidh::WideProduct& t, const csidh::CsidhParams& params) {
  return oracle::from_words(std::span<const std::uint32_t>(t.words.data(), 2 * params.n_words));
}

inline csidh::FieldElement element(const oracle::Big& v, const csidh::CsidhParams& params) {
  const auto words = oracle::to_words(v, params.n_words);
  csidh::FieldElement out;
  std::copy(words.begin(), words.end(), out.words.begin());
  return out;
}

inline oracle::Big modulus(const csidh::CsidhParams& params) { return big(params.p, params); }
inline oracle::Big radix(const csidh::CsidhParams& params) { return oracle::Big(1) << (32 * params.n_words); }

// Uniform canonical element drawn by rejection.
inline csidh::FieldElement random_element(std::mt19937_64& gen, const csidh::CsidhParams& params) {
  const oracle::Big p = modulus(params);
  for (;;) {
    oracle::Big v = 0;
    for (std::size_t i = 0; i < params.n_words; ++i) v = (v << 32) | static_cast<std::uint32_t>(gen());
    v &= (oracle::Big(1) << msb(p) + 1) - 1;
    if (v < p) return element(v, params);
  }
}

// Edge values 0, 1, p - 1, p - 2 (standard integers, used as raw words).
inline std::vector<csidh::FieldElement> edge_elements(const csidh::CsidhParams& params) {
  const oracle::Big p = modulus(params);
  return {element(0, params), element(1, params), element(p - 1, params), element(p - 2, params)};
}

inline const std::vector<const csidh::CsidhParams*>& all_params() {
  static const std::vector<const csidh::CsidhParams*> v = {&csidh::toy419(), &csidh::csidh512()};
  return v;
}

// Toy-field bridges between int64 oracle values and Montgomery-domain elements.
inline csidh::FieldElement toy_mont(std::int64_t v, const csidh::FieldContext& ctx) {
  const auto p = static_cast<std::int64_t>(ctx.params().p.words[0]);
  return ctx.to_mont(element(oracle::mod(v, p), ctx.params()));
}

inline std::int64_t toy_value(const csidh::FieldElement& standard) { return standard.words[0]; }

// Affine x of a projective point, or -1 at infinity.
inline std::int64_t toy_x(csidh::FieldContext& ctx, const csidh::ProjPoint& pt) {
  if (csidh::is_infinity(pt)) return -1;
  return toy_value(csidh::affinize_point(ctx, pt));
}

inline std::int64_t toy_x(const oracle::AffinePoint& pt) { return pt.infinity ? -1 : pt.x; }

inline csidh::ProjPoint toy_point(std::int64_t x, csidh::FieldContext& ctx) {
  return csidh::affine_point(ctx, toy_mont(x, ctx));
}

}  // namespace testing_support
