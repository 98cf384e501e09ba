#include "csidh/params.hpp"

#include <cstring>
#include <string_view>

#include "csidh/errors.hpp"
#include "csidh/fp.hpp"

namespace csidh {
namespace {

#include "csidh512_constants.inc"

bool is_small_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// a * b mod 2^(32 n)
FieldElement mul_trunc(const FieldElement& a, const FieldElement& b, std::size_t n) {
  FieldElement out;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t c = 0;
    for (std::size_t j = 0; i + j < n; ++j) {
      const std::uint64_t s = static_cast<std::uint64_t>(a.words[i]) * b.words[j] + out.words[i + j] + c;
      out.words[i + j] = static_cast<std::uint32_t>(s);
      c = s >> 32;
    }
  }
  return out;
}

FieldElement negate_trunc(const FieldElement& a, std::size_t n) {
  FieldElement out;
  std::uint64_t carry = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t s = static_cast<std::uint64_t>(~a.words[i]) + carry;
    out.words[i] = static_cast<std::uint32_t>(s);
    carry = s >> 32;
  }
  return out;
}

}  // namespace

CsidhParams make_params(std::string name, std::uint8_t wire_id, std::vector<std::uint32_t> primes,
                        int max_exponent, std::size_t n_words, std::size_t batch_limit,
                        std::string_view expected_p_hex) {
  if (primes.empty()) throw ParamsError("empty prime list");
  if (max_exponent < 1) throw ParamsError("exponent bound must be at least 1");
  if (batch_limit < 1) throw ParamsError("batch limit must be at least 1");
  if (n_words < 1 || n_words > kMaxWords) throw ParamsError("unsupported word count");
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (primes[i] % 2 == 0 || !is_small_prime(primes[i])) throw ParamsError("prime list holds a non-odd-prime");
    if (i > 0 && primes[i] <= primes[i - 1]) throw ParamsError("prime list not strictly ascending");
  }

  CsidhParams params;
  params.name = std::move(name);
  params.wire_id = wire_id;
  params.primes = std::move(primes);
  params.max_exponent = max_exponent;
  params.n_words = n_words;
  params.batch_limit = batch_limit;

  Scalar p(4);
  for (auto l : params.primes) p.mul_small(l);
  p.sub_small(1);
  if (p.bit_length() > 32 * n_words) throw ParamsError("p does not fit the word count");
  if (!expected_p_hex.empty() && !(Scalar::from_hex(expected_p_hex) == p)) {
    throw ParamsError("recomputed p differs from the stored constant");
  }
  params.modulus = p;
  const auto pw = p.words();
  std::copy(pw.begin(), pw.end(), params.p.words.begin());

  // Newton iteration for p^-1 mod R; p * p = 1 mod 8 seeds three correct bits.
  FieldElement x = params.p;
  FieldElement two;
  two.words[0] = 2;
  for (std::size_t bits = 3; bits < 32 * n_words; bits *= 2) {
    const FieldElement px = mul_trunc(params.p, x, n_words);
    FieldElement t;  // 2 - p x mod R
    std::uint64_t borrow = 0;
    for (std::size_t i = 0; i < n_words; ++i) {
      const std::uint64_t d = static_cast<std::uint64_t>(two.words[i]) - px.words[i] - borrow;
      t.words[i] = static_cast<std::uint32_t>(d);
      borrow = (d >> 32) & 1U;
    }
    x = mul_trunc(x, t, n_words);
  }
  params.pinv = negate_trunc(x, n_words);
  params.pinv32 = params.pinv.words[0];
  params.pinv64 = params.pinv.words[0] | (static_cast<std::uint64_t>(params.pinv.words[1]) << 32);

  // R mod p and R^2 mod p by repeated doubling.
  FieldElement acc;
  acc.words[0] = 1;
  for (std::size_t i = 0; i < 32 * n_words; ++i) acc = fp::add(acc, acc, params);
  params.r_mod_p = acc;
  for (std::size_t i = 0; i < 32 * n_words; ++i) acc = fp::add(acc, acc, params);
  params.r2 = acc;

  params.p_plus_1 = p;
  params.p_plus_1.add_small(1);
  params.p_minus_2 = p;
  params.p_minus_2.sub_small(2);
  params.half_order = p;
  params.half_order.sub_small(1).shr1();
  return params;
}

const CsidhParams& csidh512() {
  static const CsidhParams params =
      make_params("csidh512", 1, std::vector<std::uint32_t>(std::begin(kCsidh512Primes), std::end(kCsidh512Primes)),
                  5, 16, 16, kCsidh512PHex);
  return params;
}

const CsidhParams& toy419() {
  static const CsidhParams params = make_params("toy419", 2, {3, 5, 7}, 1, 1, 16, "1a3");
  return params;
}

const CsidhParams& params_by_name(std::string_view name) {
  if (name == "csidh512") return csidh512();
  if (name == "toy419") return toy419();
  throw ParamsError("unknown parameter set: " + std::string(name));
}

const CsidhParams* params_by_wire_id(std::uint8_t id) {
  if (id == csidh512().wire_id) return &csidh512();
  if (id == toy419().wire_id) return &toy419();
  return nullptr;
}

}  // namespace csidh
