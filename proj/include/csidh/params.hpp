#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "csidh/field.hpp"
#include "csidh/scalar.hpp"

namespace csidh {

// A CSIDH parameter set: p = 4 * l_1 * ... * l_n - 1 with Montgomery
// constants for R = 2^(32 * n_words). Immutable after construction.
struct CsidhParams {
  std::string name;
  std::uint8_t wire_id = 0;
  std::vector<std::uint32_t> primes;  // ascending small odd primes
  int max_exponent = 1;               // m: private exponents lie in [-m, m]
  std::size_t n_words = 1;
  std::size_t batch_limit = 16;

  FieldElement p;
  FieldElement r_mod_p;  // Montgomery representation of 1
  FieldElement r2;       // R^2 mod p
  FieldElement pinv;     // -p^-1 mod R
  std::uint32_t pinv32 = 0;
  std::uint64_t pinv64 = 0;

  Scalar modulus;     // p
  Scalar p_plus_1;    // group order of every supersingular curve
  Scalar p_minus_2;   // inversion exponent
  Scalar half_order;  // (p - 1) / 2, Euler criterion exponent

  [[nodiscard]] std::size_t bits() const { return 32 * n_words; }
  [[nodiscard]] std::size_t field_bytes() const { return 4 * n_words; }
  [[nodiscard]] std::size_t n_primes() const { return primes.size(); }
};

// Builds and checks a parameter set. Throws ParamsError if the primes are not
// ascending distinct odd primes, if p does not fit n_words, or if
// expected_p_hex is given and differs from the recomputed p.
CsidhParams make_params(std::string name, std::uint8_t wire_id, std::vector<std::uint32_t> primes,
                        int max_exponent, std::size_t n_words, std::size_t batch_limit,
                        std::string_view expected_p_hex = {});

const CsidhParams& csidh512();
// p = 419 = 4 * 3 * 5 * 7 - 1, m = 1, one word.
const CsidhParams& toy419();

// "csidh512" or "toy419"; throws ParamsError otherwise.
const CsidhParams& params_by_name(std::string_view name);
// nullptr if unknown.
const CsidhParams* params_by_wire_id(std::uint8_t id);

}  // namespace csidh
