#pragma once

// Brute-force references for tests. Shares no arithmetic with the library.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace oracle {

using Big = boost::multiprecision::cpp_int;

Big from_words(std::span<const std::uint32_t> words);
std::vector<std::uint32_t> to_words(const Big& v, std::size_t n);
Big mod_inverse(const Big& a, const Big& m);  // extended gcd; a invertible
Big naive_modmul(const Big& a, const Big& b, const Big& p);
Big naive_redc(const Big& t, const Big& p, const Big& r);  // t * r^-1 mod p

// ---- toy field arithmetic on int64 ----

std::int64_t mod(std::int64_t a, std::int64_t p);
std::int64_t inv_mod(std::int64_t a, std::int64_t p);
bool is_prime(std::int64_t n);
std::vector<bool> square_table(std::int64_t p);  // [x] = x is a square (0 included)

struct AffinePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  bool infinity = true;

  friend bool operator==(const AffinePoint&, const AffinePoint&) = default;
};

struct CurveEnumeration {
  std::vector<AffinePoint> points;  // infinity first
  std::size_t order = 0;
};

// y^2 = x^3 + A x^2 + x over F_p; throws std::invalid_argument when singular.
CurveEnumeration enumerate_curve(std::int64_t a, std::int64_t p);

AffinePoint add(std::int64_t a, std::int64_t p, const AffinePoint& P, const AffinePoint& Q);
AffinePoint mul(std::int64_t a, std::int64_t p, std::uint64_t k, const AffinePoint& P);
std::uint64_t point_order(std::int64_t a, std::int64_t p, const AffinePoint& P);

struct VeluResult {
  std::int64_t a = 0;                                  // Montgomery codomain coefficient
  std::function<AffinePoint(const AffinePoint&)> map;  // full (x, y) map
  std::function<std::int64_t(std::int64_t)> map_x;     // x-only, x not in the kernel
};

// Classical Velu on the Weierstrass model, brought back to Montgomery form.
// One result per Montgomery model of the codomain (several when more than one
// 2-torsion point can be moved to x = 0).
std::vector<VeluResult> velu_models(std::int64_t a, const AffinePoint& kernel_gen, std::uint32_t l, std::int64_t p);
// As velu_models(), but throws std::runtime_error unless the model is unique.
VeluResult velu_isogeny(std::int64_t a, const AffinePoint& kernel_gen, std::uint32_t l, std::int64_t p);

// Applies |e_i| isogenies of degree l_i, with rational kernels for e_i > 0
// and twist kernels for e_i < 0.
std::int64_t brute_group_action(std::int64_t a, std::span<const std::int8_t> e,
                                std::span<const std::uint32_t> primes, std::int64_t p);

// All points of exact order l on y^2 = x^3 + A x^2 + x.
std::vector<AffinePoint> points_of_order(std::int64_t a, std::int64_t p, std::uint64_t l);

}  // namespace oracle
