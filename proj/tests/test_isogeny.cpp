#include <doctest.h>

#include <random>

#include "csidh/curve.hpp"
#include "csidh/isogeny.hpp"
#include "csidh/params.hpp"
#include "support.hpp"

using namespace csidh;
using namespace testing_support;

namespace {

constexpr std::int64_t kP = 419;

ProjPoint scaled(FieldContext& ctx, const ProjPoint& pt, std::int64_t lambda) {
  const FieldElement l = toy_mont(lambda, ctx);
  return {ctx.mul(pt.x, l), ctx.mul(pt.z, l)};
}

ProjCurve toy_curve(FieldContext& ctx, std::int64_t a, std::int64_t lambda = 1) {
  const FieldElement l = toy_mont(lambda, ctx);
  return {ctx.mul(toy_mont(a, ctx), l), l};
}

std::vector<std::int64_t> supersingular_toy_curves() {
  std::vector<std::int64_t> out;
  for (std::int64_t a = 0; a < kP; ++a) {
    if (oracle::mod(a * a - 4, kP) == 0) continue;
    if (oracle::enumerate_curve(a, kP).order == static_cast<std::size_t>(kP + 1)) out.push_back(a);
  }
  return out;
}

struct Mismatches {
  std::size_t codomain = 0;
  std::size_t image = 0;
  std::size_t kernel = 0;
  std::size_t cases = 0;
};

// Runs xisog with kernel x-coordinate kx on E_a and compares with Velu on
// E_oa, where points of E_a correspond to points of E_oa via x -> sign * x.
void compare_with_velu(FieldContext& ctx, std::int64_t a, std::int64_t oa, std::int64_t sign,
                       const oracle::AffinePoint& k_oracle, std::uint32_t l, Mismatches& out) {
  const oracle::VeluResult v = oracle::velu_isogeny(oa, k_oracle, l, kP);
  const std::int64_t kx = oracle::mod(sign * k_oracle.x, kP);

  std::vector<std::int64_t> xs;
  for (std::int64_t x = 0; x < kP; ++x) xs.push_back(x);
  std::vector<ProjPoint> pts;
  for (std::int64_t x : xs) pts.push_back(scaled(ctx, toy_point(x, ctx), 1 + x % 17));
  const IsogenyResult r = xisog(ctx, toy_curve(ctx, a, 3), pts, scaled(ctx, toy_point(kx, ctx), 9), l, true);
  out.codomain += toy_value(affinize(ctx, r.curve)) != oracle::mod(sign * v.a, kP);
  out.codomain += r.fault;

  std::vector<bool> in_kernel(kP, false);
  for (std::uint32_t i = 1; i < l; ++i) {
    in_kernel[oracle::mod(sign * oracle::mul(oa, kP, i, k_oracle).x, kP)] = true;
  }
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const std::int64_t x = xs[j];
    // x on the other side of the curve works too; only kernel points are special
    if (in_kernel[x]) {
      out.kernel += !is_infinity(pts[j]);
      continue;
    }
    const std::int64_t want = oracle::mod(sign * v.map_x(oracle::mod(sign * x, kP)), kP);
    out.image += toy_x(ctx, pts[j]) != want;
  }
  ++out.cases;
}

}  // namespace

TEST_CASE("odd-degree isogenies against Velu, all toy kernels") {
  FieldContext ctx(toy419());
  const auto curves = supersingular_toy_curves();
  REQUIRE(curves.size() > 10);
  Mismatches m;
  for (std::int64_t a : curves) {
    for (std::uint32_t l : {3U, 5U, 7U}) {
      for (const auto& K : oracle::points_of_order(a, kP, l)) compare_with_velu(ctx, a, a, 1, K, l, m);
      // kernels on the twist: points of E_{-a} read through x -> -x
      const std::int64_t ta = oracle::mod(-a, kP);
      for (const auto& K : oracle::points_of_order(ta, kP, l)) compare_with_velu(ctx, a, ta, -1, K, l, m);
    }
  }
  CHECK(m.cases > 500);
  CHECK(m.codomain == 0);
  CHECK(m.image == 0);
  CHECK(m.kernel == 0);
}

TEST_CASE("kernel generator maps to infinity") {
  FieldContext ctx(toy419());
  for (std::uint32_t l : {3U, 5U, 7U}) {
    for (const auto& K : oracle::points_of_order(0, kP, l)) {
      const ProjPoint k = toy_point(K.x, ctx);
      const SingleIsogeny s = xisog(ctx, toy_curve(ctx, 0), k, k, l, false);
      CHECK(fp::is_zero(s.image.z));
    }
  }
}

TEST_CASE("fault check flags kernels of the wrong order") {
  FieldContext ctx(toy419());
  const auto curve = oracle::enumerate_curve(0, kP);
  std::size_t flagged = 0, expected = 0;
  for (std::uint32_t l : {3U, 5U, 7U}) {
    for (const auto& K : curve.points) {
      if (K.infinity) continue;
      const bool bad = oracle::mul(0, kP, l, K) != oracle::AffinePoint{};
      const SingleIsogeny s = xisog(ctx, toy_curve(ctx, 0), toy_point(1, ctx), toy_point(K.x, ctx), l, true);
      CHECK(s.fault == bad);
      flagged += s.fault;
      expected += bad;
    }
  }
  CHECK(flagged == expected);

  // full-size field: random points are almost never of order l
  const CsidhParams& params = csidh512();
  FieldContext big(params);
  std::mt19937_64 gen(13);
  const ProjCurve c = affine_curve(big, big.zero());
  std::size_t missed = 0;
  for (int i = 0; i < 1000; ++i) {
    const ProjPoint k = affine_point(big, big.to_mont(random_element(gen, params)));
    missed += !xisog(big, c, k, k, 3, true).fault;
  }
  CHECK(missed == 0);
}

TEST_CASE("isogenies of different degrees commute") {
  FieldContext ctx(toy419());
  auto step = [&](std::int64_t a, std::uint32_t l) {
    const auto ks = oracle::points_of_order(a, kP, l);
    REQUIRE(ks.size() == l - 1);  // cyclic rational group of order p + 1
    return toy_value(affinize(ctx, xisog(ctx, toy_curve(ctx, a), toy_point(1, ctx), toy_point(ks.front().x, ctx), l,
                                         false)
                                       .curve));
  };
  for (std::int64_t a : supersingular_toy_curves()) {
    CHECK(step(step(a, 3), 5) == step(step(a, 5), 3));
    CHECK(step(step(a, 5), 7) == step(step(a, 7), 5));
  }
}

TEST_CASE("projective scaling does not change the result") {
  FieldContext ctx(toy419());
  const auto ks = oracle::points_of_order(0, kP, 7);
  ProjPoint p;
  SingleIsogeny ref;
  std::int64_t x = 1;
  do {
    p = toy_point(x++, ctx);
    ref = xisog(ctx, toy_curve(ctx, 0), p, toy_point(ks[0].x, ctx), 7, false);
  } while (is_infinity(ref.image));
  for (std::int64_t s : {2, 5, 416}) {
    const SingleIsogeny r =
        xisog(ctx, toy_curve(ctx, 0, s), scaled(ctx, p, s + 1), scaled(ctx, toy_point(ks[0].x, ctx), s + 2), 7, false);
    CHECK(affinize(ctx, r.curve) == affinize(ctx, ref.curve));
    CHECK(affinize_point(ctx, r.image) == affinize_point(ctx, ref.image));
  }
}

TEST_CASE("operation count is fixed per degree") {
  const CsidhParams& params = csidh512();
  FieldContext ctx(params);
  std::mt19937_64 gen(17);
  for (std::uint32_t l : {3U, 97U, 587U}) {
    std::uint64_t first = 0;
    for (int i = 0; i < 3; ++i) {
      const FieldElement a = ctx.to_mont(random_element(gen, params));
      std::vector<ProjPoint> pts = {affine_point(ctx, ctx.to_mont(random_element(gen, params))),
                                    affine_point(ctx, ctx.to_mont(random_element(gen, params)))};
      const OpCounts before = ctx.counts();
      (void)xisog(ctx, affine_curve(ctx, a), pts, affine_point(ctx, ctx.to_mont(random_element(gen, params))), l,
                  true);
      const std::uint64_t used = ctx.counts().total() - before.total();
      CHECK(ctx.counts().count(Opcode::MontMul, ModuleTag::XIsog) > 0);
      if (first == 0) first = used;
      CHECK(used == first);
    }
  }
  CHECK_THROWS_AS(xisog(ctx, affine_curve(ctx, ctx.zero()), infinity_point(ctx), infinity_point(ctx), 4, false),
                  std::invalid_argument);
}

TEST_CASE("rational isogenies on the base curve reach supersingular curves") {
  const CsidhParams& params = csidh512();
  FieldContext ctx(params);
  std::mt19937_64 gen(19);
  Scalar p_plus_1 = Scalar::from_words(std::span<const std::uint32_t>(params.p.words.data(), params.n_words));
  p_plus_1.add_small(1);
  ProjCurve c = affine_curve(ctx, ctx.zero());
  for (std::size_t idx : {0UL, 10UL, 73UL}) {
    const std::uint32_t l = params.primes[idx];
    Scalar cof(4);
    for (std::size_t i = 0; i < params.primes.size(); ++i) {
      if (i != idx) cof.mul_small(params.primes[i]);
    }
    ProjPoint k;
    ProjPoint p;
    do {
      p = affine_point(ctx, ctx.to_mont(random_element(gen, params)));
      k = xmul(ctx, p, cof, c);
    } while (is_infinity(k));
    const SingleIsogeny s = xisog(ctx, c, p, k, l, true);
    CHECK_FALSE(s.fault);
    c = s.curve;
    // the image of p lost its l-part
    CHECK(is_infinity(xmul(ctx, s.image, cof, c)));
    const ProjPoint q = affine_point(ctx, ctx.to_mont(random_element(gen, params)));
    CHECK(is_infinity(xmul(ctx, q, p_plus_1, c)));
  }
}
