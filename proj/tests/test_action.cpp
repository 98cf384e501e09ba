#include <doctest.h>

#include <array>
#include <cstdlib>
#include <random>

#include "csidh/action.hpp"
#include "csidh/errors.hpp"
#include "csidh/fp.hpp"
#include "csidh/params.hpp"
#include "support.hpp"

using namespace csidh;
using namespace testing_support;

namespace {

constexpr std::int64_t kP = 419;

ChaChaRng seeded(std::uint8_t tag) { return ChaChaRng::from_seed(std::vector<std::uint8_t>{'t', 'a', tag}); }

std::vector<PrivateKey> all_toy_keys() {
  std::vector<PrivateKey> keys;
  for (int i = 0; i < 27; ++i) {
    keys.push_back({{static_cast<std::int8_t>(i % 3 - 1), static_cast<std::int8_t>(i / 3 % 3 - 1),
                     static_cast<std::int8_t>(i / 9 - 1)}});
  }
  return keys;
}

PublicKey toy_key(std::int64_t a) { return {element(a, toy419()), false}; }

std::vector<std::int64_t> supersingular_toy_curves() {
  std::vector<std::int64_t> out;
  for (std::int64_t a = 0; a < kP; ++a) {
    if (oracle::mod(a * a - 4, kP) == 0) continue;
    if (oracle::enumerate_curve(a, kP).order == static_cast<std::size_t>(kP + 1)) out.push_back(a);
  }
  return out;
}

}  // namespace

TEST_CASE("toy action: both paths against the brute-force class group action") {
  const CsidhParams& params = toy419();
  const auto curves = supersingular_toy_curves();
  std::size_t runs = 0;
  for (std::int64_t start : curves) {
    for (const PrivateKey& sk : all_toy_keys()) {
      CAPTURE(start);
      const std::int64_t want = oracle::brute_group_action(start, sk.e, params.primes, kP);
      for (std::uint8_t seed : {1, 2}) {
        ChaChaRng rng = seeded(static_cast<std::uint8_t>(seed + start));
        const ActionResult ct = group_action_ct(toy_key(start), sk, params, rng);
        const ActionResult vt = group_action_vartime(toy_key(start), sk, params, rng);
        REQUIRE(ct.success);
        REQUIRE(vt.success);
        CHECK(toy_value(ct.key.a) == want);
        CHECK(toy_value(vt.key.a) == want);
        ++runs;
      }
    }
  }
  CHECK(runs == curves.size() * 27 * 2);
}

TEST_CASE("constant-time path runs exactly m isogenies per prime") {
  const CsidhParams& params = toy419();
  ChaChaRng rng = seeded(3);
  for (const PrivateKey& sk : all_toy_keys()) {
    const ActionResult ct = group_action_ct(base_public_key(), sk, params, rng);
    const ActionResult vt = group_action_vartime(base_public_key(), sk, params, rng);
    for (std::size_t i = 0; i < params.n_primes(); ++i) {
      CHECK(ct.isogenies[i] == static_cast<std::uint32_t>(params.max_exponent));
      CHECK(ct.real_isogenies[i] == static_cast<std::uint32_t>(std::abs(sk.e[i])));
      CHECK(vt.isogenies[i] == static_cast<std::uint32_t>(std::abs(sk.e[i])));
    }
  }
}

TEST_CASE("zero key and round trips on the toy field") {
  const CsidhParams& params = toy419();
  ChaChaRng rng = seeded(4);
  const PrivateKey zero{{0, 0, 0}};
  CHECK(toy_value(group_action_ct(base_public_key(), zero, params, rng).key.a) == 0);
  // e followed by -e returns to the start
  for (const PrivateKey& sk : all_toy_keys()) {
    PrivateKey inverse = sk;
    for (auto& v : inverse.e) v = static_cast<std::int8_t>(-v);
    const PublicKey pk = group_action_ct(base_public_key(), sk, params, rng).key;
    CHECK(toy_value(group_action_ct(pk, inverse, params, rng).key.a) == 0);
  }
}

TEST_CASE("toy key agreement over all key pairs") {
  const CsidhParams& params = toy419();
  ChaChaRng rng = seeded(5);
  const auto keys = all_toy_keys();
  for (const PrivateKey& a : keys) {
    const PublicKey pa = keygen(a, params, rng);
    for (const PrivateKey& b : keys) {
      const PublicKey pb = keygen(b, params, rng);
      CHECK(shared_secret(a, pb, params, rng) == shared_secret(b, pa, params, rng));
    }
  }
}

TEST_CASE("public key validation on every toy coefficient") {
  const CsidhParams& params = toy419();
  ChaChaRng rng = seeded(6);
  std::size_t wrong = 0;
  for (std::int64_t a = 0; a < kP; ++a) {
    bool want = false;
    if (oracle::mod(a * a - 4, kP) != 0) want = oracle::enumerate_curve(a, kP).order == kP + 1;
    wrong += validate_pk(element(a, params), params, rng, 40) != want;
  }
  CHECK(wrong == 0);
  CHECK_FALSE(validate_basic(params.p, params));
  CHECK_FALSE(validate_basic(element(2, params), params));
  CHECK_FALSE(validate_basic(element(kP - 2, params), params));
  CHECK(validate_basic(element(0, params), params));
}

TEST_CASE("invalid peer keys are rejected") {
  ChaChaRng rng = seeded(7);
  for (const CsidhParams* params : all_params()) {
    const PrivateKey sk{std::vector<std::int8_t>(params->n_primes(), 0)};
    CHECK_THROWS_AS(shared_secret(sk, {element(2, *params), false}, *params, rng), InvalidPeerKey);
    CHECK_THROWS_AS(shared_secret(sk, {params->p, false}, *params, rng), InvalidPeerKey);
    // non-canonical input is rejected even when the full check is skipped
    ActionConfig skip;
    skip.skip_validation = true;
    CHECK_THROWS_AS(shared_secret(sk, {params->p, false}, *params, rng, skip), InvalidPeerKey);
  }
  // ordinary curve on the full field
  const CsidhParams& big = csidh512();
  const PrivateKey sk{std::vector<std::int8_t>(big.n_primes(), 0)};
  CHECK_THROWS_AS(shared_secret(sk, {element(5, big), false}, big, rng), InvalidPeerKey);
  CHECK_FALSE(validate_pk(element(5, big), big, rng));
  CHECK(validate_pk(element(0, big), big, rng));
}

TEST_CASE("fault injection is detected") {
  const CsidhParams& params = toy419();
  const PrivateKey sk{{1, -1, 1}};
  for (bool ct : {true, false}) {
    for (std::size_t step : {0UL, 1UL, 2UL}) {
      ChaChaRng rng = seeded(8);
      ActionConfig config;
      config.constant_time = ct;
      config.fault_check = true;
      config.inject_kernel_fault = step;
      const ActionResult r = group_action(base_public_key(), sk, params, rng, config);
      CHECK(r.fault);
      CHECK_FALSE(r.success);
      CHECK_THROWS_AS(keygen(sk, params, rng, config), FaultDetected);
    }
  }
}

TEST_CASE("malformed private keys and an exhausted random source") {
  const CsidhParams& params = toy419();
  ChaChaRng rng = seeded(9);
  CHECK_THROWS_AS(group_action_ct(base_public_key(), {{1, 0}}, params, rng), std::invalid_argument);
  CHECK_THROWS_AS(group_action_ct(base_public_key(), {{2, 0, 0}}, params, rng), std::invalid_argument);
  FixedBytes empty(std::vector<std::uint8_t>{});
  CHECK_THROWS_AS(group_action_ct(base_public_key(), {{1, 0, 0}}, params, empty), RngExhausted);
}

TEST_CASE("private keys are uniform over the exponent box") {
  const CsidhParams& params = csidh512();
  ChaChaRng rng = seeded(10);
  std::array<std::size_t, 11> hist{};
  for (int i = 0; i < 200; ++i) {
    for (std::int8_t v : random_private_key(params, rng).e) ++hist[static_cast<std::size_t>(v + 5)];
  }
  // 14800 draws, expected 1345 per bucket
  for (std::size_t h : hist) CHECK((h > 1150 && h < 1550));
}

TEST_CASE("point sampling") {
  const CsidhParams& params = csidh512();
  FieldContext ctx(params);
  ChaChaRng rng = seeded(11);
  std::mt19937_64 gen(12);
  // supersingular curves reached by a short walk
  std::vector<ProjCurve> curves = {affine_curve(ctx, ctx.zero())};
  PrivateKey sk{std::vector<std::int8_t>(params.n_primes(), 0)};
  sk.e[0] = 1;
  sk.e[3] = -1;
  const PublicKey pk = group_action_vartime(base_public_key(), sk, params, rng).key;
  curves.push_back(affine_curve(ctx, ctx.to_mont(pk.a)));

  std::uint64_t first = 0;
  for (const ProjCurve& c : curves) {
    for (int i = 0; i < 200; ++i) {
      const OpCounts before = ctx.counts();
      const auto [plus, minus] = sample_point_pair(ctx, c, rng);
      const std::uint64_t used = ctx.counts().total() - before.total();
      if (first == 0) first = used;
      CHECK(used == first);
      CHECK(xtwist(ctx, plus, c) == CurveSide::Curve);
      CHECK(xtwist(ctx, minus, c) == CurveSide::Twist);
      CHECK(xtwist(ctx, sample_point(ctx, c, CurveSide::Twist, rng), c) == CurveSide::Twist);
    }
  }
  // random x lands on either side about half the time
  int on_curve = 0;
  for (int i = 0; i < 2000; ++i) {
    on_curve += xtwist(ctx, ctx.to_mont(random_element(gen, params)), ctx.zero()) == CurveSide::Curve;
  }
  CHECK((on_curve > 900 && on_curve < 1100));
}

TEST_CASE("full-size action: paths agree and keys agree") {
  const CsidhParams& params = csidh512();
  ChaChaRng rng = seeded(13);
  PrivateKey small{std::vector<std::int8_t>(params.n_primes(), 0)};
  small.e[0] = 2;
  small.e[5] = -1;
  small.e[73] = 1;
  const ActionResult ct = group_action_ct(base_public_key(), small, params, rng);
  const ActionResult vt = group_action_vartime(base_public_key(), small, params, rng);
  REQUIRE(ct.success);
  CHECK(ct.key == vt.key);
  CHECK(validate_pk(ct.key.a, params, rng, 2));

  const PrivateKey zero{std::vector<std::int8_t>(params.n_primes(), 0)};
  CHECK(fp::is_zero(group_action_ct(base_public_key(), zero, params, rng).key.a));

  const PrivateKey a = random_private_key(params, rng), b = random_private_key(params, rng);
  const PublicKey pa = keygen(a, params, rng), pb = keygen(b, params, rng);
  CHECK(shared_secret(a, pb, params, rng) == shared_secret(b, pa, params, rng));
}

TEST_CASE("key file formats") {
  ChaChaRng rng = seeded(14);
  for (const CsidhParams* params : all_params()) {
    const PrivateKey sk = random_private_key(*params, rng);
    const auto sk_bytes = encode_private_key(sk, *params);
    CHECK(sk_bytes.size() == 9 + params->n_primes());
    const auto [sp, sk2] = decode_private_key(sk_bytes);
    CHECK(sp == params);
    CHECK(sk2 == sk);

    std::mt19937_64 gen(15);
    const PublicKey pk{random_element(gen, *params), true};
    const auto pk_bytes = encode_public_key(pk, *params);
    CHECK(pk_bytes.size() == 9 + params->field_bytes());
    const auto [pp, pk2] = decode_public_key(pk_bytes);
    CHECK(pp == params);
    CHECK(pk2 == pk);
    CHECK_FALSE(pk2.validated);

    auto bad = sk_bytes;
    bad[0] = 'X';
    CHECK_THROWS_AS(decode_private_key(bad), FormatError);
    bad = sk_bytes;
    bad[8] = 0xee;
    CHECK_THROWS_AS(decode_private_key(bad), FormatError);
    bad = sk_bytes;
    bad.pop_back();
    CHECK_THROWS_AS(decode_private_key(bad), FormatError);
    bad = sk_bytes;
    bad.back() = static_cast<std::uint8_t>(params->max_exponent + 1);
    CHECK_THROWS_AS(decode_private_key(bad), FormatError);
    CHECK_THROWS_AS(decode_public_key(sk_bytes), FormatError);
    auto long_pk = pk_bytes;
    long_pk.push_back(0);
    CHECK_THROWS_AS(decode_public_key(long_pk), FormatError);
  }
}
