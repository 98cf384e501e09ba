#include "csidh/action.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

#include "csidh/errors.hpp"
#include "csidh/fp.hpp"
#include "csidh/isogeny.hpp"

namespace csidh {
namespace {

constexpr char kSkMagic[8] = {'C', 'S', 'I', 'D', 'H', 'S', 'K', '1'};
constexpr char kPkMagic[8] = {'C', 'S', 'I', 'D', 'H', 'P', 'K', '1'};

void check_key_shape(const PrivateKey& sk, const CsidhParams& params) {
  if (sk.e.size() != params.n_primes()) throw std::invalid_argument("private key length does not match parameters");
  for (std::int8_t v : sk.e) {
    if (v > params.max_exponent || v < -params.max_exponent) {
      throw std::invalid_argument("private key exponent out of range");
    }
  }
}

// 4 * product of the primes not selected.
Scalar outside_cofactor(const CsidhParams& params, const std::vector<bool>& in_batch) {
  Scalar k(4);
  for (std::size_t j = 0; j < params.n_primes(); ++j) {
    if (!in_batch[j]) k.mul_small(params.primes[j]);
  }
  return k;
}

Scalar prefix_cofactor(const CsidhParams& params, const std::vector<std::size_t>& batch, std::size_t pos) {
  Scalar cof(1);
  for (std::size_t q = 0; q < pos; ++q) cof.mul_small(params.primes[batch[q]]);
  return cof;
}

// Sampled point at a public position: random x, no side constraint.
bool curve_is_supersingular(FieldContext& ctx, const ProjCurve& curve, RandomSource& rng, std::size_t rounds) {
  FieldContext::Scope scope(ctx, ModuleTag::Csidh);
  const CsidhParams& params = ctx.params();
  const LadderConstants lc = ladder_constants(ctx, curve);
  bool ok = true;
  for (std::size_t r = 0; r < rounds; ++r) {
    const ProjPoint p = affine_point(ctx, ctx.to_mont(random_field_element(params, rng)));
    ok &= is_infinity(xmul(ctx, p, params.p_plus_1, lc));
  }
  return ok;
}

ActionResult failure(const CsidhParams& params, RandomSource& rng, bool fault) {
  ActionResult r;
  r.key.a = random_field_element(params, rng);
  r.success = false;
  r.fault = fault;
  r.isogenies.assign(params.n_primes(), 0);
  r.real_isogenies.assign(params.n_primes(), 0);
  return r;
}

void maybe_corrupt(FieldContext& ctx, ProjPoint& k, const ActionConfig& config, std::size_t& step) {
  if (config.inject_kernel_fault && *config.inject_kernel_fault == step) k.x = ctx.add(k.x, ctx.one());
  ++step;
}

std::uint32_t nonzero_bit(std::uint32_t v) { return (v | (0U - v)) >> 31; }

}  // namespace

PublicKey base_public_key() { return {FieldElement{}, true}; }

bool validate_basic(const FieldElement& a, const CsidhParams& params) {
  if (!fp::is_canonical(a, params)) return false;
  const FieldElement two = fp::from_u64(2, params);
  const FieldElement minus_two = fp::neg(two, params);
  return (equal_mask(a, two) | equal_mask(a, minus_two)) == 0;
}

ProjPoint sample_point(FieldContext& ctx, const ProjCurve& curve, CurveSide side, RandomSource& rng) {
  for (;;) {
    const ProjPoint p = affine_point(ctx, ctx.to_mont(random_field_element(ctx.params(), rng)));
    if (xtwist(ctx, p, curve) == side) return p;
  }
}

std::pair<ProjPoint, ProjPoint> sample_point_pair(FieldContext& ctx, const ProjCurve& curve, RandomSource& rng) {
  const CsidhParams& params = ctx.params();
  const FieldElement one_std = fp::from_u64(1, params);
  const FieldElement minus_one_std = fp::neg(one_std, params);
  FieldElement u_std;
  do {
    u_std = random_field_element(params, rng);
  } while (fp::is_zero(u_std) || u_std == one_std || u_std == minus_one_std);

  FieldContext::Scope scope(ctx, ModuleTag::Csidh);
  const FieldElement u = ctx.to_mont(u_std);
  const FieldElement u2 = ctx.sqr(u);
  const FieldElement den = ctx.mul(curve.az, ctx.sub(u2, ctx.one()));
  // x1 = A / (u^2 - 1) and x2 = -A u^2 / (u^2 - 1) = -x1 - A lie on opposite
  // sides; for A = 0 use x1 = u / (u^2 - 1) and x2 = -x1 instead
  const std::uint32_t a_zero = zero_mask(curve.ax);
  const FieldElement num1 = cselect(a_zero, u, curve.ax);
  const FieldElement num2 = ctx.neg(cselect(a_zero, u, ctx.mul(curve.ax, u2)));
  const FieldElement den_flat = cselect(a_zero, ctx.sub(u2, ctx.one()), den);
  const ProjPoint x1{num1, den_flat};
  const ProjPoint x2{num2, den_flat};
  const std::uint32_t on_curve = mask_from_bit(xtwist(ctx, x1, curve) == CurveSide::Curve ? 1U : 0U);
  return {select(on_curve, x1, x2), select(on_curve, x2, x1)};
}

ActionResult group_action_vartime(const PublicKey& a, const PrivateKey& sk, const CsidhParams& params,
                                  RandomSource& rng, const ActionConfig& config, OpTrace* trace) {
  check_key_shape(sk, params);
  if (!validate_basic(a.a, params)) return failure(params, rng, false);
  FieldContext ctx(params, trace);
  const std::size_t n = params.n_primes();
  std::vector<int> e(sk.e.begin(), sk.e.end());
  ActionResult result;
  result.isogenies.assign(n, 0);
  result.real_isogenies.assign(n, 0);

  ProjCurve curve = affine_curve(ctx, ctx.to_mont(a.a));
  bool fault = false;
  std::size_t step = 0;
  for (bool twist : {false, true}) {
    for (;;) {
      std::vector<std::size_t> batch;
      std::vector<bool> in_batch(n, false);
      for (std::size_t i = 0; i < n && batch.size() < config.batch_limit; ++i) {
        if ((e[i] > 0 && !twist) || (e[i] < 0 && twist)) {
          batch.push_back(i);
          in_batch[i] = true;
        }
      }
      if (batch.empty()) break;

      const Scalar k = outside_cofactor(params, in_batch);
      ProjPoint p = sample_point(ctx, curve, twist ? CurveSide::Twist : CurveSide::Curve, rng);
      p = xmul(ctx, p, k, curve);
      for (std::size_t pos = batch.size(); pos-- > 0;) {
        const std::size_t i = batch[pos];
        ProjPoint kernel = xmul(ctx, p, prefix_cofactor(params, batch, pos), curve);
        if (is_infinity(kernel)) continue;
        maybe_corrupt(ctx, kernel, config, step);
        const IsogenyResult iso = xisog(ctx, curve, std::span<ProjPoint>(&p, 1), kernel, params.primes[i],
                                        config.fault_check);
        fault |= iso.fault;
        curve = iso.curve;
        e[i] += twist ? 1 : -1;
        ++result.isogenies[i];
        ++result.real_isogenies[i];
      }
    }
  }

  if (fault || !curve_is_supersingular(ctx, curve, rng, config.validation_rounds)) {
    ActionResult f = failure(params, rng, fault);
    f.counts = ctx.counts();
    return f;
  }
  result.key.a = affinize(ctx, curve);
  result.success = true;
  result.counts = ctx.counts();
  return result;
}

ActionResult group_action_ct(const PublicKey& a, const PrivateKey& sk, const CsidhParams& params,
                             RandomSource& rng, const ActionConfig& config, OpTrace* trace) {
  check_key_shape(sk, params);
  if (!validate_basic(a.a, params)) return failure(params, rng, false);
  FieldContext ctx(params, trace);
  const std::size_t n = params.n_primes();
  const auto m = static_cast<std::uint32_t>(params.max_exponent);

  // sign of e_ct (1 = positive, curve side); owed real steps
  std::vector<std::uint32_t> sign(n), owed(n), budget(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int32_t v = sk.e[i];
    const std::uint32_t coin = rng.next_bit() ? 1U : 0U;
    const std::uint32_t positive = static_cast<std::uint32_t>(-v) >> 31;
    const std::uint32_t is_zero = 1U ^ nonzero_bit(static_cast<std::uint32_t>(v));
    sign[i] = positive | (is_zero & coin);
    const std::uint32_t mag_mask = static_cast<std::uint32_t>(v >> 31);
    owed[i] = (static_cast<std::uint32_t>(v) ^ mag_mask) - mag_mask;
  }

  ActionResult result;
  result.isogenies.assign(n, 0);
  result.real_isogenies.assign(n, 0);
  ProjCurve curve = affine_curve(ctx, ctx.to_mont(a.a));
  std::uint32_t fault = 0;
  std::size_t step = 0;

  for (;;) {
    std::vector<std::size_t> batch;
    std::vector<bool> in_batch(n, false);
    for (std::size_t i = 0; i < n && batch.size() < config.batch_limit; ++i) {
      if (budget[i] > 0) {
        batch.push_back(i);
        in_batch[i] = true;
      }
    }
    if (batch.empty()) break;

    const Scalar k = outside_cofactor(params, in_batch);
    auto [plus, minus] = sample_point_pair(ctx, curve, rng);
    LadderConstants lc = ladder_constants(ctx, curve);
    plus = xmul(ctx, plus, k, lc);
    minus = xmul(ctx, minus, k, lc);

    for (std::size_t pos = batch.size(); pos-- > 0;) {
      const std::size_t i = batch[pos];
      const std::uint32_t l = params.primes[i];
      const Scalar cof = prefix_cofactor(params, batch, pos);
      const std::uint32_t s = mask_from_bit(sign[i]);
      const ProjPoint work = select(s, plus, minus);
      const ProjPoint other = select(s, minus, plus);
      ProjPoint kernel = xmul(ctx, work, cof, lc);
      // Skipping depends on the sampled point only; the slot is retried in a
      // later batch without spending budget.
      if (is_infinity(kernel)) {
        result.schedule.push_back(static_cast<std::uint32_t>(2 * i));
        plus = xmul(ctx, plus, Scalar(l), lc);
        minus = xmul(ctx, minus, Scalar(l), lc);
        continue;
      }

      const std::uint32_t real_bit = nonzero_bit(owed[i]);
      const std::uint32_t real = mask_from_bit(real_bit);
      maybe_corrupt(ctx, kernel, config, step);
      ProjPoint images[2] = {work, other};
      const IsogenyResult iso = xisog(ctx, curve, images, kernel, l, config.fault_check);
      fault |= iso.fault ? 1U : 0U;

      const ProjCurve next_curve = select(real, iso.curve, curve);
      const LadderConstants next_lc = ladder_constants(ctx, next_curve);
      // Dummy steps keep the old points and strip their l-torsion instead.
      const ProjPoint work_next = xmul(ctx, select(real, images[0], work), Scalar(l), next_lc);
      const ProjPoint other_next = xmul(ctx, select(real, images[1], other), Scalar(l), next_lc);
      plus = select(s, work_next, other_next);
      minus = select(s, other_next, work_next);
      curve = next_curve;
      lc = next_lc;

      result.schedule.push_back(static_cast<std::uint32_t>(2 * i + 1));
      owed[i] -= real_bit;
      --budget[i];
      ++result.isogenies[i];
      result.real_isogenies[i] += real_bit;
    }
  }

  if (fault != 0 || !curve_is_supersingular(ctx, curve, rng, config.validation_rounds)) {
    ActionResult f = failure(params, rng, fault != 0);
    f.isogenies = result.isogenies;
    f.real_isogenies = result.real_isogenies;
    f.schedule = result.schedule;
    f.counts = ctx.counts();
    return f;
  }
  result.key.a = affinize(ctx, curve);
  result.success = true;
  result.counts = ctx.counts();
  return result;
}

ActionResult group_action(const PublicKey& a, const PrivateKey& sk, const CsidhParams& params, RandomSource& rng,
                          const ActionConfig& config, OpTrace* trace) {
  return config.constant_time ? group_action_ct(a, sk, params, rng, config, trace)
                              : group_action_vartime(a, sk, params, rng, config, trace);
}

bool validate_pk(const FieldElement& a, const CsidhParams& params, RandomSource& rng, std::size_t rounds) {
  if (!validate_basic(a, params)) return false;
  FieldContext ctx(params);
  return curve_is_supersingular(ctx, affine_curve(ctx, ctx.to_mont(a)), rng, rounds);
}

PrivateKey random_private_key(const CsidhParams& params, RandomSource& rng) {
  PrivateKey sk;
  sk.e.resize(params.n_primes());
  const auto span = static_cast<std::uint32_t>(2 * params.max_exponent + 1);
  for (auto& v : sk.e) v = static_cast<std::int8_t>(static_cast<int>(rng.uniform(span)) - params.max_exponent);
  return sk;
}

PublicKey keygen(const PrivateKey& sk, const CsidhParams& params, RandomSource& rng, const ActionConfig& config) {
  const ActionResult r = group_action(base_public_key(), sk, params, rng, config);
  if (!r.success) throw FaultDetected();
  return {r.key.a, true};
}

FieldElement shared_secret(const PrivateKey& sk, const PublicKey& peer, const CsidhParams& params,
                           RandomSource& rng, const ActionConfig& config) {
  if (!config.skip_validation && !validate_pk(peer.a, params, rng, config.validation_rounds)) {
    throw InvalidPeerKey();
  }
  if (!validate_basic(peer.a, params)) throw InvalidPeerKey();
  const ActionResult r = group_action(peer, sk, params, rng, config);
  if (!r.success) throw FaultDetected();
  return r.key.a;
}

std::vector<std::uint8_t> encode_private_key(const PrivateKey& sk, const CsidhParams& params) {
  check_key_shape(sk, params);
  std::vector<std::uint8_t> out(std::begin(kSkMagic), std::end(kSkMagic));
  out.push_back(params.wire_id);
  for (std::int8_t v : sk.e) out.push_back(static_cast<std::uint8_t>(v));
  return out;
}

std::vector<std::uint8_t> encode_public_key(const PublicKey& pk, const CsidhParams& params) {
  std::vector<std::uint8_t> out(std::begin(kPkMagic), std::end(kPkMagic));
  out.push_back(params.wire_id);
  const std::vector<std::uint8_t> body = fp::to_bytes(pk.a, params);
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

namespace {

const CsidhParams& read_header(std::span<const std::uint8_t> bytes, const char (&magic)[8]) {
  if (bytes.size() < 9 || std::memcmp(bytes.data(), magic, 8) != 0) throw FormatError("bad key file magic");
  const CsidhParams* params = params_by_wire_id(bytes[8]);
  if (params == nullptr) throw FormatError("unknown parameter set id");
  return *params;
}

}  // namespace

std::pair<const CsidhParams*, PrivateKey> decode_private_key(std::span<const std::uint8_t> bytes) {
  const CsidhParams& params = read_header(bytes, kSkMagic);
  if (bytes.size() != 9 + params.n_primes()) throw FormatError("private key file has wrong length");
  PrivateKey sk;
  for (std::size_t i = 9; i < bytes.size(); ++i) {
    const auto v = static_cast<std::int8_t>(bytes[i]);
    if (v > params.max_exponent || v < -params.max_exponent) throw FormatError("private exponent out of range");
    sk.e.push_back(v);
  }
  return {&params, sk};
}

std::pair<const CsidhParams*, PublicKey> decode_public_key(std::span<const std::uint8_t> bytes) {
  const CsidhParams& params = read_header(bytes, kPkMagic);
  return {&params, PublicKey{fp::from_bytes(bytes.subspan(9), params), false}};
}

}  // namespace csidh
