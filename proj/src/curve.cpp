#include "csidh/curve.hpp"

#include <stdexcept>
#include <tuple>

#include "csidh/errors.hpp"

namespace csidh {

ProjPoint infinity_point(const FieldContext& ctx) { return {ctx.one(), ctx.zero()}; }

ProjCurve affine_curve(const FieldContext& ctx, const FieldElement& a_mont) { return {a_mont, ctx.one()}; }

ProjPoint affine_point(const FieldContext& ctx, const FieldElement& x_mont) { return {x_mont, ctx.one()}; }

LadderConstants ladder_constants(FieldContext& ctx, const ProjCurve& curve) {
  const FieldElement c2 = ctx.add(curve.az, curve.az);
  return {ctx.add(curve.ax, c2), ctx.add(c2, c2)};
}

ProjPoint xdbl(FieldContext& ctx, const ProjPoint& p, const LadderConstants& lc) {
  FieldContext::Scope scope(ctx, ModuleTag::XDblAdd);
  const FieldElement s = ctx.sqr(ctx.add(p.x, p.z));
  const FieldElement d = ctx.sqr(ctx.sub(p.x, p.z));
  const FieldElement cd = ctx.mul(lc.c24, d);
  const FieldElement t = ctx.sub(s, d);  // 4XZ
  return {ctx.mul(cd, s), ctx.mul(ctx.add(cd, ctx.mul(lc.a24, t)), t)};
}

ProjPoint xadd(FieldContext& ctx, const ProjPoint& p, const ProjPoint& q, const ProjPoint& diff) {
  FieldContext::Scope scope(ctx, ModuleTag::XDblAdd);
  const FieldElement a = ctx.mul(ctx.add(p.x, p.z), ctx.sub(q.x, q.z));
  const FieldElement b = ctx.mul(ctx.sub(p.x, p.z), ctx.add(q.x, q.z));
  return {ctx.mul(diff.z, ctx.sqr(ctx.add(a, b))), ctx.mul(diff.x, ctx.sqr(ctx.sub(a, b)))};
}

namespace {

// Shared body of xdbladd; ops are tagged with the caller's scope.
std::pair<ProjPoint, ProjPoint> dbladd_body(FieldContext& ctx, const ProjPoint& p, const ProjPoint& q,
                                            const ProjPoint& diff, const LadderConstants& lc) {
  const FieldElement ps = ctx.add(p.x, p.z);
  const FieldElement pd = ctx.sub(p.x, p.z);
  const FieldElement s2 = ctx.sqr(ps);
  const FieldElement d2 = ctx.sqr(pd);
  const FieldElement a = ctx.mul(ps, ctx.sub(q.x, q.z));
  const FieldElement b = ctx.mul(pd, ctx.add(q.x, q.z));

  const FieldElement cd = ctx.mul(lc.c24, d2);
  const FieldElement t = ctx.sub(s2, d2);
  ProjPoint dbl{ctx.mul(cd, s2), ctx.mul(ctx.add(cd, ctx.mul(lc.a24, t)), t)};
  ProjPoint sum{ctx.mul(diff.z, ctx.sqr(ctx.add(a, b))), ctx.mul(diff.x, ctx.sqr(ctx.sub(a, b)))};
  return {dbl, sum};
}

}  // namespace

std::pair<ProjPoint, ProjPoint> xdbladd(FieldContext& ctx, const ProjPoint& p, const ProjPoint& q,
                                        const ProjPoint& diff, const LadderConstants& lc) {
  FieldContext::Scope scope(ctx, ModuleTag::XDblAdd);
  return dbladd_body(ctx, p, q, diff, lc);
}

std::pair<ProjPoint, ProjPoint> xdbladd(FieldContext& ctx, const ProjPoint& p, const ProjPoint& q,
                                        const ProjPoint& diff, const ProjCurve& curve) {
  FieldContext::Scope scope(ctx, ModuleTag::XDblAdd);
  return dbladd_body(ctx, p, q, diff, ladder_constants(ctx, curve));
}

ProjPoint xmul(FieldContext& ctx, const ProjPoint& p, const Scalar& k, const LadderConstants& lc,
               std::size_t bits) {
  if (bits == 0) bits = k.bit_length();
  if (bits < k.bit_length()) throw std::invalid_argument("xmul: bit bound shorter than scalar");
  FieldContext::Scope scope(ctx, ModuleTag::XMul);

  const ProjPoint inf = infinity_point(ctx);
  ProjPoint r0 = inf;
  ProjPoint r1 = p;
  std::uint32_t prev = 0;
  for (std::size_t i = bits; i-- > 0;) {
    const std::uint32_t bit = k.bit(i) ? 1U : 0U;
    const std::uint32_t swap = mask_from_bit(bit ^ prev);
    cswap(swap, r0.x, r1.x);
    cswap(swap, r0.z, r1.z);
    prev = bit;
    std::tie(r0, r1) = dbladd_body(ctx, r0, r1, p, lc);
  }
  const std::uint32_t swap = mask_from_bit(prev);
  cswap(swap, r0.x, r1.x);
  cswap(swap, r0.z, r1.z);

  // the ladder degenerates for inputs with X = 0 or Z = 0
  const ProjPoint two_torsion = select(mask_from_bit(k.bit(0) ? 1U : 0U), p, inf);
  const ProjPoint fixed = select(zero_mask(p.x), two_torsion, r0);
  return select(zero_mask(p.z), inf, fixed);
}

ProjPoint xmul(FieldContext& ctx, const ProjPoint& p, const Scalar& k, const ProjCurve& curve, std::size_t bits) {
  FieldContext::Scope scope(ctx, ModuleTag::XMul);
  return xmul(ctx, p, k, ladder_constants(ctx, curve), bits);
}

bool is_infinity(const ProjPoint& p) { return zero_mask(p.z) != 0; }

CurveSide xtwist(FieldContext& ctx, const FieldElement& x, const FieldElement& a) {
  FieldContext::Scope scope(ctx, ModuleTag::XTwist);
  // x^3 + A x^2 + x = x ((x + A) x + 1)
  const FieldElement inner = ctx.add(ctx.mul(ctx.add(x, a), x), ctx.one());
  return ctx.is_square(ctx.mul(x, inner)) ? CurveSide::Curve : CurveSide::Twist;
}

CurveSide xtwist(FieldContext& ctx, const ProjPoint& p, const ProjCurve& curve) {
  FieldContext::Scope scope(ctx, ModuleTag::XTwist);
  // Az^2 Z^4 f(X/Z) = Az X Z (Az X^2 + Ax X Z + Az Z^2)
  const FieldElement xz = ctx.mul(p.x, p.z);
  const FieldElement quad = ctx.add(ctx.mul(curve.az, ctx.add(ctx.sqr(p.x), ctx.sqr(p.z))), ctx.mul(curve.ax, xz));
  return ctx.is_square(ctx.mul(ctx.mul(curve.az, xz), quad)) ? CurveSide::Curve : CurveSide::Twist;
}

FieldElement affinize(FieldContext& ctx, const ProjCurve& curve) {
  FieldContext::Scope scope(ctx, ModuleTag::XAffinize);
  if (fp::is_zero(curve.az)) throw InfinityAffinize();
  return ctx.from_mont(ctx.mul(curve.ax, ctx.inv(curve.az)));
}

FieldElement affinize_point(FieldContext& ctx, const ProjPoint& p) {
  FieldContext::Scope scope(ctx, ModuleTag::XAffinize);
  if (fp::is_zero(p.z)) throw InfinityAffinize();
  return ctx.from_mont(ctx.mul(p.x, ctx.inv(p.z)));
}

}  // namespace csidh
