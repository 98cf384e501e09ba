#pragma once

#include <cstddef>
#include <utility>

#include "csidh/context.hpp"
#include "csidh/field.hpp"
#include "csidh/scalar.hpp"

// x-only arithmetic on Montgomery curves y^2 = x^3 + A x^2 + x. Points and
// curve coefficients are projective and live in the Montgomery domain.
namespace csidh {

struct ProjPoint {
  FieldElement x;
  FieldElement z;  // zero at infinity

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
};

// A = ax / az.
struct ProjCurve {
  FieldElement ax;
  FieldElement az;

  friend bool operator==(const ProjCurve&, const ProjCurve&) = default;
};

// (A + 2C : 4C) for A = ax, C = az.
struct LadderConstants {
  FieldElement a24;
  FieldElement c24;
};

enum class CurveSide { Curve, Twist };

inline ProjPoint select(std::uint32_t mask, const ProjPoint& if_set, const ProjPoint& if_clear) {
  return {cselect(mask, if_set.x, if_clear.x), cselect(mask, if_set.z, if_clear.z)};
}
inline ProjCurve select(std::uint32_t mask, const ProjCurve& if_set, const ProjCurve& if_clear) {
  return {cselect(mask, if_set.ax, if_clear.ax), cselect(mask, if_set.az, if_clear.az)};
}

ProjPoint infinity_point(const FieldContext& ctx);
ProjCurve affine_curve(const FieldContext& ctx, const FieldElement& a_mont);
ProjPoint affine_point(const FieldContext& ctx, const FieldElement& x_mont);

LadderConstants ladder_constants(FieldContext& ctx, const ProjCurve& curve);

ProjPoint xdbl(FieldContext& ctx, const ProjPoint& p, const LadderConstants& lc);
// x(P + Q) from x(P), x(Q) and x(P - Q).
ProjPoint xadd(FieldContext& ctx, const ProjPoint& p, const ProjPoint& q, const ProjPoint& diff);
// (x(2P), x(P + Q)) sharing the sums and differences of P.
std::pair<ProjPoint, ProjPoint> xdbladd(FieldContext& ctx, const ProjPoint& p, const ProjPoint& q,
                                        const ProjPoint& diff, const ProjCurve& curve);
std::pair<ProjPoint, ProjPoint> xdbladd(FieldContext& ctx, const ProjPoint& p, const ProjPoint& q,
                                        const ProjPoint& diff, const LadderConstants& lc);

// x([k]P) by a Montgomery ladder over exactly `bits` iterations (k's own bit
// length when bits is 0; bits must cover k). Infinity and the 2-torsion point
// x = 0 are handled by masked selection.
ProjPoint xmul(FieldContext& ctx, const ProjPoint& p, const Scalar& k, const ProjCurve& curve,
               std::size_t bits = 0);
ProjPoint xmul(FieldContext& ctx, const ProjPoint& p, const Scalar& k, const LadderConstants& lc,
               std::size_t bits = 0);

bool is_infinity(const ProjPoint& p);

// Curve when x^3 + A x^2 + x is a square (including zero), Twist otherwise.
CurveSide xtwist(FieldContext& ctx, const FieldElement& x, const FieldElement& a);
CurveSide xtwist(FieldContext& ctx, const ProjPoint& p, const ProjCurve& curve);

// Standard-domain affine values. Throw InfinityAffinize for a zero denominator.
FieldElement affinize(FieldContext& ctx, const ProjCurve& curve);
FieldElement affinize_point(FieldContext& ctx, const ProjPoint& p);

}  // namespace csidh
