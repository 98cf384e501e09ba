#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "csidh/context.hpp"
#include "csidh/curve.hpp"

namespace csidh {

// Running products for one evaluated point: prod (u + v) and prod (u - v).
struct PointAccumulator {
  FieldElement plus;
  FieldElement minus;
};

struct IsogenyAccumulators {
  FieldElement pi_plus;   // prod (X_i + Z_i)
  FieldElement pi_minus;  // prod (X_i - Z_i)
  std::vector<PointAccumulator> points;
};

// x([i]K) for i = 1..d: K, then [2]K by doubling, then differential additions.
std::vector<ProjPoint> kernel_multiples(FieldContext& ctx, const ProjPoint& k, std::uint32_t d,
                                        const ProjCurve& curve);

struct IsogenyResult {
  ProjCurve curve;
  bool fault = false;
};

// Odd-degree isogeny with kernel <K>, K of order l on `curve`. Maps every
// point in `points` in place and returns the codomain. With fault_check,
// [l]K is recomputed and fault is set unless it is the point at infinity.
// Points in <K> map to infinity.
IsogenyResult xisog(FieldContext& ctx, const ProjCurve& curve, std::span<ProjPoint> points, const ProjPoint& k,
                    std::uint32_t l, bool fault_check, IsogenyAccumulators* accumulators = nullptr);

struct SingleIsogeny {
  ProjCurve curve;
  ProjPoint image;
  bool fault = false;
};

SingleIsogeny xisog(FieldContext& ctx, const ProjCurve& curve, const ProjPoint& p, const ProjPoint& k,
                    std::uint32_t l, bool fault_check);

}  // namespace csidh
