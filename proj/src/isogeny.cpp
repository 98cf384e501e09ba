#include "csidh/isogeny.hpp"

#include <stdexcept>

namespace csidh {
namespace {

void check_degree(std::uint32_t l) {
  if (l < 3 || l % 2 == 0) throw std::invalid_argument("isogeny degree must be an odd prime >= 3");
}

// Steps a window (prev, cur) = ([i-1]K, [i]K) to ([i]K, [i+1]K).
struct KernelWindow {
  ProjPoint prev;
  ProjPoint cur;
  ProjPoint base;

  void advance(FieldContext& ctx, const LadderConstants& lc, std::uint32_t i) {
    ProjPoint next = i == 1 ? xdbl(ctx, cur, lc) : xadd(ctx, cur, base, prev);
    prev = cur;
    cur = next;
  }
};

}  // namespace

std::vector<ProjPoint> kernel_multiples(FieldContext& ctx, const ProjPoint& k, std::uint32_t d,
                                        const ProjCurve& curve) {
  FieldContext::Scope scope(ctx, ModuleTag::XIsog);
  const LadderConstants lc = ladder_constants(ctx, curve);
  std::vector<ProjPoint> out;
  out.reserve(d);
  KernelWindow w{infinity_point(ctx), k, k};
  for (std::uint32_t i = 1; i <= d; ++i) {
    out.push_back(w.cur);
    if (i < d) w.advance(ctx, lc, i);
  }
  return out;
}

IsogenyResult xisog(FieldContext& ctx, const ProjCurve& curve, std::span<ProjPoint> points, const ProjPoint& k,
                    std::uint32_t l, bool fault_check, IsogenyAccumulators* accumulators) {
  check_degree(l);
  FieldContext::Scope scope(ctx, ModuleTag::XIsog);
  const LadderConstants lc = ladder_constants(ctx, curve);

  IsogenyResult result;
  if (fault_check) result.fault = !is_infinity(xmul(ctx, k, Scalar(l), lc));

  const std::uint32_t d = (l - 1) / 2;
  std::vector<FieldElement> sums(points.size()), diffs(points.size());
  IsogenyAccumulators acc{ctx.one(), ctx.one(), std::vector<PointAccumulator>(points.size(), {ctx.one(), ctx.one()})};
  for (std::size_t j = 0; j < points.size(); ++j) {
    sums[j] = ctx.add(points[j].x, points[j].z);
    diffs[j] = ctx.sub(points[j].x, points[j].z);
  }

  KernelWindow w{infinity_point(ctx), k, k};
  for (std::uint32_t i = 1; i <= d; ++i) {
    const FieldElement ks = ctx.add(w.cur.x, w.cur.z);
    const FieldElement kd = ctx.sub(w.cur.x, w.cur.z);
    acc.pi_plus = ctx.mul(acc.pi_plus, ks);
    acc.pi_minus = ctx.mul(acc.pi_minus, kd);
    for (std::size_t j = 0; j < points.size(); ++j) {
      const FieldElement u = ctx.mul(diffs[j], ks);
      const FieldElement v = ctx.mul(sums[j], kd);
      acc.points[j].plus = ctx.mul(acc.points[j].plus, ctx.add(u, v));
      acc.points[j].minus = ctx.mul(acc.points[j].minus, ctx.sub(u, v));
    }
    if (i < d) w.advance(ctx, lc, i);
  }

  for (std::size_t j = 0; j < points.size(); ++j) {
    points[j] = {ctx.mul(points[j].x, ctx.sqr(acc.points[j].plus)),
                 ctx.mul(points[j].z, ctx.sqr(acc.points[j].minus))};
  }

  // codomain via the twisted Edwards coefficients a = A + 2C, d = A - 2C
  const FieldElement c2 = ctx.add(curve.az, curve.az);
  const FieldElement ea = ctx.add(curve.ax, c2);
  const FieldElement ed = ctx.sub(curve.ax, c2);
  FieldElement pp8 = acc.pi_plus;
  FieldElement pm8 = acc.pi_minus;
  for (int s = 0; s < 3; ++s) {
    pp8 = ctx.sqr(pp8);
    pm8 = ctx.sqr(pm8);
  }
  const FieldElement ea2 = ctx.mul(ctx.pow(ea, l), pp8);
  const FieldElement ed2 = ctx.mul(ctx.pow(ed, l), pm8);
  const FieldElement sum = ctx.add(ea2, ed2);
  result.curve = {ctx.add(sum, sum), ctx.sub(ea2, ed2)};

  if (accumulators != nullptr) *accumulators = std::move(acc);
  return result;
}

SingleIsogeny xisog(FieldContext& ctx, const ProjCurve& curve, const ProjPoint& p, const ProjPoint& k,
                    std::uint32_t l, bool fault_check) {
  ProjPoint image = p;
  const IsogenyResult r = xisog(ctx, curve, std::span<ProjPoint>(&image, 1), k, l, fault_check);
  return {r.curve, image, r.fault};
}

}  // namespace csidh
