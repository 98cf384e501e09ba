#include "csidh/context.hpp"

#include "csidh/errors.hpp"

namespace csidh {

FieldContext::FieldContext(const CsidhParams& params, OpTrace* trace) : params_(&params), trace_(trace) {}

FieldElement FieldContext::add(const FieldElement& a, const FieldElement& b) {
  record(Opcode::Add);
  return fp::add(a, b, *params_);
}

FieldElement FieldContext::sub(const FieldElement& a, const FieldElement& b) {
  record(Opcode::Sub);
  return fp::sub(a, b, *params_);
}

FieldElement FieldContext::mul(const FieldElement& a, const FieldElement& b) {
  record(Opcode::MontMul);
  return fp::mont_mul(a, b, *params_);
}

FieldElement FieldContext::pow(const FieldElement& a, const Scalar& e) {
  FieldElement r = one();
  for (std::size_t i = e.bit_length(); i-- > 0;) {
    r = sqr(r);
    if (e.bit(i)) r = mul(r, a);
  }
  return r;
}

FieldElement FieldContext::pow(const FieldElement& a, std::uint32_t e) { return pow(a, Scalar(e)); }

FieldElement FieldContext::inv(const FieldElement& a) {
  if (fp::is_zero(a)) throw ZeroInverse();
  return pow(a, params_->p_minus_2);
}

bool FieldContext::is_square(const FieldElement& a) {
  const FieldElement t = pow(a, params_->half_order);
  return (equal_mask(t, one()) | zero_mask(a)) != 0;
}

FieldElement FieldContext::from_mont(const FieldElement& a) {
  record(Opcode::MontReduce);
  return fp::from_mont(a, *params_);
}

FieldElement FieldContext::constant(std::uint64_t value) const {
  return fp::to_mont(fp::from_u64(value, *params_), *params_);
}

FieldElement FieldContext::to_mont(const FieldElement& standard) const { return fp::to_mont(standard, *params_); }

}  // namespace csidh
