#pragma once

#include "csidh/field.hpp"
#include "csidh/fp.hpp"
#include "csidh/params.hpp"
#include "csidh/scalar.hpp"
#include "csidh/trace.hpp"

namespace csidh {

// Montgomery-domain field arithmetic that counts, and optionally logs, each
// ALU operation under the currently active module tag.
class FieldContext {
 public:
  explicit FieldContext(const CsidhParams& params, OpTrace* trace = nullptr);

  [[nodiscard]] const CsidhParams& params() const { return *params_; }
  [[nodiscard]] const OpCounts& counts() const { return counts_; }
  [[nodiscard]] ModuleTag tag() const { return tag_; }

  FieldElement add(const FieldElement& a, const FieldElement& b);
  FieldElement sub(const FieldElement& a, const FieldElement& b);
  FieldElement neg(const FieldElement& a) { return sub(zero(), a); }
  FieldElement mul(const FieldElement& a, const FieldElement& b);
  FieldElement sqr(const FieldElement& a) { return mul(a, a); }
  // Square-and-multiply over the bits of a public exponent.
  FieldElement pow(const FieldElement& a, const Scalar& e);
  FieldElement pow(const FieldElement& a, std::uint32_t e);
  // Throws ZeroInverse.
  FieldElement inv(const FieldElement& a);
  // Zero counts as a square.
  bool is_square(const FieldElement& a);
  FieldElement from_mont(const FieldElement& a);

  // Unrecorded constants (Montgomery domain).
  [[nodiscard]] FieldElement zero() const { return {}; }
  [[nodiscard]] const FieldElement& one() const { return params_->r_mod_p; }
  [[nodiscard]] FieldElement constant(std::uint64_t value) const;
  [[nodiscard]] FieldElement to_mont(const FieldElement& standard) const;

  // Sets the module tag for its lifetime.
  class Scope {
   public:
    Scope(FieldContext& ctx, ModuleTag tag) : ctx_(ctx), saved_(ctx.tag_) { ctx_.tag_ = tag; }
    ~Scope() { ctx_.tag_ = saved_; }
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

   private:
    FieldContext& ctx_;
    ModuleTag saved_;
  };

 private:
  void record(Opcode op) {
    counts_.add(op, tag_);
    if (trace_ != nullptr) trace_->record(op, tag_);
  }

  const CsidhParams* params_;
  OpTrace* trace_;
  OpCounts counts_;
  ModuleTag tag_ = ModuleTag::Csidh;
};

}  // namespace csidh
