#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "csidh/alu.hpp"
#include "csidh/field.hpp"
#include "csidh/params.hpp"

namespace csidh {
class RandomSource;
}

// Behavioral model of the arithmetic unit. Every operation returns the exact
// value together with a cycle cost that depends only on (operation, mode).
namespace csidh::datapath {

struct CycleCost {
  std::uint64_t cycles = 0;

  friend auto operator<=>(const CycleCost&, const CycleCost&) = default;
};

// Per-opcode cycle costs for both targets plus a flat per-operation overhead
// for control-unit cycles not spent in the ALU.
class CostTable {
 public:
  // Defaults: ADD/SUB 4, MUL_WIDE 22/23, MONT_MUL 87/89, MONT_REDUCE 65/66, overhead 0.
  static CostTable defaults();

  // Key-value text, one "key = value" per line, '#' comments. Keys are
  // "<opcode>.<mode>" (e.g. "mont_mul.fpga") and "overhead". Keys absent
  // from the text keep their default. Throws FormatError.
  static CostTable parse(std::string_view text);
  static CostTable load(const std::string& path);
  std::string to_text() const;

  [[nodiscard]] std::uint64_t cycles(Opcode op, AluMode mode) const;
  void set_cycles(Opcode op, AluMode mode, std::uint64_t cycles);
  [[nodiscard]] std::uint64_t overhead() const { return overhead_; }
  void set_overhead(std::uint64_t cycles) { overhead_ = cycles; }

  friend bool operator==(const CostTable&, const CostTable&) = default;

 private:
  std::array<std::uint64_t, kOpcodeCount> fpga_{};
  std::array<std::uint64_t, kOpcodeCount> asic_{};
  std::uint64_t overhead_ = 0;
};

// Carry-select adder pipeline latency (dual sums, then select).
inline constexpr std::uint64_t kAdderCycles = 2;

struct WordResult {
  std::vector<std::uint32_t> words;
  std::uint32_t flag = 0;  // carry-out (add) or borrow-out (sub)
  CycleCost cost;
};

// Equal-length operands; throws std::invalid_argument otherwise.
WordResult csel_add(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, std::uint32_t carry_in);
WordResult csel_sub(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, std::uint32_t borrow_in);

struct BoothResult {
  std::uint64_t product = 0;
  int partial_products = 0;  // always 17
  CycleCost cost;
};

// Radix-4 Booth multiply of two zero-padded 33-bit operands. Stage one sums
// partial products 0..8, stage two adds 9..16.
BoothResult booth_mul32(std::uint32_t x, std::uint32_t y, AluMode mode);

struct WideResult {
  WideProduct product;
  CycleCost cost;
};

// Two-batch chunk-parallel schoolbook multiplier. Operands are n-word
// vectors (n <= 16, n equal for both); the product has 2n words.
WideResult mul_wide(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, AluMode mode);
// Pipeline latency for n chunks per operand split over `batches` accumulators.
std::uint64_t mul_wide_latency(std::size_t n_chunks, std::size_t batches, AluMode mode);

struct FieldResult {
  FieldElement value;
  CycleCost cost;
};

FieldResult mod_add(const FieldElement& a, const FieldElement& b, const CsidhParams& params, AluMode mode,
                    const CostTable& table = CostTable::defaults());
FieldResult mod_sub(const FieldElement& a, const FieldElement& b, const CsidhParams& params, AluMode mode,
                    const CostTable& table = CostTable::defaults());
// Montgomery reduction built from mul_wide and csel_add/csel_sub.
FieldResult mont_reduce(const WideProduct& t, const CsidhParams& params, AluMode mode,
                        const CostTable& table = CostTable::defaults());
FieldResult mont_mul(const FieldElement& a, const FieldElement& b, const CsidhParams& params, AluMode mode,
                     const CostTable& table = CostTable::defaults());

// Masked ALU.

struct UnitFlags {
  bool adder = false;
  bool subtractor = false;
  bool multiplier = false;

  friend bool operator==(const UnitFlags&, const UnitFlags&) = default;
};

struct AluActivity {
  std::vector<UnitFlags> cycles;

  [[nodiscard]] bool all_units_active() const;
  // Distinct per-cycle flag patterns in first-seen order.
  [[nodiscard]] std::vector<UnitFlags> signature() const;

  friend bool operator==(const AluActivity&, const AluActivity&) = default;
};

struct IssueResult {
  FieldElement value;  // unused for MulWide
  WideProduct wide;    // MulWide only
  AluActivity activity;
  CycleCost cost;
};

// Runs one opcode on its own sub-unit (ADD on the adder, SUB on the
// subtractor, everything else on the multiplier); the other units stay idle.
// MontReduce reduces T = a + b * R, which requires b < p.
IssueResult issue(Opcode op, const FieldElement& a, const FieldElement& b, const CsidhParams& params,
                  AluMode mode, const CostTable& table = CostTable::defaults());

// As issue(), but every idle unit processes fresh random words each cycle
// and discards the result. Throws RngFailure / RngExhausted from the source.
IssueResult masked_issue(Opcode op, const FieldElement& a, const FieldElement& b, const CsidhParams& params,
                         AluMode mode, RandomSource& rng, const CostTable& table = CostTable::defaults());

}  // namespace csidh::datapath
