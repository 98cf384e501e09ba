#include "csidh/datapath.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "csidh/errors.hpp"
#include "csidh/kernels.hpp"
#include "csidh/rng.hpp"

namespace csidh::datapath {
namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

std::size_t index_of(Opcode op) { return static_cast<std::size_t>(op); }

std::string lower_key(Opcode op) {
  std::string s(opcode_name(op));
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_count(std::string_view value, std::size_t line_no) {
  if (value.empty() || !std::all_of(value.begin(), value.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw FormatError("cost table line " + std::to_string(line_no) + ": expected a non-negative integer");
  }
  return std::stoull(std::string(value));
}

// Stage 2 of the carry-select adder: ripple the real carry through the
// registered dual results.
u32 select_chain(std::span<const u32> s0, std::span<const u32> c0, std::span<const u32> s1,
                 std::span<const u32> c1, u32 carry, std::vector<u32>& out) {
  out.resize(s0.size());
  for (std::size_t i = 0; i < s0.size(); ++i) {
    const u32 mask = mask_from_bit(carry);
    out[i] = (s1[i] & mask) | (s0[i] & ~mask);
    carry = (c1[i] & mask) | (c0[i] & ~mask);
  }
  return carry;
}

std::span<const u32> active(const FieldElement& a, const CsidhParams& params) {
  return {a.words.data(), params.n_words};
}

// Low n words to a field element; callers guarantee the value is < p.
FieldElement to_element(std::span<const u32> words) {
  FieldElement out;
  std::copy(words.begin(), words.end(), out.words.begin());
  return out;
}

// Subtracts p once when v (n words plus top bit) is >= p.
FieldElement reduce_once(std::span<const u32> v, u32 top, const CsidhParams& params) {
  const WordResult diff = csel_sub(v, active(params.p, params), 0);
  const u32 keep_diff = mask_from_bit(top | (diff.flag ^ 1U));
  FieldElement out;
  for (std::size_t i = 0; i < v.size(); ++i) out.words[i] = (diff.words[i] & keep_diff) | (v[i] & ~keep_diff);
  return out;
}

}  // namespace

// ---- cost table ----

CostTable CostTable::defaults() {
  CostTable t;
  t.fpga_ = {4, 4, 22, 87, 65};
  t.asic_ = {4, 4, 23, 89, 66};
  t.overhead_ = 0;
  return t;
}

std::uint64_t CostTable::cycles(Opcode op, AluMode mode) const {
  return mode == AluMode::Asic ? asic_[index_of(op)] : fpga_[index_of(op)];
}

void CostTable::set_cycles(Opcode op, AluMode mode, std::uint64_t cycles) {
  (mode == AluMode::Asic ? asic_ : fpga_)[index_of(op)] = cycles;
}

CostTable CostTable::parse(std::string_view text) {
  CostTable table = defaults();
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError("cost table line " + std::to_string(line_no) + ": missing '='");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::uint64_t value = parse_count(trim(line.substr(eq + 1)), line_no);
    if (key == "overhead") {
      table.overhead_ = value;
      continue;
    }
    bool matched = false;
    for (Opcode op : kAllOpcodes) {
      for (AluMode mode : {AluMode::Fpga, AluMode::Asic}) {
        if (key == lower_key(op) + "." + std::string(mode_name(mode))) {
          table.set_cycles(op, mode, value);
          matched = true;
        }
      }
    }
    if (!matched) throw FormatError("cost table line " + std::to_string(line_no) + ": unknown key");
  }
  return table;
}

CostTable CostTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open cost table: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string CostTable::to_text() const {
  std::ostringstream out;
  for (Opcode op : kAllOpcodes) {
    for (AluMode mode : {AluMode::Fpga, AluMode::Asic}) {
      out << lower_key(op) << '.' << mode_name(mode) << " = " << cycles(op, mode) << '\n';
    }
  }
  out << "overhead = " << overhead_ << '\n';
  return out.str();
}

// ---- adder / subtractor ----

WordResult csel_add(std::span<const u32> a, std::span<const u32> b, u32 carry_in) {
  if (a.size() != b.size()) throw std::invalid_argument("csel_add: operand length mismatch");
  const std::size_t n = a.size();
  std::vector<u32> s0(n), c0(n), s1(n), c1(n);
  kernels::dual_sums(a, b, s0, c0, s1, c1);
  WordResult out;
  out.flag = select_chain(s0, c0, s1, c1, carry_in & 1U, out.words);
  out.cost.cycles = kAdderCycles;
  return out;
}

WordResult csel_sub(std::span<const u32> a, std::span<const u32> b, u32 borrow_in) {
  if (a.size() != b.size()) throw std::invalid_argument("csel_sub: operand length mismatch");
  const std::size_t n = a.size();
  std::vector<u32> d0(n), b0(n), d1(n), b1(n);
  kernels::dual_diffs(a, b, d0, b0, d1, b1);
  WordResult out;
  out.flag = select_chain(d0, b0, d1, b1, borrow_in & 1U, out.words);
  out.cost.cycles = kAdderCycles;
  return out;
}

// ---- Booth 32x32 ----

BoothResult booth_mul32(u32 x, u32 y, AluMode mode) {
  constexpr int kDigits = 17;  // ceil(34 / 2) digits cover the zero-padded 33-bit operand
  const __int128 multiplicand = static_cast<__int128>(x);
  const u64 yy = static_cast<u64>(y) << 1;  // implicit y[-1] = 0 at bit 0
  __int128 partial[kDigits];
  for (int i = 0; i < kDigits; ++i) {
    const unsigned group = static_cast<unsigned>((yy >> (2 * i)) & 7U);  // y[2i+1] y[2i] y[2i-1]
    static constexpr int kDigit[8] = {0, 1, 1, 2, -2, -1, -1, 0};
    partial[i] = multiplicand * kDigit[group] * (static_cast<__int128>(1) << (2 * i));
  }
  __int128 stage1 = 0;
  for (int i = 0; i < 9; ++i) stage1 += partial[i];
  __int128 stage2 = stage1;
  for (int i = 9; i < kDigits; ++i) stage2 += partial[i];

  BoothResult out;
  out.product = static_cast<u64>(stage2);
  out.partial_products = kDigits;
  out.cost.cycles = mode == AluMode::Asic ? 2 : 1;
  return out;
}

// ---- wide multiplier ----

std::uint64_t mul_wide_latency(std::size_t n_chunks, std::size_t batches, AluMode mode) {
  if (n_chunks == 0 || batches == 0) return 0;
  batches = std::min(batches, n_chunks);
  const std::uint64_t per_batch = (n_chunks + batches - 1) / batches;
  const std::uint64_t mul32 = mode == AluMode::Asic ? 2 : 1;
  // init, first chunk through partials / fold / accumulate, then one
  // accumulate plus one stall per further chunk, then the merge adds
  std::uint64_t cycles = 1 + mul32 + kAdderCycles + kAdderCycles + (per_batch - 1) * 2;
  if (batches > 1) cycles += kAdderCycles;
  return cycles;
}

WideResult mul_wide(std::span<const u32> a, std::span<const u32> b, AluMode mode) {
  const std::size_t n = a.size();
  if (b.size() != n || n == 0 || n > kMaxWords) throw std::invalid_argument("mul_wide: bad operand width");
  const std::size_t batches = n > 1 ? 2 : 1;
  const std::size_t split = (n + 1) / 2;

  std::vector<u32> acc_lower(2 * n, 0), acc_upper(2 * n, 0);
  std::vector<u32> lo(n), hi(n), lo_ext(n + 1), hi_shift(n + 1), shifted(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    if (mode == AluMode::Asic) {
      for (std::size_t j = 0; j < n; ++j) {
        const u64 p = booth_mul32(a[k], b[j], mode).product;
        lo[j] = static_cast<u32>(p);
        hi[j] = static_cast<u32>(p >> 32);
      }
    } else {
      kernels::row_products(a[k], b, lo, hi);
    }
    // fold overlapping halves into an (n+1)-word chunk product
    std::copy(lo.begin(), lo.end(), lo_ext.begin());
    lo_ext[n] = 0;
    hi_shift[0] = 0;
    std::copy(hi.begin(), hi.end(), hi_shift.begin() + 1);
    const WordResult chunk = csel_add(lo_ext, hi_shift, 0);

    std::fill(shifted.begin(), shifted.end(), 0);
    std::copy(chunk.words.begin(), chunk.words.end(), shifted.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<u32>& acc = (batches == 1 || k < split) ? acc_lower : acc_upper;
    acc = csel_add(acc, shifted, 0).words;
  }
  const WordResult merged = csel_add(acc_lower, acc_upper, 0);

  WideResult out;
  std::copy(merged.words.begin(), merged.words.end(), out.product.words.begin());
  out.cost.cycles = mul_wide_latency(n, batches, mode);
  return out;
}

// ---- modular operations ----

FieldResult mod_add(const FieldElement& a, const FieldElement& b, const CsidhParams& params, AluMode mode,
                    const CostTable& table) {
  const WordResult sum = csel_add(active(a, params), active(b, params), 0);
  FieldResult out{reduce_once(sum.words, sum.flag, params), {}};
  out.cost.cycles = table.cycles(Opcode::Add, mode);
  return out;
}

FieldResult mod_sub(const FieldElement& a, const FieldElement& b, const CsidhParams& params, AluMode mode,
                    const CostTable& table) {
  const std::size_t n = params.n_words;
  const WordResult diff = csel_sub(active(a, params), active(b, params), 0);
  std::vector<u32> correction(n);
  const u32 mask = mask_from_bit(diff.flag);
  for (std::size_t i = 0; i < n; ++i) correction[i] = params.p.words[i] & mask;
  const WordResult fixed = csel_add(diff.words, correction, 0);
  FieldResult out{to_element(fixed.words), {}};
  out.cost.cycles = table.cycles(Opcode::Sub, mode);
  return out;
}

FieldResult mont_reduce(const WideProduct& t, const CsidhParams& params, AluMode mode, const CostTable& table) {
  const std::size_t n = params.n_words;
  const std::span<const u32> t_all(t.words.data(), 2 * n);
  const WideResult m_full = mul_wide(t_all.first(n), active(params.pinv, params), mode);
  const std::span<const u32> m(m_full.product.words.data(), n);  // mod R
  const WideResult mp = mul_wide(m, active(params.p, params), mode);
  const WordResult sum = csel_add(t_all, std::span<const u32>(mp.product.words.data(), 2 * n), 0);
  // low half is zero by construction; the upper half plus carry is < 2p
  FieldResult out{reduce_once(std::span<const u32>(sum.words).subspan(n), sum.flag, params), {}};
  out.cost.cycles = table.cycles(Opcode::MontReduce, mode);
  return out;
}

FieldResult mont_mul(const FieldElement& a, const FieldElement& b, const CsidhParams& params, AluMode mode,
                     const CostTable& table) {
  const WideResult t = mul_wide(active(a, params), active(b, params), mode);
  FieldResult out{mont_reduce(t.product, params, mode, table).value, {}};
  out.cost.cycles = table.cycles(Opcode::MontMul, mode);
  return out;
}

// ---- masked ALU ----

bool AluActivity::all_units_active() const {
  return std::all_of(cycles.begin(), cycles.end(),
                     [](const UnitFlags& f) { return f.adder && f.subtractor && f.multiplier; });
}

std::vector<UnitFlags> AluActivity::signature() const {
  std::vector<UnitFlags> out;
  for (const UnitFlags& f : cycles) {
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  return out;
}

namespace {

IssueResult run_opcode(Opcode op, const FieldElement& a, const FieldElement& b, const CsidhParams& params,
                       AluMode mode, const CostTable& table) {
  IssueResult out;
  FieldResult r;
  switch (op) {
    case Opcode::Add: r = mod_add(a, b, params, mode, table); break;
    case Opcode::Sub: r = mod_sub(a, b, params, mode, table); break;
    case Opcode::MontMul: r = mont_mul(a, b, params, mode, table); break;
    case Opcode::MulWide: {
      const WideResult w = mul_wide(active(a, params), active(b, params), mode);
      out.wide = w.product;
      out.cost.cycles = table.cycles(Opcode::MulWide, mode);
      return out;
    }
    case Opcode::MontReduce: {
      WideProduct t;
      std::copy_n(a.words.begin(), params.n_words, t.words.begin());
      std::copy_n(b.words.begin(), params.n_words, t.words.begin() + static_cast<std::ptrdiff_t>(params.n_words));
      r = mont_reduce(t, params, mode, table);
      break;
    }
    default: throw std::invalid_argument("unknown ALU opcode");
  }
  out.value = r.value;
  out.cost = r.cost;
  return out;
}

UnitFlags designated(Opcode op) {
  UnitFlags f;
  f.adder = op == Opcode::Add;
  f.subtractor = op == Opcode::Sub;
  f.multiplier = !f.adder && !f.subtractor;
  return f;
}

void fill_words(RandomSource& rng, std::vector<u32>& words) {
  rng.fill(std::span<std::uint8_t>(reinterpret_cast<std::uint8_t*>(words.data()), words.size() * sizeof(u32)));
}

}  // namespace

IssueResult issue(Opcode op, const FieldElement& a, const FieldElement& b, const CsidhParams& params,
                  AluMode mode, const CostTable& table) {
  IssueResult out = run_opcode(op, a, b, params, mode, table);
  out.activity.cycles.assign(out.cost.cycles, designated(op));
  return out;
}

IssueResult masked_issue(Opcode op, const FieldElement& a, const FieldElement& b, const CsidhParams& params,
                         AluMode mode, RandomSource& rng, const CostTable& table) {
  IssueResult out = run_opcode(op, a, b, params, mode, table);
  const std::size_t n = params.n_words;
  const UnitFlags real = designated(op);

  std::vector<u32> x(n), y(n), s0(n), c0(n), s1(n), c1(n);
  std::vector<u32> chunk(1), row(n), lo(n), hi(n);
  out.activity.cycles.reserve(out.cost.cycles);
  for (std::uint64_t cycle = 0; cycle < out.cost.cycles; ++cycle) {
    UnitFlags flags = real;
    if (!real.adder) {
      fill_words(rng, x);
      fill_words(rng, y);
      kernels::dual_sums(x, y, s0, c0, s1, c1);
      flags.adder = true;
    }
    if (!real.subtractor) {
      fill_words(rng, x);
      fill_words(rng, y);
      kernels::dual_diffs(x, y, s0, c0, s1, c1);
      flags.subtractor = true;
    }
    if (!real.multiplier) {
      fill_words(rng, chunk);
      fill_words(rng, row);
      kernels::row_products(chunk[0], row, lo, hi);
      flags.multiplier = true;
    }
    out.activity.cycles.push_back(flags);
  }
  return out;
}

}  // namespace csidh::datapath
