#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "csidh/alu.hpp"
#include "csidh/datapath.hpp"
#include "csidh/params.hpp"

namespace csidh {

// Control-unit module that issued an ALU operation.
enum class ModuleTag : std::uint8_t { Csidh, XIsog, XMul, XDblAdd, XAffinize, XTwist };
inline constexpr std::size_t kModuleCount = 6;
inline constexpr std::array<ModuleTag, kModuleCount> kAllModules = {
    ModuleTag::Csidh, ModuleTag::XIsog, ModuleTag::XMul, ModuleTag::XDblAdd, ModuleTag::XAffinize, ModuleTag::XTwist};

std::string_view module_name(ModuleTag tag);  // "CSIDH", "xISOG", "xMUL", "xDBLADD", "xAffinize", "xTWIST"

struct TraceEntry {
  Opcode op;
  ModuleTag tag;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

// Ordered ALU operation log. Holds no operand values.
class OpTrace {
 public:
  void record(Opcode op, ModuleTag tag) { entries_.push_back({op, tag}); }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] const std::vector<TraceEntry>& entries() const { return entries_; }
  void clear() { entries_.clear(); }

  // One "OPCODE\tmodule" line per entry.
  [[nodiscard]] std::string to_text() const;
  // Inverse of to_text(); throws FormatError.
  static OpTrace parse(std::string_view text);

  friend bool operator==(const OpTrace&, const OpTrace&) = default;

 private:
  std::vector<TraceEntry> entries_;
};

bool trace_equal(const OpTrace& a, const OpTrace& b);

// Operation counts split by issuing module.
struct OpCounts {
  std::array<std::array<std::uint64_t, kOpcodeCount>, kModuleCount> by_module{};

  void add(Opcode op, ModuleTag tag, std::uint64_t n = 1) {
    by_module[static_cast<std::size_t>(tag)][static_cast<std::size_t>(op)] += n;
  }
  [[nodiscard]] std::uint64_t count(Opcode op, ModuleTag tag) const {
    return by_module[static_cast<std::size_t>(tag)][static_cast<std::size_t>(op)];
  }
  [[nodiscard]] std::uint64_t count(Opcode op) const;
  [[nodiscard]] std::uint64_t total() const;

  static OpCounts from_trace(const OpTrace& trace);

  friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

struct CycleLedger {
  OpCounts counts;
  datapath::CostTable table = datapath::CostTable::defaults();
};

// Sum over operations of count * (cost(op, mode) + overhead).
std::uint64_t total_cycles(const CycleLedger& ledger, AluMode mode);
std::uint64_t module_cycles(const CycleLedger& ledger, ModuleTag tag, AluMode mode);
std::uint64_t opcode_cycles(const CycleLedger& ledger, Opcode op, AluMode mode);

// "key = value" lines: counts, costs, per-module and overall totals.
std::string ledger_text(const CycleLedger& ledger, AluMode mode);

struct EstimateConfig {
  AluMode mode = AluMode::Fpga;
  datapath::CostTable table = datapath::CostTable::defaults();
  std::vector<std::uint8_t> seed = {'c', 's', 'i', 'd', 'h'};
  bool fault_check = false;
  bool keep_trace = false;
  // Private key to run; nullopt draws one from the seeded stream.
  std::optional<std::vector<std::int8_t>> private_key;
};

struct KeygenEstimate {
  std::uint64_t cycles = 0;
  std::array<std::uint64_t, kModuleCount> module_cycles{};
  CycleLedger ledger;
  OpTrace trace;  // filled when keep_trace
  bool success = false;
};

// Constant-time key generation from the base curve, priced by the ledger.
KeygenEstimate estimate_keygen(const CsidhParams& params, const EstimateConfig& config = {});

// Overhead per operation that brings the total closest to target_cycles.
std::uint64_t calibrate_overhead(const CycleLedger& ledger, AluMode mode, std::uint64_t target_cycles);

}  // namespace csidh
