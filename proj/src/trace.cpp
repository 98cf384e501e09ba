#include "csidh/trace.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "csidh/errors.hpp"

namespace csidh {

std::string_view module_name(ModuleTag tag) {
  switch (tag) {
    case ModuleTag::Csidh: return "CSIDH";
    case ModuleTag::XIsog: return "xISOG";
    case ModuleTag::XMul: return "xMUL";
    case ModuleTag::XDblAdd: return "xDBLADD";
    case ModuleTag::XAffinize: return "xAffinize";
    case ModuleTag::XTwist: return "xTWIST";
  }
  return "?";
}

std::string OpTrace::to_text() const {
  std::string out;
  out.reserve(entries_.size() * 16);
  for (const TraceEntry& e : entries_) {
    out += opcode_name(e.op);
    out += '\t';
    out += module_name(e.tag);
    out += '\n';
  }
  return out;
}

OpTrace OpTrace::parse(std::string_view text) {
  OpTrace trace;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    const std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) throw FormatError("trace line " + std::to_string(line_no) + ": missing tab");
    Opcode op;
    try {
      op = parse_opcode(line.substr(0, tab));
    } catch (const std::invalid_argument& e) {
      throw FormatError("trace line " + std::to_string(line_no) + ": " + e.what());
    }
    const std::string_view name = line.substr(tab + 1);
    bool found = false;
    for (ModuleTag tag : kAllModules) {
      if (module_name(tag) == name) {
        trace.record(op, tag);
        found = true;
        break;
      }
    }
    if (!found) throw FormatError("trace line " + std::to_string(line_no) + ": unknown module");
  }
  return trace;
}

bool trace_equal(const OpTrace& a, const OpTrace& b) { return a == b; }

std::uint64_t OpCounts::count(Opcode op) const {
  std::uint64_t n = 0;
  for (const auto& row : by_module) n += row[static_cast<std::size_t>(op)];
  return n;
}

std::uint64_t OpCounts::total() const {
  std::uint64_t n = 0;
  for (const auto& row : by_module) n += std::accumulate(row.begin(), row.end(), std::uint64_t{0});
  return n;
}

OpCounts OpCounts::from_trace(const OpTrace& trace) {
  OpCounts c;
  for (const TraceEntry& e : trace.entries()) c.add(e.op, e.tag);
  return c;
}

std::uint64_t module_cycles(const CycleLedger& ledger, ModuleTag tag, AluMode mode) {
  std::uint64_t cycles = 0;
  for (Opcode op : kAllOpcodes) {
    cycles += ledger.counts.count(op, tag) * (ledger.table.cycles(op, mode) + ledger.table.overhead());
  }
  return cycles;
}

std::uint64_t opcode_cycles(const CycleLedger& ledger, Opcode op, AluMode mode) {
  return ledger.counts.count(op) * (ledger.table.cycles(op, mode) + ledger.table.overhead());
}

std::uint64_t total_cycles(const CycleLedger& ledger, AluMode mode) {
  std::uint64_t cycles = 0;
  for (Opcode op : kAllOpcodes) cycles += opcode_cycles(ledger, op, mode);
  return cycles;
}

std::string ledger_text(const CycleLedger& ledger, AluMode mode) {
  std::ostringstream out;
  out << "mode = " << mode_name(mode) << '\n';
  out << "overhead = " << ledger.table.overhead() << '\n';
  for (Opcode op : kAllOpcodes) {
    out << "count." << opcode_name(op) << " = " << ledger.counts.count(op) << '\n';
    out << "cost." << opcode_name(op) << " = " << ledger.table.cycles(op, mode) << '\n';
  }
  for (ModuleTag tag : kAllModules) {
    out << "cycles." << module_name(tag) << " = " << module_cycles(ledger, tag, mode) << '\n';
  }
  out << "total = " << total_cycles(ledger, mode) << '\n';
  return out.str();
}

std::uint64_t calibrate_overhead(const CycleLedger& ledger, AluMode mode, std::uint64_t target_cycles) {
  CycleLedger base = ledger;
  base.table.set_overhead(0);
  const std::uint64_t raw = total_cycles(base, mode);
  const std::uint64_t ops = ledger.counts.total();
  if (ops == 0 || raw >= target_cycles) return 0;
  return static_cast<std::uint64_t>(
      std::llround(static_cast<double>(target_cycles - raw) / static_cast<double>(ops)));
}

}  // namespace csidh
