#include "csidh/alu.hpp"

#include <stdexcept>
#include <string>

namespace csidh {

std::string_view opcode_name(Opcode op) {
  switch (op) {
    case Opcode::Add: return "ADD";
    case Opcode::Sub: return "SUB";
    case Opcode::MulWide: return "MUL_WIDE";
    case Opcode::MontMul: return "MONT_MUL";
    case Opcode::MontReduce: return "MONT_REDUCE";
  }
  return "?";
}

std::string_view mode_name(AluMode mode) { return mode == AluMode::Asic ? "asic" : "fpga"; }

Opcode parse_opcode(std::string_view name) {
  for (Opcode op : kAllOpcodes) {
    if (opcode_name(op) == name) return op;
  }
  throw std::invalid_argument("unknown opcode: " + std::string(name));
}

AluMode parse_mode(std::string_view name) {
  if (name == "fpga") return AluMode::Fpga;
  if (name == "asic") return AluMode::Asic;
  throw std::invalid_argument("unknown ALU mode: " + std::string(name));
}

}  // namespace csidh
