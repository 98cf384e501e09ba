#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace csidh {

// ALU command set seen by the control unit.
enum class Opcode : std::uint8_t { Add, Sub, MulWide, MontMul, MontReduce };
inline constexpr std::size_t kOpcodeCount = 5;
inline constexpr std::array<Opcode, kOpcodeCount> kAllOpcodes = {Opcode::Add, Opcode::Sub, Opcode::MulWide,
                                                                 Opcode::MontMul, Opcode::MontReduce};

enum class AluMode : std::uint8_t { Fpga, Asic };

std::string_view opcode_name(Opcode op);  // "ADD", "SUB", "MUL_WIDE", "MONT_MUL", "MONT_REDUCE"
std::string_view mode_name(AluMode mode);  // "fpga", "asic"
// Throw std::invalid_argument on unknown names.
Opcode parse_opcode(std::string_view name);
AluMode parse_mode(std::string_view name);

}  // namespace csidh
