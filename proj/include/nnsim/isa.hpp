// Copyright 2026 The nnsim Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nnsim {

/// SIMD lane layout of a 32-bit word: h = 2x16, b = 4x8, n = 8x4 ("nibble"),
/// c = 16x2 ("crumb"). Lane 0 is the least significant.
enum class SimdFormat : uint8_t { H = 0, B = 1, N = 2, C = 3 };

constexpr unsigned lane_bits(SimdFormat f) {
  switch (f) {
    case SimdFormat::H: return 16;
    case SimdFormat::B: return 8;
    case SimdFormat::N: return 4;
    case SimdFormat::C: return 2;
  }
  return 0;
}

constexpr unsigned lane_count(SimdFormat f) { return 32 / lane_bits(f); }

const char* format_suffix(SimdFormat f);  // "h", "b", "n", "c"

/// Operand interpretation of the dot-product family. The first operand is
/// rs1 for the plain pv ops, the GP-RF operand (rs2) for compute&update, and
/// the activation register for the NN sum-of-dot-product.
enum class SignVariant : uint8_t {
  Up = 0,   // both unsigned
  Usp = 1,  // first unsigned, second signed
  Sp = 2,   // both signed
};

struct Signedness {
  bool first_signed = false;
  bool second_signed = false;
};

constexpr Signedness signedness_of(SignVariant v) {
  switch (v) {
    case SignVariant::Up: return {false, false};
    case SignVariant::Usp: return {false, true};
    case SignVariant::Sp: return {true, true};
  }
  return {false, false};
}

const char* sign_suffix(SignVariant v);  // "up", "usp", "sp"

/// Vector sub-operation selector for the pv.* opcode space.
enum class PvOp : uint8_t {
  Add = 0, Sub, Avg, Avgu, Max, Maxu, Min, Minu, Srl, Sra, Sll, Abs,
  Dotup, Dotusp, Dotsp, Sdotup, Sdotusp, Sdotsp,
};
constexpr unsigned kPvOpCount = 18;

constexpr bool pv_is_dot(PvOp k) { return k >= PvOp::Dotup; }
constexpr bool pv_accumulates(PvOp k) { return k >= PvOp::Sdotup; }
SignVariant pv_sign(PvOp k);  // dot ops only
const char* pv_name(PvOp k);

enum class Op : uint8_t {
  // RV32I subset + mul
  Add, Sub, And, Or, Xor, Mul,
  Addi, Slli, Srli, Srai, Lui, Auipc,
  Lw, Sw,
  Beq, Bne, Blt, Bge, Bltu, Bgeu, Jal, Jalr,
  // post-increment memory ops and scalar DSP helpers
  PLw, PSw, PMac, PClipu,
  // hardware loops
  LpSetup, LpSetupi, LpStarti, LpEndi, LpCount, LpCounti,
  // packed-SIMD opcode space (sub-op in pv)
  Pv,
  // fused mac&load extension
  CuSdot,   // compute&update: sdotp with NN-RF weight, unconditional reload
  NnSdot,   // sdotp with both operands in NN-RF, immediate-controlled update
  NnLw,     // load into an NN-RF register, rs1 post-incremented by 4
  // simulator control
  Barrier, Halt, Marker,
};

/// NN-RF register names for NnLw: 0..3 = w0..w3, 4..5 = a0..a1.
constexpr uint8_t kNnRegW0 = 0;
constexpr uint8_t kNnRegA0 = 4;

/// One decoded instruction. Fields that an op does not use must stay at their
/// defaults so that value equality matches codec round-trips.
struct Instruction {
  Op op = Op::Halt;
  PvOp pv = PvOp::Add;
  SimdFormat fmt = SimdFormat::H;
  SignVariant sign = SignVariant::Up;
  bool sc = false;
  uint8_t rd = 0;
  uint8_t rs1 = 0;
  uint8_t rs2 = 0;
  uint8_t nn_idx = 0;   // CuSdot weight register 0..3
  uint8_t nn_reg = 0;   // NnLw target register 0..5
  uint8_t imm5 = 0;     // NnSdot control immediate
  uint8_t loop = 0;     // hardware loop index 0/1
  int32_t imm = 0;      // I/S/B/U/J immediate, loop offset/count, marker id

  bool operator==(const Instruction&) const = default;
};

// NnSdot immediate fields (Fig-style layout): bit 0 selects the activation
// register, bits 2:1 the weight register, bit 3 requests an activation
// update, bit 4 a weight update. Bits 3 and 4 are mutually exclusive.
constexpr unsigned nn_imm_act(uint8_t imm5) { return imm5 & 1u; }
constexpr unsigned nn_imm_weight(uint8_t imm5) { return (imm5 >> 1) & 3u; }
constexpr bool nn_imm_upd_act(uint8_t imm5) { return (imm5 >> 3) & 1u; }
constexpr bool nn_imm_upd_weight(uint8_t imm5) { return (imm5 >> 4) & 1u; }

enum class InstructionClass : uint8_t {
  SimdMac = 0, Load, Store, MacLoad, AluScalar, SimdAlu, ControlFlow, Other,
};
constexpr unsigned kClassCount = 8;
const char* class_name(InstructionClass c);

InstructionClass classify(const Instruction& instr);

class IsaError : public std::runtime_error {
 public:
  enum class Kind { IllegalInstruction, IllegalOperand, Unencodable };
  IsaError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Decodes a 32-bit word. Throws IsaError on unknown opcodes, nonzero
/// reserved fields, or an NnSdot word with both update bits set.
Instruction decode(uint32_t word);

/// Encodes an instruction. Throws IsaError::Kind::Unencodable when a field
/// violates the type invariants (register index, immediate range, ...).
uint32_t encode(const Instruction& instr);

/// The opcode map and field layouts rendered as markdown. This is the
/// contract for the assembler/disassembler; it is produced from the same
/// tables the codec uses.
std::string encoding_reference_markdown();

}  // namespace nnsim
