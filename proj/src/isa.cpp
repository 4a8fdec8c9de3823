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

#include "nnsim/isa.hpp"

#include <array>
#include <sstream>

namespace nnsim {

namespace {

// Major opcodes. Base instructions keep their RV32I/M encodings; the
// extension lives in the custom-0/custom-1 spaces and the 1010111 vector
// space. 1111011 hosts the hardware-loop group.
constexpr uint32_t kOpcLoad = 0b0000011;
constexpr uint32_t kOpcOpImm = 0b0010011;
constexpr uint32_t kOpcAuipc = 0b0010111;
constexpr uint32_t kOpcStore = 0b0100011;
constexpr uint32_t kOpcOp = 0b0110011;
constexpr uint32_t kOpcLui = 0b0110111;
constexpr uint32_t kOpcBranch = 0b1100011;
constexpr uint32_t kOpcJalr = 0b1100111;
constexpr uint32_t kOpcJal = 0b1101111;
constexpr uint32_t kOpcCustom0 = 0b0001011;  // p.lw, fused mac&load, system
constexpr uint32_t kOpcCustom1 = 0b0101011;  // p.sw, p.mac, p.clipu
constexpr uint32_t kOpcPv = 0b1010111;       // packed-SIMD space
constexpr uint32_t kOpcHwloop = 0b1111011;

// custom-0 funct3 assignments
constexpr uint32_t kF3PLw = 0b010;
constexpr uint32_t kF3CuSdot = 0b011;
constexpr uint32_t kF3NnSdot = 0b100;
constexpr uint32_t kF3NnLw = 0b101;
constexpr uint32_t kF3Sys = 0b110;

// custom-1 funct3 assignments
constexpr uint32_t kF3PMac = 0b000;
constexpr uint32_t kF3PClipu = 0b001;
constexpr uint32_t kF3PSw = 0b010;

// system sub-ops (rs2 slot of the custom-0/sys minor space)
constexpr uint32_t kSysHalt = 0;
constexpr uint32_t kSysBarrier = 1;
constexpr uint32_t kSysMarker = 2;

constexpr uint32_t bits(uint32_t w, unsigned hi, unsigned lo) {
  return (w >> lo) & ((1u << (hi - lo + 1)) - 1);
}

constexpr int32_t sign_extend(uint32_t v, unsigned width) {
  uint32_t m = 1u << (width - 1);
  return static_cast<int32_t>((v ^ m) - m);
}

uint32_t rtype(uint32_t f7, uint32_t rs2, uint32_t rs1, uint32_t f3,
               uint32_t rd, uint32_t opc) {
  return (f7 << 25) | (rs2 << 20) | (rs1 << 15) | (f3 << 12) | (rd << 7) | opc;
}

uint32_t itype(int32_t imm, uint32_t rs1, uint32_t f3, uint32_t rd,
               uint32_t opc) {
  return (static_cast<uint32_t>(imm & 0xfff) << 20) | (rs1 << 15) |
         (f3 << 12) | (rd << 7) | opc;
}

uint32_t stype(int32_t imm, uint32_t rs2, uint32_t rs1, uint32_t f3,
               uint32_t opc) {
  uint32_t u = static_cast<uint32_t>(imm & 0xfff);
  return (bits(u, 11, 5) << 25) | (rs2 << 20) | (rs1 << 15) | (f3 << 12) |
         (bits(u, 4, 0) << 7) | opc;
}

uint32_t btype(int32_t imm, uint32_t rs2, uint32_t rs1, uint32_t f3,
               uint32_t opc) {
  uint32_t u = static_cast<uint32_t>(imm);
  return (bits(u, 12, 12) << 31) | (bits(u, 10, 5) << 25) | (rs2 << 20) |
         (rs1 << 15) | (f3 << 12) | (bits(u, 4, 1) << 8) |
         (bits(u, 11, 11) << 7) | opc;
}

int32_t btype_imm(uint32_t w) {
  uint32_t u = (bits(w, 31, 31) << 12) | (bits(w, 7, 7) << 11) |
               (bits(w, 30, 25) << 5) | (bits(w, 11, 8) << 1);
  return sign_extend(u, 13);
}

uint32_t jtype(int32_t imm, uint32_t rd, uint32_t opc) {
  uint32_t u = static_cast<uint32_t>(imm);
  return (bits(u, 20, 20) << 31) | (bits(u, 10, 1) << 21) |
         (bits(u, 11, 11) << 20) | (bits(u, 19, 12) << 12) | (rd << 7) | opc;
}

int32_t jtype_imm(uint32_t w) {
  uint32_t u = (bits(w, 31, 31) << 20) | (bits(w, 19, 12) << 12) |
               (bits(w, 20, 20) << 11) | (bits(w, 30, 21) << 1);
  return sign_extend(u, 21);
}

[[noreturn]] void illegal(const std::string& what) {
  throw IsaError(IsaError::Kind::IllegalInstruction, what);
}

[[noreturn]] void unencodable(const std::string& what) {
  throw IsaError(IsaError::Kind::Unencodable, what);
}

void check_reg(uint32_t r, const char* name) {
  if (r > 31) unencodable(std::string(name) + " register index out of range");
}

void check_imm(int64_t v, int64_t lo, int64_t hi, const char* what) {
  if (v < lo || v > hi)
    unencodable(std::string(what) + " immediate out of range");
}

Instruction make(Op op) {
  Instruction i;
  i.op = op;
  return i;
}

}  // namespace

const char* format_suffix(SimdFormat f) {
  static const char* names[] = {"h", "b", "n", "c"};
  return names[static_cast<unsigned>(f)];
}

const char* sign_suffix(SignVariant v) {
  static const char* names[] = {"up", "usp", "sp"};
  return names[static_cast<unsigned>(v)];
}

SignVariant pv_sign(PvOp k) {
  switch (k) {
    case PvOp::Dotup:
    case PvOp::Sdotup: return SignVariant::Up;
    case PvOp::Dotusp:
    case PvOp::Sdotusp: return SignVariant::Usp;
    default: return SignVariant::Sp;
  }
}

const char* pv_name(PvOp k) {
  static const char* names[] = {
      "add", "sub", "avg", "avgu", "max", "maxu", "min", "minu",
      "srl", "sra", "sll", "abs",  "dotup", "dotusp", "dotsp",
      "sdotup", "sdotusp", "sdotsp"};
  return names[static_cast<unsigned>(k)];
}

const char* class_name(InstructionClass c) {
  static const char* names[] = {"simd_mac", "load", "store", "mac_load",
                                "alu_scalar", "simd_alu", "control_flow",
                                "other"};
  return names[static_cast<unsigned>(c)];
}

InstructionClass classify(const Instruction& instr) {
  switch (instr.op) {
    case Op::Pv:
      return pv_is_dot(instr.pv) ? InstructionClass::SimdMac
                                 : InstructionClass::SimdAlu;
    case Op::Lw:
    case Op::PLw:
    case Op::NnLw:
      return InstructionClass::Load;
    case Op::Sw:
    case Op::PSw:
      return InstructionClass::Store;
    case Op::CuSdot:
    case Op::NnSdot:
      return InstructionClass::MacLoad;
    case Op::Beq:
    case Op::Bne:
    case Op::Blt:
    case Op::Bge:
    case Op::Bltu:
    case Op::Bgeu:
    case Op::Jal:
    case Op::Jalr:
    case Op::LpSetup:
    case Op::LpSetupi:
    case Op::LpStarti:
    case Op::LpEndi:
    case Op::LpCount:
    case Op::LpCounti:
      return InstructionClass::ControlFlow;
    case Op::Barrier:
    case Op::Halt:
    case Op::Marker:
      return InstructionClass::Other;
    default:
      return InstructionClass::AluScalar;
  }
}

uint32_t encode(const Instruction& i) {
  check_reg(i.rd, "rd");
  check_reg(i.rs1, "rs1");
  check_reg(i.rs2, "rs2");
  switch (i.op) {
    case Op::Add: return rtype(0x00, i.rs2, i.rs1, 0b000, i.rd, kOpcOp);
    case Op::Sub: return rtype(0x20, i.rs2, i.rs1, 0b000, i.rd, kOpcOp);
    case Op::And: return rtype(0x00, i.rs2, i.rs1, 0b111, i.rd, kOpcOp);
    case Op::Or: return rtype(0x00, i.rs2, i.rs1, 0b110, i.rd, kOpcOp);
    case Op::Xor: return rtype(0x00, i.rs2, i.rs1, 0b100, i.rd, kOpcOp);
    case Op::Mul: return rtype(0x01, i.rs2, i.rs1, 0b000, i.rd, kOpcOp);
    case Op::Addi:
      check_imm(i.imm, -2048, 2047, "addi");
      return itype(i.imm, i.rs1, 0b000, i.rd, kOpcOpImm);
    case Op::Slli:
      check_imm(i.imm, 0, 31, "shift");
      return itype(i.imm, i.rs1, 0b001, i.rd, kOpcOpImm);
    case Op::Srli:
      check_imm(i.imm, 0, 31, "shift");
      return itype(i.imm, i.rs1, 0b101, i.rd, kOpcOpImm);
    case Op::Srai:
      check_imm(i.imm, 0, 31, "shift");
      return itype(i.imm | (0x20 << 5), i.rs1, 0b101, i.rd, kOpcOpImm);
    case Op::Lui:
      check_imm(i.imm, 0, 0xfffff, "lui");
      return (static_cast<uint32_t>(i.imm) << 12) | (i.rd << 7) | kOpcLui;
    case Op::Auipc:
      check_imm(i.imm, 0, 0xfffff, "auipc");
      return (static_cast<uint32_t>(i.imm) << 12) | (i.rd << 7) | kOpcAuipc;
    case Op::Lw:
      check_imm(i.imm, -2048, 2047, "load offset");
      return itype(i.imm, i.rs1, 0b010, i.rd, kOpcLoad);
    case Op::Sw:
      check_imm(i.imm, -2048, 2047, "store offset");
      return stype(i.imm, i.rs2, i.rs1, 0b010, kOpcStore);
    case Op::Beq:
    case Op::Bne:
    case Op::Blt:
    case Op::Bge:
    case Op::Bltu:
    case Op::Bgeu: {
      check_imm(i.imm, -4096, 4095, "branch offset");
      if (i.imm & 1) unencodable("branch offset must be even");
      static const uint32_t f3[] = {0b000, 0b001, 0b100, 0b101, 0b110, 0b111};
      return btype(i.imm, i.rs2, i.rs1, f3[static_cast<int>(i.op) -
                                           static_cast<int>(Op::Beq)],
                   kOpcBranch);
    }
    case Op::Jal:
      check_imm(i.imm, -(1 << 20), (1 << 20) - 1, "jal offset");
      if (i.imm & 1) unencodable("jal offset must be even");
      return jtype(i.imm, i.rd, kOpcJal);
    case Op::Jalr:
      check_imm(i.imm, -2048, 2047, "jalr offset");
      return itype(i.imm, i.rs1, 0b000, i.rd, kOpcJalr);
    case Op::PLw:
      check_imm(i.imm, -2048, 2047, "post-increment");
      return itype(i.imm, i.rs1, kF3PLw, i.rd, kOpcCustom0);
    case Op::PSw:
      check_imm(i.imm, -2048, 2047, "post-increment");
      return stype(i.imm, i.rs2, i.rs1, kF3PSw, kOpcCustom1);
    case Op::PMac: return rtype(0x00, i.rs2, i.rs1, kF3PMac, i.rd, kOpcCustom1);
    case Op::PClipu:
      check_imm(i.imm, 0, 31, "clip width");
      return itype(i.imm, i.rs1, kF3PClipu, i.rd, kOpcCustom1);
    case Op::LpSetup:
    case Op::LpSetupi:
    case Op::LpStarti:
    case Op::LpEndi:
    case Op::LpCount:
    case Op::LpCounti: {
      if (i.loop > 1) unencodable("loop index must be 0 or 1");
      uint32_t rdf = i.loop;
      switch (i.op) {
        case Op::LpStarti:
          check_imm(i.imm, 0, 4095, "loop start offset");
          return itype(i.imm, 0, 0b000, rdf, kOpcHwloop);
        case Op::LpEndi:
          check_imm(i.imm, 0, 4095, "loop end offset");
          return itype(i.imm, 0, 0b001, rdf, kOpcHwloop);
        case Op::LpCount: return itype(0, i.rs1, 0b010, rdf, kOpcHwloop);
        case Op::LpCounti:
          check_imm(i.imm, 0, 4095, "loop count");
          return itype(i.imm, 0, 0b011, rdf, kOpcHwloop);
        case Op::LpSetup:
          check_imm(i.imm, 0, 4095, "loop end offset");
          return itype(i.imm, i.rs1, 0b100, rdf, kOpcHwloop);
        default:  // LpSetupi: 4-bit count in rd[4:1]
          check_imm(i.imm, 0, 4095, "loop end offset");
          if (i.rs1 > 15) unencodable("lp.setupi count must fit 4 bits");
          return itype(i.imm, 0, 0b101, rdf | (i.rs1 << 1), kOpcHwloop);
      }
    }
    case Op::Pv: {
      if (i.pv == PvOp::Abs && (i.sc || i.rs2 != 0))
        unencodable("pv.abs takes no second operand");
      uint32_t f3 = (static_cast<uint32_t>(i.fmt) << 1) | (i.sc ? 1 : 0);
      uint32_t f7 = static_cast<uint32_t>(i.pv) << 2;
      return rtype(f7, i.rs2, i.rs1, f3, i.rd, kOpcPv);
    }
    case Op::CuSdot: {
      if (i.nn_idx > 3) unencodable("NN-RF weight index out of range");
      uint32_t f7 = (static_cast<uint32_t>(i.sign) << 5) |
                    (static_cast<uint32_t>(i.fmt) << 3) | (i.nn_idx << 1);
      return rtype(f7, i.rs2, i.rs1, kF3CuSdot, i.rd, kOpcCustom0);
    }
    case Op::NnSdot: {
      if (i.imm5 > 31) unencodable("nn immediate out of range");
      if (nn_imm_upd_act(i.imm5) && nn_imm_upd_weight(i.imm5))
        unencodable("nn update bits are mutually exclusive");
      uint32_t f7 = (static_cast<uint32_t>(i.sign) << 5) |
                    (static_cast<uint32_t>(i.fmt) << 3);
      return rtype(f7, i.imm5, i.rs1, kF3NnSdot, i.rd, kOpcCustom0);
    }
    case Op::NnLw:
      if (i.nn_reg > 5) unencodable("NN-RF register out of range");
      return rtype(0, i.nn_reg, i.rs1, kF3NnLw, 0, kOpcCustom0);
    case Op::Halt: return rtype(0, kSysHalt, 0, kF3Sys, 0, kOpcCustom0);
    case Op::Barrier: return rtype(0, kSysBarrier, 0, kF3Sys, 0, kOpcCustom0);
    case Op::Marker:
      check_imm(i.imm, 0, 127, "marker id");
      return rtype(static_cast<uint32_t>(i.imm), kSysMarker, 0, kF3Sys, 0,
                   kOpcCustom0);
  }
  unencodable("unhandled op");
}

Instruction decode(uint32_t w) {
  uint32_t opc = bits(w, 6, 0);
  uint32_t rd = bits(w, 11, 7);
  uint32_t f3 = bits(w, 14, 12);
  uint32_t rs1 = bits(w, 19, 15);
  uint32_t rs2 = bits(w, 24, 20);
  uint32_t f7 = bits(w, 31, 25);

  Instruction i;
  i.rd = static_cast<uint8_t>(rd);
  i.rs1 = static_cast<uint8_t>(rs1);
  i.rs2 = static_cast<uint8_t>(rs2);

  switch (opc) {
    case kOpcOp: {
      if (f3 == 0b000 && f7 == 0x00) i.op = Op::Add;
      else if (f3 == 0b000 && f7 == 0x20) i.op = Op::Sub;
      else if (f3 == 0b000 && f7 == 0x01) i.op = Op::Mul;
      else if (f3 == 0b111 && f7 == 0x00) i.op = Op::And;
      else if (f3 == 0b110 && f7 == 0x00) i.op = Op::Or;
      else if (f3 == 0b100 && f7 == 0x00) i.op = Op::Xor;
      else illegal("unknown OP function");
      return i;
    }
    case kOpcOpImm: {
      i.rs2 = 0;
      if (f3 == 0b000) {
        i.op = Op::Addi;
        i.imm = sign_extend(bits(w, 31, 20), 12);
      } else if (f3 == 0b001 && f7 == 0x00) {
        i.op = Op::Slli;
        i.imm = static_cast<int32_t>(rs2);
      } else if (f3 == 0b101 && f7 == 0x00) {
        i.op = Op::Srli;
        i.imm = static_cast<int32_t>(rs2);
      } else if (f3 == 0b101 && f7 == 0x20) {
        i.op = Op::Srai;
        i.imm = static_cast<int32_t>(rs2);
      } else {
        illegal("unknown OP-IMM function");
      }
      return i;
    }
    case kOpcLui:
      i.op = Op::Lui;
      i.rs1 = i.rs2 = 0;
      i.imm = static_cast<int32_t>(bits(w, 31, 12));
      return i;
    case kOpcAuipc:
      i.op = Op::Auipc;
      i.rs1 = i.rs2 = 0;
      i.imm = static_cast<int32_t>(bits(w, 31, 12));
      return i;
    case kOpcLoad:
      if (f3 != 0b010) illegal("only 32-bit loads are supported");
      i.op = Op::Lw;
      i.rs2 = 0;
      i.imm = sign_extend(bits(w, 31, 20), 12);
      return i;
    case kOpcStore:
      if (f3 != 0b010) illegal("only 32-bit stores are supported");
      i.op = Op::Sw;
      i.rd = 0;
      i.imm = sign_extend((bits(w, 31, 25) << 5) | bits(w, 11, 7), 12);
      return i;
    case kOpcBranch: {
      static const Op ops[] = {Op::Beq, Op::Bne, Op::Beq, Op::Beq,
                               Op::Blt, Op::Bge, Op::Bltu, Op::Bgeu};
      if (f3 == 0b010 || f3 == 0b011) illegal("unknown branch function");
      i.op = ops[f3];
      i.rd = 0;
      i.imm = btype_imm(w);
      return i;
    }
    case kOpcJal:
      i.op = Op::Jal;
      i.rs1 = i.rs2 = 0;
      i.imm = jtype_imm(w);
      return i;
    case kOpcJalr:
      if (f3 != 0b000) illegal("unknown jalr function");
      i.op = Op::Jalr;
      i.rs2 = 0;
      i.imm = sign_extend(bits(w, 31, 20), 12);
      return i;
    case kOpcCustom0:
      switch (f3) {
        case kF3PLw:
          i.op = Op::PLw;
          i.rs2 = 0;
          i.imm = sign_extend(bits(w, 31, 20), 12);
          return i;
        case kF3CuSdot: {
          i.op = Op::CuSdot;
          uint32_t sign = bits(f7, 6, 5);
          if (sign > 2) illegal("unknown sign variant");
          if (f7 & 1) illegal("nonzero reserved field");
          i.sign = static_cast<SignVariant>(sign);
          i.fmt = static_cast<SimdFormat>(bits(f7, 4, 3));
          i.nn_idx = static_cast<uint8_t>(bits(f7, 2, 1));
          return i;
        }
        case kF3NnSdot: {
          i.op = Op::NnSdot;
          uint32_t sign = bits(f7, 6, 5);
          if (sign > 2) illegal("unknown sign variant");
          if (bits(f7, 2, 0) != 0) illegal("nonzero reserved field");
          i.sign = static_cast<SignVariant>(sign);
          i.fmt = static_cast<SimdFormat>(bits(f7, 4, 3));
          i.imm5 = static_cast<uint8_t>(rs2);
          i.rs2 = 0;
          if (nn_imm_upd_act(i.imm5) && nn_imm_upd_weight(i.imm5))
            throw IsaError(IsaError::Kind::IllegalOperand,
                           "nn update bits are mutually exclusive");
          return i;
        }
        case kF3NnLw:
          if (f7 != 0 || rd != 0) illegal("nonzero reserved field");
          if (rs2 > 5) illegal("NN-RF register out of range");
          i.op = Op::NnLw;
          i.nn_reg = static_cast<uint8_t>(rs2);
          i.rs2 = 0;
          return i;
        case kF3Sys:
          if (rd != 0 || rs1 != 0) illegal("nonzero reserved field");
          i.rs2 = 0;
          if (rs2 == kSysHalt && f7 == 0) { i.op = Op::Halt; return i; }
          if (rs2 == kSysBarrier && f7 == 0) { i.op = Op::Barrier; return i; }
          if (rs2 == kSysMarker) {
            i.op = Op::Marker;
            i.imm = static_cast<int32_t>(f7);
            return i;
          }
          illegal("unknown system sub-op");
        default:
          illegal("unknown custom-0 function");
      }
    case kOpcCustom1:
      switch (f3) {
        case kF3PSw:
          i.op = Op::PSw;
          i.rd = 0;
          i.imm = sign_extend((bits(w, 31, 25) << 5) | bits(w, 11, 7), 12);
          return i;
        case kF3PMac:
          if (f7 != 0) illegal("nonzero reserved field");
          i.op = Op::PMac;
          return i;
        case kF3PClipu:
          if (f7 != 0) illegal("nonzero reserved field");
          if (rs2 > 31) illegal("clip width out of range");
          i.op = Op::PClipu;
          i.imm = static_cast<int32_t>(rs2);
          i.rs2 = 0;
          return i;
        default:
          illegal("unknown custom-1 function");
      }
    case kOpcPv: {
      uint32_t pvop = bits(f7, 6, 2);
      if (pvop >= kPvOpCount) illegal("unknown pv operation");
      if (bits(f7, 1, 0) != 0) illegal("nonzero reserved field");
      i.op = Op::Pv;
      i.pv = static_cast<PvOp>(pvop);
      i.fmt = static_cast<SimdFormat>(bits(f3, 2, 1));
      i.sc = (f3 & 1) != 0;
      if (i.pv == PvOp::Abs && (i.sc || rs2 != 0))
        illegal("pv.abs takes no second operand");
      return i;
    }
    case kOpcHwloop: {
      i.loop = static_cast<uint8_t>(rd & 1);
      i.rd = 0;
      i.rs2 = 0;
      uint32_t uimm = bits(w, 31, 20);
      switch (f3) {
        case 0b000:
          if (rs1 || (rd & ~1u)) illegal("nonzero reserved field");
          i.op = Op::LpStarti;
          i.rs1 = 0;
          i.imm = static_cast<int32_t>(uimm);
          return i;
        case 0b001:
          if (rs1 || (rd & ~1u)) illegal("nonzero reserved field");
          i.op = Op::LpEndi;
          i.rs1 = 0;
          i.imm = static_cast<int32_t>(uimm);
          return i;
        case 0b010:
          if (uimm || (rd & ~1u)) illegal("nonzero reserved field");
          i.op = Op::LpCount;
          return i;
        case 0b011:
          if (rs1 || (rd & ~1u)) illegal("nonzero reserved field");
          i.op = Op::LpCounti;
          i.rs1 = 0;
          i.imm = static_cast<int32_t>(uimm);
          return i;
        case 0b100:
          if (rd & ~1u) illegal("nonzero reserved field");
          i.op = Op::LpSetup;
          i.imm = static_cast<int32_t>(uimm);
          return i;
        case 0b101:
          i.op = Op::LpSetupi;
          i.rs1 = static_cast<uint8_t>(bits(rd, 4, 1));
          i.imm = static_cast<int32_t>(uimm);
          return i;
        default:
          illegal("unknown hardware-loop function");
      }
    }
    default:
      illegal("unknown major opcode");
  }
}

std::string encoding_reference_markdown() {
  std::ostringstream os;
  os << "# Instruction encoding reference\n\n";
  os << "All instructions are 32 bits. Field positions follow the RV32 "
        "R/I/S/B/U/J conventions:\n"
        "`funct7[31:25] rs2[24:20] rs1[19:15] funct3[14:12] rd[11:7] "
        "opcode[6:0]`.\n\n";
  os << "## Major opcode map\n\n";
  os << "| opcode | space |\n|---|---|\n";
  os << "| `0000011` | lw (I-type, funct3=010) |\n";
  os << "| `0010011` | addi/slli/srli/srai (I-type) |\n";
  os << "| `0010111` | auipc (U-type) |\n";
  os << "| `0100011` | sw (S-type, funct3=010) |\n";
  os << "| `0110011` | add/sub/and/or/xor/mul (R-type) |\n";
  os << "| `0110111` | lui (U-type) |\n";
  os << "| `1100011` | beq/bne/blt/bge/bltu/bgeu (B-type) |\n";
  os << "| `1100111` | jalr (I-type, funct3=000) |\n";
  os << "| `1101111` | jal (J-type) |\n";
  os << "| `0001011` | custom-0: p.lw and the NN extension (see below) |\n";
  os << "| `0101011` | custom-1: p.mac / p.clipu / p.sw |\n";
  os << "| `1010111` | pv.* packed-SIMD space |\n";
  os << "| `1111011` | hardware loops |\n\n";

  os << "## custom-0 (`0001011`)\n\n";
  os << "| funct3 | instruction | fields |\n|---|---|---|\n";
  os << "| `010` | `p.lw rd, imm(rs1!)` | I-type; rs1 += imm after the "
        "access |\n";
  os << "| `011` | `pv.cusdot<sign>.<fmt>.<i> rd, rs1, rs2` | "
        "funct7 = {sign[1:0], fmt[1:0], i[1:0], 0}; rd += dotp(rs2, w[i]); "
        "w[i] = mem[rs1]; rs1 += 4 |\n";
  os << "| `100` | `pv.nnsdot<sign>.<fmt> rd, rs1, imm5` | "
        "funct7 = {sign[1:0], fmt[1:0], 000}; imm5 in the rs2 slot |\n";
  os << "| `101` | `p.nnlw <nnreg>, (rs1!)` | nnreg (0-3 = w0-w3, 4-5 = "
        "a0-a1) in the rs2 slot; rd = 0 |\n";
  os << "| `110` | `p.halt` / `p.barrier` / `p.marker id` | sub-op 0/1/2 in "
        "the rs2 slot; marker id in funct7 |\n\n";
  os << "`sign`: 00 = up (both unsigned), 01 = usp (first unsigned, second "
        "signed), 10 = sp (both signed). 11 is illegal.\n"
        "`fmt`: 00 = h, 01 = b, 10 = n, 11 = c.\n\n";
  os << "For `pv.cusdot*` the first dot-product operand is rs2 (from the "
        "GP-RF) and the second is NN-RF weight register w[i]. For "
        "`pv.nnsdot*` the first operand is activation register a[imm5[0]] "
        "and the second is weight register w[imm5[2:1]]; imm5[3] requests "
        "an activation update from mem[rs1], imm5[4] a weight update "
        "(mutually exclusive; decode rejects words with both set). rs1 is "
        "post-incremented by 4 whenever an update is performed, and the "
        "update overwrites the register after the MAC has consumed it.\n\n";

  os << "## custom-1 (`0101011`)\n\n";
  os << "| funct3 | instruction | semantics |\n|---|---|---|\n";
  os << "| `000` | `p.mac rd, rs1, rs2` | rd += rs1 * rs2 (32-bit wrap) |\n";
  os << "| `001` | `p.clipu rd, rs1, uimm5` | rd = clamp(rs1, 0, "
        "2^uimm5 - 1), uimm5 in the rs2 slot |\n";
  os << "| `010` | `p.sw rs2, imm(rs1!)` | S-type; rs1 += imm after the "
        "access |\n\n";

  os << "## pv space (`1010111`)\n\n";
  os << "funct3 = {fmt[1:0], sc}; funct7 = {op[4:0], 00}. sc replicates "
        "lane 0 of rs2 across all lanes before the operation.\n\n";
  os << "| op | mnemonic | lane semantics |\n|---|---|---|\n";
  static const char* sem[] = {
      "rd[i] = rs1[i] + rs2[i]",
      "rd[i] = rs1[i] - rs2[i]",
      "rd[i] = (rs1[i] + rs2[i]) >> 1 (arithmetic)",
      "rd[i] = (rs1[i] + rs2[i]) >> 1 (logical)",
      "rd[i] = max(rs1[i], rs2[i]) (signed)",
      "rd[i] = max(rs1[i], rs2[i]) (unsigned)",
      "rd[i] = min(rs1[i], rs2[i]) (signed)",
      "rd[i] = min(rs1[i], rs2[i]) (unsigned)",
      "rd[i] = rs1[i] >> rs2[i] (logical)",
      "rd[i] = rs1[i] >> rs2[i] (arithmetic)",
      "rd[i] = rs1[i] << rs2[i]",
      "rd[i] = |rs1[i]| (rs2 = 0, no .sc form)",
      "rd = sum(rs1[i] * rs2[i]), both unsigned",
      "rd = sum(rs1[i] * rs2[i]), rs1 unsigned, rs2 signed",
      "rd = sum(rs1[i] * rs2[i]), both signed",
      "rd += sum(rs1[i] * rs2[i]), both unsigned",
      "rd += sum(rs1[i] * rs2[i]), rs1 unsigned, rs2 signed",
      "rd += sum(rs1[i] * rs2[i]), both signed",
  };
  for (unsigned k = 0; k < kPvOpCount; ++k) {
    os << "| " << k << " | `pv." << pv_name(static_cast<PvOp>(k))
       << "[.sc].{h,b,n,c}` | " << sem[k] << " |\n";
  }
  os << "\nShift amounts use the low log2(lane_bits) bits of the "
        "corresponding rs2 lane. Lane arithmetic wraps modulo "
        "2^lane_bits; dot-product accumulation wraps modulo 2^32.\n\n";

  os << "## Hardware loops (`1111011`)\n\n";
  os << "The loop index L is bit 7. Offsets are unsigned byte distances "
        "from the pc of the setup instruction; the end offset addresses "
        "the first instruction after the loop body.\n\n";
  os << "| funct3 | instruction | fields |\n|---|---|---|\n";
  os << "| `000` | `lp.starti L, off` | imm12 = start offset |\n";
  os << "| `001` | `lp.endi L, off` | imm12 = end offset |\n";
  os << "| `010` | `lp.count L, rs1` | count from register |\n";
  os << "| `011` | `lp.counti L, imm` | imm12 = count |\n";
  os << "| `100` | `lp.setup L, rs1, off` | count from rs1, start = pc+4, "
        "end = pc+off |\n";
  os << "| `101` | `lp.setupi L, n, off` | count n in bits [11:8] "
        "(0-15), start = pc+4, end = pc+off |\n";
  return os.str();
}

}  // namespace nnsim
