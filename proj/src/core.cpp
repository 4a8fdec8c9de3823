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

#include "nnsim/core.hpp"

#include <cstring>

#include "nnsim/simd.hpp"

namespace nnsim {

namespace {
constexpr unsigned kBranchPenalty = 2;
}

bool FlatMemory::access(uint32_t addr, bool is_store, uint32_t& data) {
  if (addr < base_ || addr + 4 > base_ + bytes_.size())
    throw SimTrap("memory access out of range at 0x" +
                      std::to_string(addr),
                  -1, 0, 0);
  if (is_store)
    std::memcpy(&bytes_[addr - base_], &data, 4);
  else
    std::memcpy(&data, &bytes_[addr - base_], 4);
  return true;
}

uint32_t FlatMemory::read_word(uint32_t addr) const {
  uint32_t v;
  std::memcpy(&v, &bytes_[addr - base_], 4);
  return v;
}

void FlatMemory::write_word(uint32_t addr, uint32_t value) {
  std::memcpy(&bytes_[addr - base_], &value, 4);
}

void FlatMemory::load_bytes(uint32_t addr, const uint8_t* src, size_t n) {
  std::memcpy(&bytes_[addr - base_], src, n);
}

std::vector<uint8_t> FlatMemory::dump_bytes(uint32_t addr, size_t n) const {
  return {bytes_.begin() + (addr - base_),
          bytes_.begin() + (addr - base_) + n};
}

DecodedProgram::DecodedProgram(const ProgramImage& img) {
  entry_ = img.entry;
  if (img.sections.empty()) {
    lo_ = hi_ = entry_;
    return;
  }
  lo_ = ~0u;
  hi_ = 0;
  for (const auto& s : img.sections) {
    lo_ = std::min(lo_, s.base);
    hi_ = std::max(hi_, s.base + 4 * static_cast<uint32_t>(s.words.size()));
  }
  size_t n = (hi_ - lo_) / 4;
  instrs_.resize(n);
  valid_.assign(n, 0);
  for (const auto& s : img.sections) {
    for (size_t k = 0; k < s.words.size(); ++k) {
      size_t idx = (s.base - lo_) / 4 + k;
      try {
        instrs_[idx] = decode(s.words[k]);
        valid_[idx] = 1;
      } catch (const IsaError&) {
        valid_[idx] = 0;  // data word; traps if fetched
      }
    }
  }
}

Core::Core(std::shared_ptr<const DecodedProgram> program, int core_id)
    : program_(std::move(program)), core_id_(core_id) {
  pc_ = program_->entry();
}

void Core::reset(uint32_t entry, uint32_t arg0, uint32_t arg1) {
  pc_ = entry;
  regs_.fill(0);
  regs_[10] = arg0;
  regs_[11] = arg1;
  nn_w_.fill(0);
  nn_a_.fill(0);
  loops_ = {};
  flush_cycles_ = 0;
  halted_ = false;
  at_barrier_ = false;
  mem_stalled_ = false;
  phase_ = 0;
  counters_ = {};
}

void Core::trap(const std::string& what) const {
  throw SimTrap(what, core_id_, pc_, counters_.cycles);
}

const Instruction& Core::fetch() const {
  const Instruction* instr = program_->fetch(pc_);
  if (!instr) trap("illegal instruction fetch");
  return *instr;
}

std::optional<Core::MemRequest> Core::pending_request() const {
  if (halted_ || at_barrier_ || flush_cycles_ > 0) return std::nullopt;
  const Instruction* ip = program_->fetch(pc_);
  if (!ip) return std::nullopt;  // step() will trap
  const Instruction& i = *ip;
  switch (i.op) {
    case Op::Lw:
      return MemRequest{regs_[i.rs1] + static_cast<uint32_t>(i.imm), false};
    case Op::Sw:
      return MemRequest{regs_[i.rs1] + static_cast<uint32_t>(i.imm), true};
    case Op::PLw:
    case Op::NnLw:
    case Op::CuSdot:
      return MemRequest{regs_[i.rs1], false};
    case Op::PSw:
      return MemRequest{regs_[i.rs1], true};
    case Op::NnSdot:
      if (nn_imm_upd_act(i.imm5) || nn_imm_upd_weight(i.imm5))
        return MemRequest{regs_[i.rs1], false};
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

void Core::idle_cycle() {
  counters_.cycles++;
  counters_.phases[phase_].cycles++;
}

void Core::retire(const Instruction& instr, uint32_t next_pc,
                  bool control_transfer) {
  counters_.instret++;
  InstructionClass cls = classify(instr);
  counters_.by_class[static_cast<unsigned>(cls)]++;
  PhaseCounters& ph = counters_.phases[phase_];
  ph.instrs++;
  ph.by_class[static_cast<unsigned>(cls)]++;
  if (cls == InstructionClass::SimdMac || cls == InstructionClass::MacLoad) {
    counters_.simd_mac_instrs++;
    counters_.simd_mac_lanes += lane_count(instr.fmt);
    ph.simd_mac_instrs++;
    ph.simd_mac_lanes += lane_count(instr.fmt);
  }
  if (trace) trace(*this, pc_, instr);

  // Zero-overhead hardware loops: retiring the last body instruction of an
  // active loop redirects to its start. Loop 0 is checked first and must be
  // the inner one when nested.
  if (!control_transfer) {
    for (auto& loop : loops_) {
      if (loop.count > 0 && pc_ == loop.end - 4) {
        if (loop.count > 1) {
          loop.count--;
          next_pc = loop.start;
          break;
        }
        loop.count = 0;  // expired; fall through, outer loop may still match
      }
    }
  }
  pc_ = next_pc;
}

void Core::step(MemoryPort& mem) {
  counters_.cycles++;
  if (flush_cycles_ > 0) {
    flush_cycles_--;
    counters_.branch_stall_cycles++;
    counters_.phases[phase_].cycles++;
    counters_.phases[phase_].stall_cycles++;
    return;
  }
  counters_.phases[phase_].cycles++;

  const Instruction& i = fetch();
  uint32_t next = pc_ + 4;
  bool transfer = false;

  auto wr = [this](unsigned r, uint32_t v) {
    if (r != 0) regs_[r] = v;
  };
  auto mem_access = [&](uint32_t addr, bool is_store,
                        uint32_t& data) -> bool {
    if (addr & 3) trap("misaligned memory access");
    if (!mem_stalled_) counters_.mem_requests++;
    bool granted = mem.access(addr, is_store, data);
    if (granted) {
      counters_.mem_grants++;
      mem_stalled_ = false;
    } else {
      mem_stalled_ = true;
      counters_.mem_stall_cycles++;
      counters_.contention_events++;
      counters_.phases[phase_].stall_cycles++;
    }
    return granted;
  };

  switch (i.op) {
    case Op::Add: wr(i.rd, regs_[i.rs1] + regs_[i.rs2]); break;
    case Op::Sub: wr(i.rd, regs_[i.rs1] - regs_[i.rs2]); break;
    case Op::And: wr(i.rd, regs_[i.rs1] & regs_[i.rs2]); break;
    case Op::Or: wr(i.rd, regs_[i.rs1] | regs_[i.rs2]); break;
    case Op::Xor: wr(i.rd, regs_[i.rs1] ^ regs_[i.rs2]); break;
    case Op::Mul: wr(i.rd, regs_[i.rs1] * regs_[i.rs2]); break;
    case Op::Addi:
      wr(i.rd, regs_[i.rs1] + static_cast<uint32_t>(i.imm));
      break;
    case Op::Slli: wr(i.rd, regs_[i.rs1] << i.imm); break;
    case Op::Srli: wr(i.rd, regs_[i.rs1] >> i.imm); break;
    case Op::Srai:
      wr(i.rd, static_cast<uint32_t>(static_cast<int32_t>(regs_[i.rs1]) >>
                                     i.imm));
      break;
    case Op::Lui: wr(i.rd, static_cast<uint32_t>(i.imm) << 12); break;
    case Op::Auipc:
      wr(i.rd, pc_ + (static_cast<uint32_t>(i.imm) << 12));
      break;
    case Op::Lw: {
      uint32_t data = 0;
      if (!mem_access(regs_[i.rs1] + static_cast<uint32_t>(i.imm), false,
                      data))
        return;
      wr(i.rd, data);
      break;
    }
    case Op::Sw: {
      uint32_t data = regs_[i.rs2];
      if (!mem_access(regs_[i.rs1] + static_cast<uint32_t>(i.imm), true,
                      data))
        return;
      break;
    }
    case Op::PLw: {
      uint32_t addr = regs_[i.rs1];
      uint32_t data = 0;
      if (!mem_access(addr, false, data)) return;
      wr(i.rd, data);
      wr(i.rs1, addr + static_cast<uint32_t>(i.imm));
      break;
    }
    case Op::PSw: {
      uint32_t addr = regs_[i.rs1];
      uint32_t data = regs_[i.rs2];
      if (!mem_access(addr, true, data)) return;
      wr(i.rs1, addr + static_cast<uint32_t>(i.imm));
      break;
    }
    case Op::PMac:
      wr(i.rd, regs_[i.rd] + regs_[i.rs1] * regs_[i.rs2]);
      break;
    case Op::PClipu: {
      int32_t v = static_cast<int32_t>(regs_[i.rs1]);
      int64_t hi = (1ll << i.imm) - 1;
      if (v < 0) v = 0;
      if (v > hi) v = static_cast<int32_t>(hi);
      wr(i.rd, static_cast<uint32_t>(v));
      break;
    }
    case Op::Beq:
    case Op::Bne:
    case Op::Blt:
    case Op::Bge:
    case Op::Bltu:
    case Op::Bgeu: {
      uint32_t a = regs_[i.rs1], b = regs_[i.rs2];
      bool taken = false;
      switch (i.op) {
        case Op::Beq: taken = a == b; break;
        case Op::Bne: taken = a != b; break;
        case Op::Blt:
          taken = static_cast<int32_t>(a) < static_cast<int32_t>(b);
          break;
        case Op::Bge:
          taken = static_cast<int32_t>(a) >= static_cast<int32_t>(b);
          break;
        case Op::Bltu: taken = a < b; break;
        default: taken = a >= b; break;
      }
      if (taken) {
        next = pc_ + static_cast<uint32_t>(i.imm);
        transfer = true;
        flush_cycles_ = kBranchPenalty;
      }
      break;
    }
    case Op::Jal:
      wr(i.rd, pc_ + 4);
      next = pc_ + static_cast<uint32_t>(i.imm);
      transfer = true;
      flush_cycles_ = kBranchPenalty;
      break;
    case Op::Jalr: {
      uint32_t t = (regs_[i.rs1] + static_cast<uint32_t>(i.imm)) & ~1u;
      wr(i.rd, pc_ + 4);
      next = t;
      transfer = true;
      flush_cycles_ = kBranchPenalty;
      break;
    }
    case Op::LpSetup:
      loops_[i.loop].start = pc_ + 4;
      loops_[i.loop].end = pc_ + static_cast<uint32_t>(i.imm);
      loops_[i.loop].count = regs_[i.rs1];
      break;
    case Op::LpSetupi:
      loops_[i.loop].start = pc_ + 4;
      loops_[i.loop].end = pc_ + static_cast<uint32_t>(i.imm);
      loops_[i.loop].count = i.rs1;  // 4-bit count immediate
      break;
    case Op::LpStarti:
      loops_[i.loop].start = pc_ + static_cast<uint32_t>(i.imm);
      break;
    case Op::LpEndi:
      loops_[i.loop].end = pc_ + static_cast<uint32_t>(i.imm);
      break;
    case Op::LpCount:
      loops_[i.loop].count = regs_[i.rs1];
      break;
    case Op::LpCounti:
      loops_[i.loop].count = static_cast<uint32_t>(i.imm);
      break;
    case Op::Pv:
      wr(i.rd, pv_execute(i.pv, regs_[i.rs1], regs_[i.rs2], regs_[i.rd],
                          i.fmt, i.sc));
      break;
    case Op::CuSdot: {
      uint32_t addr = regs_[i.rs1];
      uint32_t data = 0;
      if (!mem_access(addr, false, data)) return;
      // MAC consumes the current NN-RF value, then the load replaces it;
      // the address advances by one word unconditionally.
      wr(i.rd, sdotp({regs_[i.rs2]}, {nn_w_[i.nn_idx]}, regs_[i.rd], i.fmt,
                     signedness_of(i.sign)));
      nn_w_[i.nn_idx] = data;
      wr(i.rs1, addr + 4);
      break;
    }
    case Op::NnSdot: {
      bool upd_a = nn_imm_upd_act(i.imm5);
      bool upd_w = nn_imm_upd_weight(i.imm5);
      uint32_t addr = regs_[i.rs1];
      uint32_t data = 0;
      if ((upd_a || upd_w) && !mem_access(addr, false, data)) return;
      unsigned ai = nn_imm_act(i.imm5);
      unsigned wi = nn_imm_weight(i.imm5);
      wr(i.rd, sdotp({nn_a_[ai]}, {nn_w_[wi]}, regs_[i.rd], i.fmt,
                     signedness_of(i.sign)));
      if (upd_a) {
        nn_a_[ai] = data;
        wr(i.rs1, addr + 4);
      } else if (upd_w) {
        nn_w_[wi] = data;
        wr(i.rs1, addr + 4);
      }
      break;
    }
    case Op::NnLw: {
      uint32_t addr = regs_[i.rs1];
      uint32_t data = 0;
      if (!mem_access(addr, false, data)) return;
      if (i.nn_reg < 4)
        nn_w_[i.nn_reg] = data;
      else
        nn_a_[i.nn_reg - 4] = data;
      wr(i.rs1, addr + 4);
      break;
    }
    case Op::Barrier:
      at_barrier_ = true;
      break;
    case Op::Halt:
      halted_ = true;
      break;
    case Op::Marker:
      retire(i, next, transfer);
      phase_ = static_cast<unsigned>(i.imm) % kPhaseCount;
      return;
  }
  retire(i, next, transfer);
}

CycleReport run_core(Core& core, MemoryPort& mem, uint64_t max_cycles) {
  while (!core.halted()) {
    if (core.counters().cycles >= max_cycles)
      throw MaxCyclesExceeded("cycle limit reached");
    if (core.at_barrier()) {
      core.idle_cycle();
      core.release_barrier();
      continue;
    }
    core.step(mem);
  }
  return CycleReport{core.counters()};
}

}  // namespace nnsim
