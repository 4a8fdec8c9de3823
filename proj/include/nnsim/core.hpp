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

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "nnsim/isa.hpp"
#include "nnsim/program.hpp"

namespace nnsim {

class SimTrap : public std::runtime_error {
 public:
  SimTrap(const std::string& what, int core_id, uint32_t pc, uint64_t cycle)
      : std::runtime_error(what), core_id(core_id), pc(pc), cycle(cycle) {}
  int core_id;
  uint32_t pc;
  uint64_t cycle;
};

class MaxCyclesExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One-cycle request/grant memory interface. A false return means the
/// request lost arbitration this cycle; the core stays on the same
/// instruction and re-presents it. Implementations may throw SimTrap for
/// out-of-range addresses.
struct MemoryPort {
  virtual ~MemoryPort() = default;
  virtual bool access(uint32_t addr, bool is_store, uint32_t& data) = 0;
};

/// Zero-contention flat memory covering [base, base+size).
class FlatMemory : public MemoryPort {
 public:
  FlatMemory(uint32_t base, uint32_t size) : base_(base), bytes_(size, 0) {}
  bool access(uint32_t addr, bool is_store, uint32_t& data) override;
  uint32_t read_word(uint32_t addr) const;
  void write_word(uint32_t addr, uint32_t value);
  void load_bytes(uint32_t addr, const uint8_t* src, size_t n);
  std::vector<uint8_t> dump_bytes(uint32_t addr, size_t n) const;
  uint32_t base() const { return base_; }
  uint32_t size() const { return static_cast<uint32_t>(bytes_.size()); }

 private:
  uint32_t base_;
  std::vector<uint8_t> bytes_;
};

/// Program predecoded into a flat fetch array. Words that do not decode are
/// kept as invalid slots and trap if fetched.
class DecodedProgram {
 public:
  explicit DecodedProgram(const ProgramImage& img);
  const Instruction* fetch(uint32_t pc) const {
    if (pc < lo_ || pc >= hi_ || (pc & 3)) return nullptr;
    size_t idx = (pc - lo_) / 4;
    return valid_[idx] ? &instrs_[idx] : nullptr;
  }
  uint32_t entry() const { return entry_; }

 private:
  uint32_t lo_ = 0, hi_ = 0, entry_ = 0;
  std::vector<Instruction> instrs_;
  std::vector<uint8_t> valid_;
};

struct HwLoopState {
  uint32_t start = 0;
  uint32_t end = 0;  // address of the first instruction after the body
  uint32_t count = 0;
};

constexpr unsigned kPhaseCount = 8;

struct PhaseCounters {
  uint64_t cycles = 0;
  uint64_t instrs = 0;
  std::array<uint64_t, kClassCount> by_class{};
  uint64_t simd_mac_instrs = 0;
  uint64_t simd_mac_lanes = 0;
  uint64_t stall_cycles = 0;
};

struct CoreCounters {
  uint64_t cycles = 0;
  uint64_t instret = 0;
  std::array<uint64_t, kClassCount> by_class{};
  uint64_t simd_mac_instrs = 0;
  uint64_t simd_mac_lanes = 0;  // SIMD MACs times lane count
  uint64_t mem_stall_cycles = 0;
  uint64_t branch_stall_cycles = 0;
  uint64_t contention_events = 0;
  uint64_t mem_requests = 0;
  uint64_t mem_grants = 0;
  std::array<PhaseCounters, kPhaseCount> phases{};
};

/// Per-run report; the aggregate form sums counters and takes the cycle
/// maximum over cores.
struct CycleReport {
  CoreCounters counters;
  uint64_t total_instructions() const { return counters.instret; }
};

/// Architectural plus timing state of one in-order single-issue core with
/// hardware loops, post-increment addressing, the NN-RF (4 weight and 2
/// activation registers) and the fused mac&load instructions. One
/// instruction retires per cycle plus stalls (memory contention and a
/// 2-cycle taken-branch penalty).
class Core {
 public:
  Core(std::shared_ptr<const DecodedProgram> program, int core_id = 0);

  void reset(uint32_t entry, uint32_t arg0 = 0, uint32_t arg1 = 0);

  struct MemRequest {
    uint32_t addr = 0;
    bool is_store = false;
  };

  /// The memory request this core would present this cycle, if any. Pure.
  std::optional<MemRequest> pending_request() const;

  /// Advances one cycle: either retires one instruction, burns a
  /// taken-branch flush cycle, or stalls on a denied memory access.
  void step(MemoryPort& mem);

  /// Advances one cycle without touching architectural state (barrier wait).
  void idle_cycle();

  bool halted() const { return halted_; }
  bool at_barrier() const { return at_barrier_; }
  void release_barrier() { at_barrier_ = false; }

  int core_id() const { return core_id_; }
  uint32_t pc() const { return pc_; }
  uint32_t reg(unsigned i) const { return regs_[i]; }
  void set_reg(unsigned i, uint32_t v) {
    if (i != 0) regs_[i] = v;
  }
  uint32_t nn_weight(unsigned i) const { return nn_w_[i]; }
  uint32_t nn_activation(unsigned i) const { return nn_a_[i]; }
  const HwLoopState& hw_loop(unsigned i) const { return loops_[i]; }
  const CoreCounters& counters() const { return counters_; }
  unsigned phase() const { return phase_; }

  /// Called with (core, pc, instruction) after each retirement.
  std::function<void(const Core&, uint32_t, const Instruction&)> trace;

 private:
  const Instruction& fetch() const;
  void retire(const Instruction& instr, uint32_t next_pc,
              bool control_transfer);
  [[noreturn]] void trap(const std::string& what) const;

  std::shared_ptr<const DecodedProgram> program_;
  int core_id_;
  uint32_t pc_ = 0;
  std::array<uint32_t, 32> regs_{};
  std::array<uint32_t, 4> nn_w_{};
  std::array<uint32_t, 2> nn_a_{};
  std::array<HwLoopState, 2> loops_{};
  unsigned flush_cycles_ = 0;
  bool halted_ = false;
  bool at_barrier_ = false;
  bool mem_stalled_ = false;  // previous presentation was denied
  unsigned phase_ = 0;
  CoreCounters counters_;
};

/// Steps a single core against the given port until it halts. A barrier on
/// this path is the degenerate single-participant barrier: one idle cycle.
CycleReport run_core(Core& core, MemoryPort& mem, uint64_t max_cycles);

}  // namespace nnsim
