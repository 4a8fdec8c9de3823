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

#include <iosfwd>
#include <memory>
#include <vector>

#include "nnsim/core.hpp"

namespace nnsim {

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ClusterConfig {
  unsigned n_cores = 8;
  uint32_t tcdm_bytes = 128 * 1024;
  unsigned n_banks = 16;  // banking factor 2; 32 for banking factor 4
  uint32_t tcdm_base = 0x10000000;

  bool valid() const {
    return n_cores >= 1 && n_banks >= n_cores &&
           (n_banks & (n_banks - 1)) == 0 && tcdm_bytes % n_banks == 0;
  }
};

/// Key-value cluster configuration file: one `key value` pair per line
/// (cores, banks, tcdm_bytes, tcdm_base), `#` comments allowed.
ClusterConfig read_cluster_config(std::istream& is);
void write_cluster_config(std::ostream& os, const ClusterConfig& cfg);

/// Deterministic lockstep model of n cores sharing a word-interleaved
/// multi-banked TCDM behind a one-cycle interconnect. Each bank grants at
/// most one request per cycle; conflicts resolve by per-bank round-robin
/// and losing requests re-present automatically on the next cycle.
class Cluster {
 public:
  Cluster(const ClusterConfig& cfg,
          std::shared_ptr<const DecodedProgram> program);

  /// Resets all cores to the program entry with x10 = core id and
  /// x11 = n_cores.
  void reset();

  void load_bytes(uint32_t addr, const uint8_t* src, size_t n);
  std::vector<uint8_t> dump_bytes(uint32_t addr, size_t n) const;
  /// Loads the image sections that fall inside the TCDM range (data
  /// sections emitted via .org/.word).
  void load_data_sections(const ProgramImage& img);

  /// Advances the whole cluster by one cycle.
  void step();

  bool all_halted() const;
  uint64_t cycle() const { return cycle_; }
  const ClusterConfig& config() const { return cfg_; }
  Core& core(unsigned i) { return cores_[i]; }
  const Core& core(unsigned i) const { return cores_[i]; }
  unsigned bank_of(uint32_t addr) const {
    return ((addr - cfg_.tcdm_base) >> 2) & (cfg_.n_banks - 1);
  }

  /// Marks a core as arrived at the barrier. Throws ProtocolError when the
  /// core has already arrived in the current generation.
  void barrier_arrive(unsigned core_id);
  uint64_t barrier_generation() const { return barrier_generation_; }

  // interconnect statistics
  uint64_t total_requests() const { return total_requests_; }
  uint64_t total_grants() const { return total_grants_; }
  uint64_t max_wait_cycles() const { return max_wait_cycles_; }

 private:
  friend class TcdmPort;
  bool tcdm_access(unsigned core_id, uint32_t addr, bool is_store,
                   uint32_t& data);

  ClusterConfig cfg_;
  std::shared_ptr<const DecodedProgram> program_;
  std::vector<Core> cores_;
  std::vector<uint8_t> tcdm_;
  std::vector<unsigned> rr_next_;      // per-bank round-robin pointer
  std::vector<int> granted_;           // per-core: grant decision this cycle
  std::vector<unsigned> wait_streak_;  // per-core consecutive denials
  std::vector<uint8_t> barrier_arrived_;
  unsigned barrier_count_ = 0;
  bool barrier_release_ = false;
  uint64_t barrier_generation_ = 0;
  uint64_t cycle_ = 0;
  uint64_t total_requests_ = 0;
  uint64_t total_grants_ = 0;
  uint64_t max_wait_cycles_ = 0;
};

struct ClusterRunResult {
  std::vector<CycleReport> per_core;
  uint64_t cycles = 0;  // aggregate: max over cores == wall cycles
};

/// Runs to all-halted; deterministic for identical inputs.
ClusterRunResult run_cluster(Cluster& cluster, uint64_t max_cycles);

}  // namespace nnsim
