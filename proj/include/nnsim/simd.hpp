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
#include <vector>

#include "nnsim/isa.hpp"

namespace nnsim {

/// A 32-bit machine word viewed as packed lanes. Lane i of format f occupies
/// bits [i*lane_bits, (i+1)*lane_bits); lane 0 is least significant.
struct SimdWord {
  uint32_t raw = 0;
};

/// One lane, sign- or zero-extended. Wide enough for every format.
int32_t extract_lane(SimdWord w, SimdFormat fmt, unsigned lane, bool is_signed);

std::vector<int32_t> extract_lanes(SimdWord w, SimdFormat fmt, bool is_signed);

/// Inserts the low lane_bits of value into lane `lane`.
SimdWord insert_lane(SimdWord w, SimdFormat fmt, unsigned lane, int32_t value);

/// Lane-wise multiply of a and b summed into a 32-bit two's-complement
/// accumulator; intermediate arithmetic is wide, the result wraps.
uint32_t dotp(SimdWord a, SimdWord b, SimdFormat fmt, Signedness s);

/// dotp plus accumulator, wrapping modulo 2^32.
uint32_t sdotp(SimdWord a, SimdWord b, uint32_t acc, SimdFormat fmt,
               Signedness s);

/// The non-dot vector family (add/sub/avg/max/min/shift/abs). When sc is
/// set, every b-lane is replaced by lane 0 of b. Lane results wrap modulo
/// 2^lane_bits; shift amounts use the low log2(lane_bits) bits of the b lane.
SimdWord vec_alu(PvOp op, SimdWord a, SimdWord b, SimdFormat fmt, bool sc);

/// Dispatch for any pv.* operation, dot or not.
uint32_t pv_execute(PvOp op, uint32_t a, uint32_t b, uint32_t acc,
                    SimdFormat fmt, bool sc);

}  // namespace nnsim
