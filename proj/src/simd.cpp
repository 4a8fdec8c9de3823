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

#include "nnsim/simd.hpp"

#include <bit>

namespace nnsim {

namespace {

constexpr uint32_t lane_mask(SimdFormat fmt) {
  unsigned n = lane_bits(fmt);
  return n == 32 ? ~0u : (1u << n) - 1;
}

SimdWord replicate_lane0(SimdWord b, SimdFormat fmt) {
  uint32_t v = b.raw & lane_mask(fmt);
  uint32_t out = 0;
  for (unsigned i = 0; i < lane_count(fmt); ++i)
    out |= v << (i * lane_bits(fmt));
  return {out};
}

int32_t alu_lane(PvOp op, int32_t a, int32_t b, unsigned nbits) {
  // shift amounts are masked to log2(nbits) bits
  unsigned shamt =
      static_cast<uint32_t>(b) & ((1u << std::countr_zero(nbits)) - 1);
  switch (op) {
    case PvOp::Add: return a + b;
    case PvOp::Sub: return a - b;
    case PvOp::Avg: return (a + b) >> 1;
    case PvOp::Avgu:
      return static_cast<int32_t>(
          (static_cast<uint32_t>(a) + static_cast<uint32_t>(b)) >> 1);
    case PvOp::Max: return a > b ? a : b;
    case PvOp::Maxu:
    case PvOp::Minu: {
      uint32_t ua = static_cast<uint32_t>(a), ub = static_cast<uint32_t>(b);
      bool take_a = (op == PvOp::Maxu) ? ua > ub : ua < ub;
      return take_a ? a : b;
    }
    case PvOp::Min: return a < b ? a : b;
    case PvOp::Srl: return static_cast<int32_t>(static_cast<uint32_t>(a) >> shamt);
    case PvOp::Sra: return a >> shamt;
    case PvOp::Sll: return static_cast<int32_t>(static_cast<uint32_t>(a) << shamt);
    case PvOp::Abs: return a < 0 ? -a : a;
    default: return 0;
  }
}

// Unsigned lanes for avgu/maxu/minu/srl/sll, signed otherwise.
bool alu_lane_signed(PvOp op) {
  switch (op) {
    case PvOp::Avgu:
    case PvOp::Maxu:
    case PvOp::Minu:
    case PvOp::Srl:
    case PvOp::Sll:
      return false;
    default:
      return true;
  }
}

}  // namespace

int32_t extract_lane(SimdWord w, SimdFormat fmt, unsigned lane,
                     bool is_signed) {
  unsigned n = lane_bits(fmt);
  uint32_t v = (w.raw >> (lane * n)) & lane_mask(fmt);
  if (is_signed && (v >> (n - 1))) v |= ~lane_mask(fmt);
  return static_cast<int32_t>(v);
}

std::vector<int32_t> extract_lanes(SimdWord w, SimdFormat fmt,
                                   bool is_signed) {
  std::vector<int32_t> out(lane_count(fmt));
  for (unsigned i = 0; i < out.size(); ++i)
    out[i] = extract_lane(w, fmt, i, is_signed);
  return out;
}

SimdWord insert_lane(SimdWord w, SimdFormat fmt, unsigned lane,
                     int32_t value) {
  unsigned n = lane_bits(fmt);
  uint32_t m = lane_mask(fmt) << (lane * n);
  return {(w.raw & ~m) | ((static_cast<uint32_t>(value) << (lane * n)) & m)};
}

uint32_t dotp(SimdWord a, SimdWord b, SimdFormat fmt, Signedness s) {
  int64_t sum = 0;
  for (unsigned i = 0; i < lane_count(fmt); ++i) {
    sum += static_cast<int64_t>(extract_lane(a, fmt, i, s.first_signed)) *
           extract_lane(b, fmt, i, s.second_signed);
  }
  return static_cast<uint32_t>(sum);
}

uint32_t sdotp(SimdWord a, SimdWord b, uint32_t acc, SimdFormat fmt,
               Signedness s) {
  return dotp(a, b, fmt, s) + acc;
}

SimdWord vec_alu(PvOp op, SimdWord a, SimdWord b, SimdFormat fmt, bool sc) {
  if (sc) b = replicate_lane0(b, fmt);
  bool sign = alu_lane_signed(op);
  SimdWord out{0};
  for (unsigned i = 0; i < lane_count(fmt); ++i) {
    int32_t la = extract_lane(a, fmt, i, sign);
    int32_t lb = extract_lane(b, fmt, i, sign);
    out = insert_lane(out, fmt, i, alu_lane(op, la, lb, lane_bits(fmt)));
  }
  return out;
}

uint32_t pv_execute(PvOp op, uint32_t a, uint32_t b, uint32_t acc,
                    SimdFormat fmt, bool sc) {
  if (pv_is_dot(op)) {
    SimdWord wb{b};
    if (sc) wb = replicate_lane0(wb, fmt);
    uint32_t d = dotp({a}, wb, fmt, signedness_of(pv_sign(op)));
    return pv_accumulates(op) ? d + acc : d;
  }
  return vec_alu(op, {a}, {b}, fmt, sc).raw;
}

}  // namespace nnsim
