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

#include "nnsim/quant.hpp"

#include <cmath>
#include <istream>
#include <ostream>

namespace nnsim::quant {

namespace {

void check_range(int32_t v, int n_bits, bool is_signed) {
  int32_t lo = is_signed ? -(1 << (n_bits - 1)) : 0;
  int32_t hi = is_signed ? (1 << (n_bits - 1)) - 1 : (1 << n_bits) - 1;
  if (v < lo || v > hi)
    throw QuantError("value " + std::to_string(v) + " out of range for " +
                     std::to_string(n_bits) + "-bit element");
}

}  // namespace

std::vector<uint8_t> pack(std::span<const int32_t> values, int n_bits,
                          bool is_signed) {
  size_t per_byte = 8 / n_bits;
  std::vector<uint8_t> out((values.size() + per_byte - 1) / per_byte, 0);
  uint32_t mask = (1u << n_bits) - 1;
  for (size_t j = 0; j < values.size(); ++j) {
    check_range(values[j], n_bits, is_signed);
    unsigned shift = (j % per_byte) * n_bits;
    out[j / per_byte] |=
        static_cast<uint8_t>((static_cast<uint32_t>(values[j]) & mask)
                             << shift);
  }
  return out;
}

std::vector<int32_t> unpack(std::span<const uint8_t> bytes, int n_bits,
                            bool is_signed, size_t count) {
  size_t per_byte = 8 / n_bits;
  if (bytes.size() * per_byte < count)
    throw QuantError("packed buffer too small");
  std::vector<int32_t> out(count);
  uint32_t mask = (1u << n_bits) - 1;
  for (size_t j = 0; j < count; ++j) {
    unsigned shift = (j % per_byte) * n_bits;
    uint32_t v = (bytes[j / per_byte] >> shift) & mask;
    if (is_signed && (v >> (n_bits - 1))) v |= ~mask;
    out[j] = static_cast<int32_t>(v);
  }
  return out;
}

int32_t QuantTensor::get(int y, int x, int ch) const {
  size_t j = (static_cast<size_t>(y) * w + x) * c + ch;
  size_t per_byte = 8 / spec.n_bits;
  unsigned shift = (j % per_byte) * spec.n_bits;
  uint32_t mask = (1u << spec.n_bits) - 1;
  uint32_t v = (data[j / per_byte] >> shift) & mask;
  if (spec.is_signed && (v >> (spec.n_bits - 1))) v |= ~mask;
  return static_cast<int32_t>(v);
}

void QuantTensor::set(int y, int x, int ch, int32_t v) {
  check_range(v, spec.n_bits, spec.is_signed);
  size_t j = (static_cast<size_t>(y) * w + x) * c + ch;
  size_t per_byte = 8 / spec.n_bits;
  unsigned shift = (j % per_byte) * spec.n_bits;
  uint32_t mask = (1u << spec.n_bits) - 1;
  data[j / per_byte] = static_cast<uint8_t>(
      (data[j / per_byte] & ~(mask << shift)) |
      ((static_cast<uint32_t>(v) & mask) << shift));
}

std::vector<int32_t> QuantTensor::unpacked() const {
  return unpack(data, spec.n_bits, spec.is_signed, element_count());
}

QuantTensor make_tensor(int h, int w, int c, const QuantSpec& spec) {
  QuantTensor t;
  t.h = h;
  t.w = w;
  t.c = c;
  t.spec = spec;
  t.data.assign(t.packed_bytes(), 0);
  return t;
}

uint32_t lin(std::span<const int32_t> weights, std::span<const int32_t> acts) {
  if (weights.size() != acts.size())
    throw QuantError("lin operands must have matched lengths");
  uint32_t acc = 0;
  for (size_t i = 0; i < weights.size(); ++i)
    acc += static_cast<uint32_t>(weights[i]) * static_cast<uint32_t>(acts[i]);
  return acc;
}

uint32_t batch_norm(uint32_t phi, int32_t kappa_hat, int32_t lambda_hat) {
  return static_cast<uint32_t>(kappa_hat) * phi +
         static_cast<uint32_t>(lambda_hat);
}

int32_t requantize(int32_t phi_prime, const RequantParams& p, int out_bits,
                   bool signed_out) {
  if (p.d < 0 || p.d > 31) throw QuantError("shift amount out of range");
  int64_t shifted = (static_cast<int64_t>(p.m) * phi_prime) >> p.d;
  int64_t lo = signed_out ? -(1ll << (out_bits - 1)) : 0;
  int64_t hi = signed_out ? (1ll << (out_bits - 1)) - 1
                          : (1ll << out_bits) - 1;
  if (shifted < lo) return static_cast<int32_t>(lo);
  if (shifted > hi) return static_cast<int32_t>(hi);
  return static_cast<int32_t>(shifted);
}

double dequantize_value(int32_t image, const QuantSpec& spec) {
  return spec.alpha + spec.eps() * image;
}

int32_t quantize_value(double real, const QuantSpec& spec) {
  double t = (real - spec.alpha) / spec.eps();
  int32_t v = static_cast<int32_t>(std::lround(t));
  if (v < spec.min_value()) v = spec.min_value();
  if (v > spec.max_value()) v = spec.max_value();
  return v;
}

QuantTensor golden_conv(const QuantTensor& input,
                        const std::vector<QuantTensor>& weights,
                        const std::vector<RequantParams>& params,
                        const LayerGeometry& geom, int out_bits) {
  if (geom.stride != 1) throw GeometryError("only stride 1 is supported");
  if (input.h != geom.h_in || input.w != geom.w_in || input.c != geom.c_in)
    throw GeometryError("input tensor does not match the layer geometry");
  if (static_cast<int>(weights.size()) != geom.c_out ||
      static_cast<int>(params.size()) != geom.c_out)
    throw GeometryError("weights/params do not match c_out");
  for (const auto& w : weights)
    if (w.h != geom.f || w.w != geom.f || w.c != geom.c_in)
      throw GeometryError("filter tensor does not match the layer geometry");

  // Unpack everything first; the inner loops are plain scalar arithmetic.
  std::vector<int32_t> x = input.unpacked();
  std::vector<std::vector<int32_t>> wv(weights.size());
  for (size_t m = 0; m < weights.size(); ++m) wv[m] = weights[m].unpacked();

  QuantSpec out_spec;
  out_spec.n_bits = out_bits;
  out_spec.is_signed = false;
  out_spec.alpha = 0.0;
  out_spec.beta = static_cast<double>((1 << out_bits) - 1);
  QuantTensor out = make_tensor(geom.h_out(), geom.w_out(), geom.c_out,
                                out_spec);

  for (int oy = 0; oy < geom.h_out(); ++oy) {
    for (int ox = 0; ox < geom.w_out(); ++ox) {
      for (int oc = 0; oc < geom.c_out; ++oc) {
        uint32_t phi = 0;
        for (int fy = 0; fy < geom.f; ++fy) {
          int iy = oy + fy - geom.pad;
          if (iy < 0 || iy >= geom.h_in) continue;
          for (int fx = 0; fx < geom.f; ++fx) {
            int ix = ox + fx - geom.pad;
            if (ix < 0 || ix >= geom.w_in) continue;
            size_t xbase =
                (static_cast<size_t>(iy) * geom.w_in + ix) * geom.c_in;
            size_t wbase =
                (static_cast<size_t>(fy) * geom.f + fx) * geom.c_in;
            for (int ic = 0; ic < geom.c_in; ++ic) {
              phi += static_cast<uint32_t>(wv[oc][wbase + ic]) *
                     static_cast<uint32_t>(x[xbase + ic]);
            }
          }
        }
        uint32_t phi_prime =
            batch_norm(phi, params[oc].kappa_hat, params[oc].lambda_hat);
        int32_t y = requantize(static_cast<int32_t>(phi_prime), params[oc],
                               out_bits);
        out.set(oy, ox, oc, y);
      }
    }
  }
  return out;
}

void write_tensor(std::ostream& os, const QuantTensor& t) {
  os << "qtensor 1\n";
  os << "dims " << t.h << " " << t.w << " " << t.c << "\n";
  os << "bits " << t.spec.n_bits << "\n";
  os << "signed " << (t.spec.is_signed ? 1 : 0) << "\n";
  os << "alpha " << t.spec.alpha << "\n";
  os << "beta " << t.spec.beta << "\n";
  os << "payload\n";
  static const char* hex = "0123456789abcdef";
  for (size_t i = 0; i < t.data.size(); ++i) {
    os << hex[t.data[i] >> 4] << hex[t.data[i] & 0xf];
    if ((i + 1) % 32 == 0 || i + 1 == t.data.size()) os << "\n";
  }
}

QuantTensor read_tensor(std::istream& is) {
  std::string tag;
  int version = 0;
  is >> tag >> version;
  if (tag != "qtensor" || version != 1)
    throw QuantError("not a tensor file");
  QuantTensor t;
  int sgn = 0;
  std::string key;
  while (is >> key && key != "payload") {
    if (key == "dims") is >> t.h >> t.w >> t.c;
    else if (key == "bits") is >> t.spec.n_bits;
    else if (key == "signed") is >> sgn;
    else if (key == "alpha") is >> t.spec.alpha;
    else if (key == "beta") is >> t.spec.beta;
    else throw QuantError("unknown tensor header key: " + key);
  }
  t.spec.is_signed = sgn != 0;
  t.data.reserve(t.packed_bytes());
  auto nibble = [](char ch) -> int {
    if (ch >= '0' && ch <= '9') return ch - '0';
    if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
    if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
    return -1;
  };
  char c0, c1;
  while (t.data.size() < t.packed_bytes() && (is >> c0 >> c1)) {
    int hi = nibble(c0), lo = nibble(c1);
    if (hi < 0 || lo < 0) throw QuantError("bad hex payload");
    t.data.push_back(static_cast<uint8_t>((hi << 4) | lo));
  }
  if (t.data.size() != t.packed_bytes())
    throw QuantError("tensor payload truncated");
  return t;
}

}  // namespace nnsim::quant
