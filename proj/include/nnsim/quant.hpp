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
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nnsim::quant {

class QuantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform quantizer parameters over the real interval [alpha, beta):
/// t = alpha + eps * t_hat with eps = (beta - alpha) / (2^n_bits - 1).
/// Activations and outputs are constrained to alpha = 0 (unsigned images).
struct QuantSpec {
  int n_bits = 8;  // one of 8, 4, 2
  double alpha = 0.0;
  double beta = 255.0;
  bool is_signed = false;

  double eps() const { return (beta - alpha) / ((1 << n_bits) - 1); }
  int32_t min_value() const { return is_signed ? -(1 << (n_bits - 1)) : 0; }
  int32_t max_value() const {
    return is_signed ? (1 << (n_bits - 1)) - 1 : (1 << n_bits) - 1;
  }
};

/// Integer image of a real tensor, HWC layout, sub-byte elements packed
/// least-significant-first.
struct QuantTensor {
  int h = 0, w = 0, c = 0;
  QuantSpec spec;
  std::vector<uint8_t> data;  // ceil(h*w*c*n_bits/8) bytes

  size_t element_count() const {
    return static_cast<size_t>(h) * w * c;
  }
  size_t packed_bytes() const {
    return (element_count() * spec.n_bits + 7) / 8;
  }

  int32_t get(int y, int x, int ch) const;
  void set(int y, int x, int ch, int32_t v);
  std::vector<int32_t> unpacked() const;
};

QuantTensor make_tensor(int h, int w, int c, const QuantSpec& spec);

/// Packs values (each in range for n_bits, signed values as two's
/// complement) with element j in bits [(j % per_byte)*n_bits, ...) of byte
/// j / per_byte. Throws QuantError on out-of-range values.
std::vector<uint8_t> pack(std::span<const int32_t> values, int n_bits,
                          bool is_signed);

std::vector<int32_t> unpack(std::span<const uint8_t> bytes, int n_bits,
                            bool is_signed, size_t count);

/// Exact integer dot product in 32-bit wrap arithmetic (the LIN operator).
uint32_t lin(std::span<const int32_t> weights, std::span<const int32_t> acts);

/// Integer batch normalization: wrap32(kappa_hat * phi + lambda_hat).
uint32_t batch_norm(uint32_t phi, int32_t kappa_hat, int32_t lambda_hat);

/// Per-output-channel requantization parameters. The collapse is
/// y_hat = clip((m * phi') >> d) with m = floor(eps_phi' * 2^d / eps_y).
struct RequantParams {
  int32_t kappa_hat = 1;
  int32_t lambda_hat = 0;
  int32_t m = 1;
  int d = 0;  // in [0, 31], shared across channels in generated kernels
};

/// Multiply-shift-clip of a batch-normalized accumulator. The m*phi'
/// product is evaluated in 64-bit before the arithmetic shift; the result
/// saturates to [0, 2^out_bits - 1] (negative inputs clamp to 0). With
/// signed_out the clip range is [-2^(out_bits-1), 2^(out_bits-1) - 1].
int32_t requantize(int32_t phi_prime, const RequantParams& p, int out_bits,
                   bool signed_out = false);

double dequantize_value(int32_t image, const QuantSpec& spec);
int32_t quantize_value(double real, const QuantSpec& spec);

struct LayerGeometry {
  int h_in = 0, w_in = 0, c_in = 0;
  int c_out = 0;
  int f = 1;       // square filter
  int stride = 1;  // only 1 is supported
  int pad = 0;

  int h_out() const { return (h_in + 2 * pad - f) / stride + 1; }
  int w_out() const { return (w_in + 2 * pad - f) / stride + 1; }
  size_t receptive_field() const {
    return static_cast<size_t>(c_in) * f * f;
  }
};

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reference convolution: direct six-nested-loop evaluation of LIN, BN and
/// QNT/ACT per output element. This is the bit-exact oracle for the
/// simulated kernels; it unpacks its inputs up front and computes in plain
/// scalar integers.
QuantTensor golden_conv(const QuantTensor& input,
                        const std::vector<QuantTensor>& weights,
                        const std::vector<RequantParams>& params,
                        const LayerGeometry& geom, int out_bits);

/// Tensor file format: a small decimal-text header plus hex payload.
void write_tensor(std::ostream& os, const QuantTensor& t);
QuantTensor read_tensor(std::istream& is);

}  // namespace nnsim::quant
