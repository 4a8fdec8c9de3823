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
#include <map>
#include <string>
#include <vector>

namespace nnsim {

/// Flat word image plus entry point and symbols, as produced by the
/// assembler and consumed by the simulators.
struct ProgramImage {
  struct Section {
    uint32_t base = 0;
    std::vector<uint32_t> words;
  };
  std::vector<Section> sections;  // non-overlapping, 4-byte aligned bases
  uint32_t entry = 0;
  std::map<std::string, uint32_t> symbols;

  bool operator==(const ProgramImage&) const = default;
};

/// Textual image format (bit-exact contract): optional `#` comment lines,
/// one `!entry <hexaddr>` line, `@<hexaddr>` section markers, then one
/// 8-hex-digit word per line. Symbols round-trip as `#sym <name> <hexaddr>`
/// comment lines.
void write_image(std::ostream& os, const ProgramImage& img);
ProgramImage read_image(std::istream& is);

}  // namespace nnsim
