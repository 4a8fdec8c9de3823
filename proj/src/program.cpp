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

#include "nnsim/program.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nnsim {

void write_image(std::ostream& os, const ProgramImage& img) {
  os << std::hex << std::setfill('0');
  os << "!entry " << std::setw(8) << img.entry << "\n";
  for (const auto& [name, addr] : img.symbols)
    os << "#sym " << name << " " << std::setw(8) << addr << "\n";
  for (const auto& sec : img.sections) {
    os << "@" << std::setw(8) << sec.base << "\n";
    for (uint32_t w : sec.words) os << std::setw(8) << w << "\n";
  }
  os << std::dec;
}

ProgramImage read_image(std::istream& is) {
  ProgramImage img;
  std::string line;
  bool have_section = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("#sym ", 0) == 0) {
      std::istringstream ls(line.substr(5));
      std::string name;
      uint32_t addr;
      ls >> name >> std::hex >> addr;
      if (!ls) throw std::runtime_error("bad symbol line: " + line);
      img.symbols[name] = addr;
      continue;
    }
    if (line[0] == '#') continue;
    if (line.rfind("!entry", 0) == 0) {
      img.entry = static_cast<uint32_t>(std::stoul(line.substr(6), nullptr, 16));
      continue;
    }
    if (line[0] == '@') {
      ProgramImage::Section sec;
      sec.base = static_cast<uint32_t>(std::stoul(line.substr(1), nullptr, 16));
      if (sec.base % 4 != 0)
        throw std::runtime_error("section base not word aligned");
      img.sections.push_back(sec);
      have_section = true;
      continue;
    }
    if (!have_section) throw std::runtime_error("word before @section marker");
    size_t pos = 0;
    uint32_t w = static_cast<uint32_t>(std::stoul(line, &pos, 16));
    if (pos != line.size() || line.size() != 8)
      throw std::runtime_error("bad image word: " + line);
    img.sections.back().words.push_back(w);
  }
  return img;
}

}  // namespace nnsim
