// Copyright 2026 The donorqca Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "donorqca/cell.hpp"

#include <algorithm>

#include "donorqca/errors.hpp"

namespace donorqca {

char to_char(CellType t) { return "ABCD"[static_cast<int>(t)]; }

CellType cell_type_from_char(char c) {
  switch (c) {
    case 'A':
      return CellType::A;
    case 'B':
      return CellType::B;
    case 'C':
      return CellType::C;
    case 'D':
      return CellType::D;
    default:
      throw ParseError(std::string("unknown cell type '") + c + "'");
  }
}

std::optional<CellType> cyclic_predecessor(CellType t) {
  switch (t) {
    case CellType::A:
      return CellType::C;
    case CellType::B:
      return CellType::A;
    case CellType::C:
      return CellType::B;
    case CellType::D:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<CellType> cyclic_successor(CellType t) {
  switch (t) {
    case CellType::A:
      return CellType::B;
    case CellType::B:
      return CellType::C;
    case CellType::C:
      return CellType::A;
    case CellType::D:
      return std::nullopt;
  }
  return std::nullopt;
}

Pattern::Pattern(std::vector<CellType> cells) : cells_(std::move(cells)) {
  if (cells_.empty()) throw SpecError("pattern must contain at least one cell");
  for (size_t k = 0; k + 1 < cells_.size(); ++k) {
    if (cells_[k] == cells_[k + 1]) {
      throw SpecError("pattern " + str() + ": neighbouring cells " + std::to_string(k) + " and " +
                      std::to_string(k + 1) + " share type " + to_char(cells_[k]));
    }
    if (cells_[k] == CellType::D) {
      throw SpecError("pattern " + str() + ": D may only appear as the final cell");
    }
  }
}

Pattern Pattern::parse(std::string_view text) {
  std::vector<CellType> cells;
  cells.reserve(text.size());
  for (char c : text) cells.push_back(cell_type_from_char(c));
  return Pattern(std::move(cells));
}

bool Pattern::contains(CellType t) const { return std::find(cells_.begin(), cells_.end(), t) != cells_.end(); }

std::vector<int> Pattern::sites_of(CellType t) const {
  std::vector<int> out;
  for (size_t k = 0; k < cells_.size(); ++k) {
    if (cells_[k] == t) out.push_back(static_cast<int>(k));
  }
  return out;
}

std::string Pattern::str() const {
  std::string s;
  for (CellType t : cells_) s.push_back(to_char(t));
  return s;
}

}  // namespace donorqca
