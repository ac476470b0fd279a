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

#ifndef DONORQCA_CELL_HPP
#define DONORQCA_CELL_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace donorqca {

enum class CellType { A, B, C, D };

inline constexpr std::array<CellType, 4> kAllCellTypes{CellType::A, CellType::B, CellType::C, CellType::D};

char to_char(CellType t);
CellType cell_type_from_char(char c);

// Cyclic order of the repeating unit A -> B -> C -> A. D has no cyclic
// neighbours and yields nullopt.
std::optional<CellType> cyclic_predecessor(CellType t);
std::optional<CellType> cyclic_successor(CellType t);

// A typed donor chain such as ABCABCD. Invariants: non-empty, no two equal
// neighbouring types, at most one D and only as the final cell.
class Pattern {
 public:
  Pattern() = default;
  explicit Pattern(std::vector<CellType> cells);

  static Pattern parse(std::string_view text);

  size_t size() const { return cells_.size(); }
  CellType operator[](size_t k) const { return cells_[k]; }
  const std::vector<CellType>& cells() const { return cells_; }

  bool contains(CellType t) const;
  bool ends_with_d() const { return !cells_.empty() && cells_.back() == CellType::D; }
  std::vector<int> sites_of(CellType t) const;
  std::string str() const;

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  std::vector<CellType> cells_;
};

}  // namespace donorqca

#endif  // DONORQCA_CELL_HPP
