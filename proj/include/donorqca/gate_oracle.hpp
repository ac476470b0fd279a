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

#ifndef DONORQCA_GATE_ORACLE_HPP
#define DONORQCA_GATE_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "donorqca/cell.hpp"
#include "donorqca/chain_state.hpp"
#include "donorqca/device_params.hpp"

namespace donorqca {

enum class Condition { Zero, One, Any };

char to_char(Condition c);
Condition condition_from_char(char c);
bool condition_matches(Condition c, int bit);

// Rotation by theta about cos(phi) x + sin(phi) y.
struct Equatorial {
  double theta = 0.0;
  double phi = 0.0;
  friend bool operator==(const Equatorial&, const Equatorial&) = default;
};

// exp(-i alpha sigma_z / 2).
struct ZRotation {
  double alpha = 0.0;
  friend bool operator==(const ZRotation&, const ZRotation&) = default;
};

// One globally applied conditional rotation: every cell of type `target`
// whose left and right neighbours satisfy the conditions is rotated.
struct GateRule {
  CellType target = CellType::A;
  Condition left = Condition::Any;
  Condition right = Condition::Any;
  std::variant<Equatorial, ZRotation> action = Equatorial{};

  static GateRule rotate(CellType target, Condition left, Condition right, double theta, double phi = 0.0);
  static GateRule z(CellType target, Condition left, Condition right, double alpha);

  bool is_z() const { return std::holds_alternative<ZRotation>(action); }
  kernels::Mat2 site_unitary() const;
  // e.g. "A[0,1] R(3.14159265359, 0)" or "C[*,*] Rz(1.5707963268)".
  std::string str() const;

  friend bool operator==(const GateRule&, const GateRule&) = default;
};

// Parses the output of GateRule::str().
GateRule parse_rule(std::string_view text);

// Bit held by the left/right neighbour of `site` in basis state `index`, the
// boundary value when that neighbour is virtual.
int left_neighbour_bit(const Pattern& pattern, std::uint64_t index, int site, const BoundaryPolicy& boundary);
int right_neighbour_bit(const Pattern& pattern, std::uint64_t index, int site, const BoundaryPolicy& boundary);

// Control mask/value over real neighbour bits for one target site, or nullopt
// when a condition on a virtual neighbour can never hold.
std::optional<std::pair<std::uint64_t, std::uint64_t>> condition_mask(const Pattern& pattern, int site,
                                                                        Condition left, Condition right,
                                                                        const BoundaryPolicy& boundary);

// Dense 2^N x 2^N unitary, built column by column from the definition.
Matrix conditional_unitary(const Pattern& pattern, const GateRule& rule, const BoundaryPolicy& boundary = {});

void apply_rule_in_place(ChainState& state, const GateRule& rule, const BoundaryPolicy& boundary = {});
ChainState apply_rule(ChainState state, const GateRule& rule, const BoundaryPolicy& boundary = {});

// Synchronous update of a bit string (character k is site k); the rule must
// be a pi rotation.
std::string classical_automaton_step(std::string_view bits, const Pattern& pattern, const GateRule& rule,
                                     const BoundaryPolicy& boundary = {});

}  // namespace donorqca

#endif  // DONORQCA_GATE_ORACLE_HPP
