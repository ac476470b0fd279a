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

#include "donorqca/gate_oracle.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "donorqca/errors.hpp"

namespace donorqca {

char to_char(Condition c) {
  switch (c) {
    case Condition::Zero:
      return '0';
    case Condition::One:
      return '1';
    case Condition::Any:
      return '*';
  }
  return '*';
}

Condition condition_from_char(char c) {
  switch (c) {
    case '0':
      return Condition::Zero;
    case '1':
      return Condition::One;
    case '*':
      return Condition::Any;
    default:
      throw ParseError(std::string("unknown neighbour condition '") + c + "'");
  }
}

bool condition_matches(Condition c, int bit) {
  return c == Condition::Any || (c == Condition::One) == (bit != 0);
}

GateRule GateRule::rotate(CellType target, Condition left, Condition right, double theta, double phi) {
  return GateRule{target, left, right, Equatorial{theta, phi}};
}

GateRule GateRule::z(CellType target, Condition left, Condition right, double alpha) {
  return GateRule{target, left, right, ZRotation{alpha}};
}

kernels::Mat2 GateRule::site_unitary() const {
  if (const auto* e = std::get_if<Equatorial>(&action)) return rotation(e->theta, e->phi);
  return z_rotation(std::get<ZRotation>(action).alpha);
}

std::string GateRule::str() const {
  char buf[96];
  if (const auto* e = std::get_if<Equatorial>(&action)) {
    std::snprintf(buf, sizeof buf, "%c[%c,%c] R(%.17g, %.17g)", to_char(target), to_char(left), to_char(right),
                  e->theta, e->phi);
  } else {
    std::snprintf(buf, sizeof buf, "%c[%c,%c] Rz(%.17g)", to_char(target), to_char(left), to_char(right),
                  std::get<ZRotation>(action).alpha);
  }
  return buf;
}

GateRule parse_rule(std::string_view text) {
  std::string s(text);
  char t = 0, l = 0, r = 0;
  double a = 0.0, b = 0.0;
  int consumed = 0;
  if (std::sscanf(s.c_str(), " %c[%c,%c] R(%lf, %lf)%n", &t, &l, &r, &a, &b, &consumed) == 5 &&
      consumed == static_cast<int>(s.size())) {
    return GateRule::rotate(cell_type_from_char(t), condition_from_char(l), condition_from_char(r), a, b);
  }
  consumed = 0;
  if (std::sscanf(s.c_str(), " %c[%c,%c] Rz(%lf)%n", &t, &l, &r, &a, &consumed) == 4 &&
      consumed == static_cast<int>(s.size())) {
    return GateRule::z(cell_type_from_char(t), condition_from_char(l), condition_from_char(r), a);
  }
  throw ParseError("cannot parse rule '" + s + "'");
}

int left_neighbour_bit(const Pattern&, std::uint64_t index, int site, const BoundaryPolicy& boundary) {
  if (site == 0) return boundary.left_virtual;
  return static_cast<int>(index >> (site - 1) & 1);
}

int right_neighbour_bit(const Pattern& pattern, std::uint64_t index, int site, const BoundaryPolicy& boundary) {
  if (static_cast<size_t>(site) + 1 == pattern.size()) return boundary.right_virtual;
  return static_cast<int>(index >> (site + 1) & 1);
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> condition_mask(const Pattern& pattern, int site,
                                                                        Condition left, Condition right,
                                                                        const BoundaryPolicy& boundary) {
  std::uint64_t mask = 0, value = 0;
  auto side = [&](Condition c, int neighbour, bool is_virtual, int virtual_bit) {
    if (c == Condition::Any) return true;
    const int want = c == Condition::One ? 1 : 0;
    if (is_virtual) return virtual_bit == want;
    mask |= std::uint64_t{1} << neighbour;
    if (want) value |= std::uint64_t{1} << neighbour;
    return true;
  };
  const bool last = static_cast<size_t>(site) + 1 == pattern.size();
  if (!side(left, site - 1, site == 0, boundary.left_virtual)) return std::nullopt;
  if (!side(right, site + 1, last, boundary.right_virtual)) return std::nullopt;
  return std::make_pair(mask, value);
}

Matrix conditional_unitary(const Pattern& pattern, const GateRule& rule, const BoundaryPolicy& boundary) {
  const int n = static_cast<int>(pattern.size());
  const size_t dim = size_t{1} << n;
  const kernels::Mat2 r = rule.site_unitary();
  const std::vector<int> targets = pattern.sites_of(rule.target);
  Matrix u = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (size_t in = 0; in < dim; ++in) {
    // Conditions are all read from the input basis state.
    std::uint64_t rotated = 0;
    for (int k : targets) {
      if (condition_matches(rule.left, left_neighbour_bit(pattern, in, k, boundary)) &&
          condition_matches(rule.right, right_neighbour_bit(pattern, in, k, boundary))) {
        rotated |= std::uint64_t{1} << k;
      }
    }
    for (size_t out = 0; out < dim; ++out) {
      if (((out ^ in) & ~rotated) != 0) continue;
      Complex amp = 1.0;
      for (int k : targets) {
        if (!(rotated >> k & 1)) continue;
        const int a = static_cast<int>(out >> k & 1), b = static_cast<int>(in >> k & 1);
        amp *= r[static_cast<size_t>(2 * a + b)];
      }
      u(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)) = amp;
    }
  }
  return u;
}

void apply_rule_in_place(ChainState& state, const GateRule& rule, const BoundaryPolicy& boundary) {
  const kernels::Mat2 r = rule.site_unitary();
  for (int k : state.pattern().sites_of(rule.target)) {
    auto cond = condition_mask(state.pattern(), k, rule.left, rule.right, boundary);
    if (!cond) continue;
    state.apply_1q(r, k, cond->first, cond->second);
  }
}

ChainState apply_rule(ChainState state, const GateRule& rule, const BoundaryPolicy& boundary) {
  apply_rule_in_place(state, rule, boundary);
  return state;
}

std::string classical_automaton_step(std::string_view bits, const Pattern& pattern, const GateRule& rule,
                                     const BoundaryPolicy& boundary) {
  const auto* e = std::get_if<Equatorial>(&rule.action);
  if (e == nullptr || std::fabs(std::remainder(e->theta - std::numbers::pi, 2.0 * std::numbers::pi)) > 1e-12) {
    throw SpecError("classical automaton steps need a pi rotation, got " + rule.str());
  }
  if (bits.size() != pattern.size()) throw SpecError("bit string length does not match the pattern");
  const std::uint64_t index = basis_index(bits);
  std::string out(bits);
  for (int k : pattern.sites_of(rule.target)) {
    if (condition_matches(rule.left, left_neighbour_bit(pattern, index, k, boundary)) &&
        condition_matches(rule.right, right_neighbour_bit(pattern, index, k, boundary))) {
      out[static_cast<size_t>(k)] = out[static_cast<size_t>(k)] == '1' ? '0' : '1';
    }
  }
  return out;
}

}  // namespace donorqca
