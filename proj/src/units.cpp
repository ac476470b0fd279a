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

#include "donorqca/units.hpp"

#include <charconv>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

namespace donorqca {
namespace {

using Exps = std::array<int, 6>;

Exps add(const Exps& a, const Exps& b, int sign = 1) {
  Exps r{};
  for (size_t i = 0; i < r.size(); ++i) r[i] = a[i] + sign * b[i];
  return r;
}

RuntimeQuantity power(const RuntimeQuantity& q, int n) {
  RuntimeQuantity r{std::pow(q.canonical, n), {}};
  for (size_t i = 0; i < r.exponents.size(); ++i) r.exponents[i] = q.exponents[i] * n;
  return r;
}

const std::map<std::string, RuntimeQuantity, std::less<>>& unit_table() {
  static const std::map<std::string, RuntimeQuantity, std::less<>> table = [] {
    std::map<std::string, RuntimeQuantity, std::less<>> t;
    auto put = [&t](std::initializer_list<const char*> names, double scale, Exps e) {
      for (const char* n : names) t[n] = RuntimeQuantity{scale, e};
    };
    const Exps energy{1, 0, 0, 0, 0, 0};
    const Exps time{0, 1, 0, 0, 0, 0};
    const Exps length{0, 0, 1, 0, 0, 0};
    const Exps field{0, 0, 0, 1, 0, 0};
    const Exps temp{0, 0, 0, 0, 1, 0};
    const Exps charge{0, 0, 0, 0, 0, 1};
    put({"ueV", "μeV", "µeV"}, 1.0, energy);
    put({"meV"}, 1.0e3, energy);
    put({"eV"}, 1.0e6, energy);
    put({"fs"}, 1.0e-6, time);
    put({"ps"}, 1.0e-3, time);
    put({"ns"}, 1.0, time);
    put({"us", "μs", "µs"}, 1.0e3, time);
    put({"ms"}, 1.0e6, time);
    put({"s"}, 1.0e9, time);
    put({"Hz"}, 1.0e-9, {0, -1, 0, 0, 0, 0});
    put({"kHz"}, 1.0e-6, {0, -1, 0, 0, 0, 0});
    put({"MHz"}, 1.0e-3, {0, -1, 0, 0, 0, 0});
    put({"GHz"}, 1.0, {0, -1, 0, 0, 0, 0});
    put({"nm"}, 1.0, length);
    put({"um", "μm", "µm"}, 1.0e3, length);
    put({"cm"}, 1.0e7, length);
    put({"m"}, 1.0e9, length);
    put({"T"}, 1.0, field);
    put({"mT"}, 1.0e-3, field);
    put({"G"}, 1.0e-4, field);
    put({"K"}, 1.0, temp);
    put({"C"}, 1.0, charge);
    put({"V"}, 6.241509074e24, {1, 0, 0, 0, 0, -1});
    put({"kg"}, 6.241509074e24, {1, 2, -2, 0, 0, 0});
    return t;
  }();
  return table;
}

class UnitParser {
 public:
  explicit UnitParser(std::string_view text) : text_(text) {}

  RuntimeQuantity parse() {
    skip_ws();
    if (pos_ == text_.size()) return RuntimeQuantity{1.0, {}};
    RuntimeQuantity r{1.0, {}};
    if (text_[pos_] == '/') {
      // "0.3 / nm" reads as 0.3 nm^-1.
      ++pos_;
      r = r / factor();
      r = continue_term(r);
    } else {
      r = term();
    }
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing characters");
    return r;
  }

 private:
  RuntimeQuantity term() { return continue_term(factor()); }

  RuntimeQuantity continue_term(RuntimeQuantity r) {
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size()) return r;
      char c = text_[pos_];
      if (c == '*' || c == '.') {
        ++pos_;
        r = r * factor();
      } else if (c == '/') {
        ++pos_;
        r = r / factor();
      } else if (starts_with("·")) {
        pos_ += std::string_view("·").size();
        r = r * factor();
      } else {
        return r;
      }
    }
  }

  RuntimeQuantity factor() {
    skip_ws();
    RuntimeQuantity base;
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      base = term();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("missing ')'");
      ++pos_;
    } else {
      size_t start = pos_;
      while (pos_ < text_.size() && is_symbol_char(text_[pos_]) && !starts_with("·")) ++pos_;
      if (start == pos_) fail("expected a unit symbol");
      std::string_view sym = text_.substr(start, pos_ - start);
      auto it = unit_table().find(sym);
      if (it == unit_table().end()) fail("unknown unit '" + std::string(sym) + "'");
      base = it->second;
    }
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_ws();
      int n = 0;
      const char* first = text_.data() + pos_;
      const char* last = text_.data() + text_.size();
      if (*first == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, last, n);
      if (ec != std::errc()) fail("bad exponent");
      pos_ = static_cast<size_t>(ptr - text_.data());
      base = power(base, n);
    }
    return base;
  }

  static bool is_symbol_char(char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalpha(u) || u >= 0x80;
  }

  bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("cannot parse unit '" + std::string(text_) + "': " + what);
  }

  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace

RuntimeQuantity RuntimeQuantity::operator+(const RuntimeQuantity& o) const {
  if (exponents != o.exponents) {
    throw DimensionError("cannot add " + describe_dimension(exponents) + " and " + describe_dimension(o.exponents));
  }
  return {canonical + o.canonical, exponents};
}

RuntimeQuantity RuntimeQuantity::operator-(const RuntimeQuantity& o) const {
  if (exponents != o.exponents) {
    throw DimensionError("cannot subtract " + describe_dimension(o.exponents) + " from " +
                         describe_dimension(exponents));
  }
  return {canonical - o.canonical, exponents};
}

RuntimeQuantity RuntimeQuantity::operator*(const RuntimeQuantity& o) const {
  return {canonical * o.canonical, add(exponents, o.exponents)};
}

RuntimeQuantity RuntimeQuantity::operator/(const RuntimeQuantity& o) const {
  return {canonical / o.canonical, add(exponents, o.exponents, -1)};
}

std::string RuntimeQuantity::describe_dimension(const std::array<int, 6>& e) {
  static constexpr const char* kNames[6] = {"energy", "time", "length", "field", "temperature", "charge"};
  std::ostringstream out;
  bool any = false;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (any) out << '*';
    out << kNames[i];
    if (e[i] != 1) out << '^' << e[i];
    any = true;
  }
  return any ? out.str() : "dimensionless";
}

RuntimeQuantity parse_unit(std::string_view text) { return UnitParser(text).parse(); }

RuntimeQuantity parse_quantity(std::string_view text) {
  std::string owned(text);
  const char* begin = owned.c_str();
  char* end = nullptr;
  double value = std::strtod(begin, &end);
  if (end == begin) throw ParseError("cannot parse quantity '" + owned + "': expected a number");
  RuntimeQuantity unit = parse_unit(std::string_view(end));
  return RuntimeQuantity{value * unit.canonical, unit.exponents};
}

std::optional<double> exact_in_unit(double canonical, double factor) {
  const double v0 = canonical / factor;
  if (v0 * factor == canonical) return v0;
  double up = v0, down = v0;
  for (int i = 0; i < 4; ++i) {
    up = std::nextafter(up, HUGE_VAL);
    down = std::nextafter(down, -HUGE_VAL);
    if (up * factor == canonical) return up;
    if (down * factor == canonical) return down;
  }
  return std::nullopt;
}

double snap_to_unit(double canonical, double factor) {
  if (exact_in_unit(canonical, factor)) return canonical;
  double best = (canonical / factor) * factor;
  double v = canonical / factor;
  for (double dir : {HUGE_VAL, -HUGE_VAL}) {
    double c = v;
    for (int i = 0; i < 4; ++i) {
      c = std::nextafter(c, dir);
      if (std::fabs(c * factor - canonical) < std::fabs(best - canonical)) best = c * factor;
    }
  }
  return best;
}

std::string format_quantity(double canonical, std::string_view unit, std::string_view canonical_unit) {
  const double factor = parse_unit(unit).canonical;
  // Shortest text that parses back to the same double.
  auto shortest = [](double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr) + " ";
  };
  if (auto v = exact_in_unit(canonical, factor)) return shortest(*v) + std::string(unit);
  return shortest(canonical) + std::string(canonical_unit);
}

}  // namespace donorqca
