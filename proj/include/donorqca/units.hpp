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

#ifndef DONORQCA_UNITS_HPP
#define DONORQCA_UNITS_HPP

#include <array>
#include <cmath>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include "donorqca/errors.hpp"

namespace donorqca {

// Dimension exponents are (energy, time, length, magnetic field, temperature,
// charge). Every quantity is stored in the canonical unit of its dimension:
// ueV, ns, nm, T, K, C.
template <int E, int T, int L, int B = 0, int K = 0, int Q = 0>
class Quantity;

template <int E, int T, int L, int B = 0, int K = 0, int Q = 0>
struct Unit {
  double scale;  // canonical units per one of this unit
  std::string_view symbol;
};

template <int E, int T, int L, int B, int K, int Q>
class Quantity {
 public:
  static constexpr std::array<int, 6> kExponents{E, T, L, B, K, Q};

  constexpr Quantity() = default;
  constexpr Quantity(double value, Unit<E, T, L, B, K, Q> unit) : v_(value * unit.scale) {}

  static constexpr Quantity from_canonical(double v) {
    Quantity q;
    q.v_ = v;
    return q;
  }

  constexpr double canonical() const { return v_; }
  constexpr double in(Unit<E, T, L, B, K, Q> unit) const { return v_ / unit.scale; }

  constexpr Quantity operator-() const { return from_canonical(-v_); }
  constexpr Quantity& operator+=(Quantity o) {
    v_ += o.v_;
    return *this;
  }
  constexpr Quantity& operator-=(Quantity o) {
    v_ -= o.v_;
    return *this;
  }
  constexpr Quantity& operator*=(double s) {
    v_ *= s;
    return *this;
  }

  friend constexpr Quantity operator+(Quantity a, Quantity b) { return from_canonical(a.v_ + b.v_); }
  friend constexpr Quantity operator-(Quantity a, Quantity b) { return from_canonical(a.v_ - b.v_); }
  friend constexpr Quantity operator*(double s, Quantity q) { return from_canonical(s * q.v_); }
  friend constexpr Quantity operator*(Quantity q, double s) { return from_canonical(s * q.v_); }
  friend constexpr Quantity operator/(Quantity q, double s) { return from_canonical(q.v_ / s); }
  friend constexpr auto operator<=>(Quantity a, Quantity b) = default;

 private:
  double v_ = 0.0;
};

template <int E1, int T1, int L1, int B1, int K1, int Q1, int E2, int T2, int L2, int B2, int K2, int Q2>
constexpr Quantity<E1 + E2, T1 + T2, L1 + L2, B1 + B2, K1 + K2, Q1 + Q2> operator*(
    Quantity<E1, T1, L1, B1, K1, Q1> a, Quantity<E2, T2, L2, B2, K2, Q2> b) {
  return Quantity<E1 + E2, T1 + T2, L1 + L2, B1 + B2, K1 + K2, Q1 + Q2>::from_canonical(a.canonical() *
                                                                                       b.canonical());
}

template <int E1, int T1, int L1, int B1, int K1, int Q1, int E2, int T2, int L2, int B2, int K2, int Q2>
constexpr Quantity<E1 - E2, T1 - T2, L1 - L2, B1 - B2, K1 - K2, Q1 - Q2> operator/(
    Quantity<E1, T1, L1, B1, K1, Q1> a, Quantity<E2, T2, L2, B2, K2, Q2> b) {
  return Quantity<E1 - E2, T1 - T2, L1 - L2, B1 - B2, K1 - K2, Q1 - Q2>::from_canonical(a.canonical() /
                                                                                       b.canonical());
}

template <int E, int T, int L, int B, int K, int Q>
constexpr Quantity<E, T, L, B, K, Q> operator*(double v, Unit<E, T, L, B, K, Q> u) {
  return Quantity<E, T, L, B, K, Q>(v, u);
}

template <int E, int T, int L, int B, int K, int Q>
Quantity<E / 2, T / 2, L / 2, B / 2, K / 2, Q / 2> sqrt(Quantity<E, T, L, B, K, Q> q) {
  static_assert(E % 2 == 0 && T % 2 == 0 && L % 2 == 0 && B % 2 == 0 && K % 2 == 0 && Q % 2 == 0,
                "square root of a quantity needs even dimension exponents");
  return Quantity<E / 2, T / 2, L / 2, B / 2, K / 2, Q / 2>::from_canonical(std::sqrt(q.canonical()));
}

template <int E, int T, int L, int B, int K, int Q>
Quantity<E, T, L, B, K, Q> abs(Quantity<E, T, L, B, K, Q> q) {
  return Quantity<E, T, L, B, K, Q>::from_canonical(std::fabs(q.canonical()));
}

using Dimensionless = Quantity<0, 0, 0>;
using Energy = Quantity<1, 0, 0>;
using Time = Quantity<0, 1, 0>;
using Frequency = Quantity<0, -1, 0>;
using Length = Quantity<0, 0, 1>;
using InverseLength = Quantity<0, 0, -1>;
using NumberDensity = Quantity<0, 0, -3>;
using MagneticField = Quantity<0, 0, 0, 1>;
using Temperature = Quantity<0, 0, 0, 0, 1>;
using EnergyTime = Quantity<1, 1, 0>;
using EnergyLength = Quantity<1, 0, 1>;
using EnergyPerField = Quantity<1, 0, 0, -1>;
// cm^2 V^-1 s^-1, with V = energy / charge.
using Mobility = Quantity<-1, -1, 2, 0, 0, 1>;
using MassPerCharge = Quantity<1, 2, -2, 0, 0, -1>;

namespace units {

inline constexpr Unit<0, 0, 0> dimensionless{1.0, ""};

inline constexpr Unit<1, 0, 0> ueV{1.0, "ueV"};
inline constexpr Unit<1, 0, 0> meV{1.0e3, "meV"};
inline constexpr Unit<1, 0, 0> eV{1.0e6, "eV"};

inline constexpr Unit<0, 1, 0> fs{1.0e-6, "fs"};
inline constexpr Unit<0, 1, 0> ps{1.0e-3, "ps"};
inline constexpr Unit<0, 1, 0> ns{1.0, "ns"};
inline constexpr Unit<0, 1, 0> us{1.0e3, "us"};
inline constexpr Unit<0, 1, 0> ms{1.0e6, "ms"};
inline constexpr Unit<0, 1, 0> s{1.0e9, "s"};

inline constexpr Unit<0, -1, 0> Hz{1.0e-9, "Hz"};
inline constexpr Unit<0, -1, 0> MHz{1.0e-3, "MHz"};
inline constexpr Unit<0, -1, 0> GHz{1.0, "GHz"};

inline constexpr Unit<0, 0, 1> nm{1.0, "nm"};
inline constexpr Unit<0, 0, 1> cm{1.0e7, "cm"};
inline constexpr Unit<0, 0, -1> per_nm{1.0, "nm^-1"};
inline constexpr Unit<0, 0, -3> per_cm3{1.0e-21, "cm^-3"};

inline constexpr Unit<0, 0, 0, 1> T{1.0, "T"};
inline constexpr Unit<0, 0, 0, 1> mT{1.0e-3, "mT"};
inline constexpr Unit<0, 0, 0, 0, 1> K{1.0, "K"};

inline constexpr Unit<1, 1, 0> ueV_ns{1.0, "ueV*ns"};
inline constexpr Unit<1, 0, 1> ueV_nm{1.0, "ueV*nm"};
inline constexpr Unit<1, 0, 0, -1> ueV_per_T{1.0, "ueV/T"};

// 1 V = 6.241509074e24 ueV / C, 1 s = 1e9 ns, 1 cm^2 = 1e14 nm^2.
inline constexpr Unit<-1, -1, 2, 0, 0, 1> cm2_per_Vs{1.0e14 / (6.241509074e24 * 1.0e9), "cm^2/(V*s)"};
// 1 kg = 6.241509074e24 ueV ns^2 / nm^2.
inline constexpr Unit<1, 2, -2, 0, 0, -1> kg_per_C{6.241509074e24, "kg/C"};

}  // namespace units

namespace constants {

// E = h * nu.
inline constexpr EnergyTime planck = EnergyTime::from_canonical(4.135667);
// Gamma = hbar / tau.
inline constexpr EnergyTime hbar = EnergyTime::from_canonical(0.6582120);
inline constexpr EnergyPerField bohr_magneton = EnergyPerField::from_canonical(57.883);
inline constexpr MassPerCharge electron_mass_per_charge = MassPerCharge(5.68563e-12, units::kg_per_C);

}  // namespace constants

inline Energy energy_from_frequency(Frequency nu) { return constants::planck * nu; }
inline Frequency frequency_from_energy(Energy e) { return e / constants::planck; }
inline Energy linewidth_from_time(Time tau) { return constants::hbar / tau; }
inline Time time_from_linewidth(Energy gamma) { return constants::hbar / gamma; }

// Runtime-tagged quantity, produced by parsing text such as "12 meV" or
// "2000 cm^2/(V*s)". Arithmetic checks dimensions and throws DimensionError.
struct RuntimeQuantity {
  double canonical = 0.0;
  std::array<int, 6> exponents{};

  RuntimeQuantity operator+(const RuntimeQuantity& o) const;
  RuntimeQuantity operator-(const RuntimeQuantity& o) const;
  RuntimeQuantity operator*(const RuntimeQuantity& o) const;
  RuntimeQuantity operator/(const RuntimeQuantity& o) const;

  template <class Q>
  Q as() const {
    if (exponents != Q::kExponents) {
      throw DimensionError("quantity has dimension " + describe_dimension(exponents) + ", expected " +
                           describe_dimension(Q::kExponents));
    }
    return Q::from_canonical(canonical);
  }

  static std::string describe_dimension(const std::array<int, 6>& e);
};

// Parses "<number> [unit expression]". Unit expressions accept products with
// '*' or '.', quotients with '/', integer powers with '^', and parentheses.
RuntimeQuantity parse_quantity(std::string_view text);

// Parses a unit expression alone ("meV", "cm^-3", "ueV*nm").
RuntimeQuantity parse_unit(std::string_view text);

template <class Q>
Q parse_as(std::string_view text) {
  return parse_quantity(text).as<Q>();
}

// A double v with v * factor == canonical exactly, if one exists. Writing v
// in a unit of that factor then reads back bit-identically.
std::optional<double> exact_in_unit(double canonical, double factor);
// Nearest value to `canonical` (within a few ulp) that has such a v.
double snap_to_unit(double canonical, double factor);
// "<v> <unit>" when exact, else "<canonical> <canonical_unit>"; %.17g.
std::string format_quantity(double canonical, std::string_view unit, std::string_view canonical_unit);

}  // namespace donorqca

#endif  // DONORQCA_UNITS_HPP
