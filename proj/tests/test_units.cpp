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

#include <gtest/gtest.h>

using namespace donorqca;
using namespace donorqca::units;

TEST(units, canonical_storage) {
  Energy e(12.0, meV);
  ASSERT_DOUBLE_EQ(e.canonical(), 12000.0);
  ASSERT_DOUBLE_EQ(e.in(meV), 12.0);
  ASSERT_DOUBLE_EQ(Time(60.0, ps).in(ns), 0.06);
  ASSERT_DOUBLE_EQ(Frequency(1.4, MHz).in(GHz), 1.4e-3);
}

TEST(units, products_carry_dimensions) {
  Energy e = 2.0 * meV;
  Energy sq_over = (e * e) / (4.0 * meV);
  ASSERT_DOUBLE_EQ(sq_over.in(ueV), 1000.0);
  Time t = constants::hbar / (1.0 * ueV);
  ASSERT_NEAR(t.in(ns), 0.658212, 1e-9);
  static_assert(std::is_same_v<decltype(e / constants::planck), Frequency>);
  static_assert(std::is_same_v<decltype(sqrt(e * e)), Energy>);
}

TEST(units, energy_frequency_and_linewidth_conventions) {
  // E = h nu and Gamma = hbar / tau, from CODATA in SI.
  const double h_si = 6.62607015e-34, hbar_si = h_si / (2.0 * M_PI), e_si = 1.602176634e-19;
  const double ueV_per_ghz = h_si * 1e9 / e_si * 1e6;
  ASSERT_NEAR(energy_from_frequency(Frequency(23.0, GHz)).in(ueV), 23.0 * ueV_per_ghz, 1e-6 * 95.12);
  const double gamma_60ps = hbar_si / 60e-12 / e_si * 1e6;
  ASSERT_NEAR(linewidth_from_time(Time(60.0, ps)).in(ueV), gamma_60ps, 1e-5);
  ASSERT_NEAR(time_from_linewidth(linewidth_from_time(Time(3.0, ns))).in(ns), 3.0, 1e-12);
}

TEST(units, mobility_times_mass_per_charge_is_a_time) {
  Mobility mu(2000.0, cm2_per_Vs);
  Time tau = 0.30 * (mu * constants::electron_mass_per_charge);
  // SI: 0.2 m^2/(V s) * 0.30 * 9.1093837e-31 kg / 1.602176634e-19 C.
  const double tau_si = 0.2 * 0.30 * 9.1093837015e-31 / 1.602176634e-19;
  ASSERT_NEAR(tau.in(fs), tau_si * 1e15, 1e-3);
}

TEST(units, parse_simple_quantities) {
  ASSERT_DOUBLE_EQ(parse_as<Energy>("12 meV").in(ueV), 12000.0);
  ASSERT_DOUBLE_EQ(parse_as<Energy>("95ueV").in(ueV), 95.0);
  ASSERT_DOUBLE_EQ(parse_as<Energy>("95 μeV").in(ueV), 95.0);
  ASSERT_DOUBLE_EQ(parse_as<Time>("60 ps").in(ns), 0.06);
  ASSERT_DOUBLE_EQ(parse_as<Frequency>("23 GHz").in(GHz), 23.0);
  ASSERT_DOUBLE_EQ(parse_as<MagneticField>("0.2 mT").in(mT), 0.2);
  ASSERT_DOUBLE_EQ(parse_as<Dimensionless>("0.05").canonical(), 0.05);
}

TEST(units, parse_compound_units) {
  ASSERT_NEAR(parse_as<NumberDensity>("1e17 cm^-3").in(per_cm3), 1e17, 1e3);
  ASSERT_DOUBLE_EQ(parse_as<EnergyLength>("-64 ueV*nm").in(ueV_nm), -64.0);
  ASSERT_DOUBLE_EQ(parse_as<EnergyLength>("-64 ueV·nm").in(ueV_nm), -64.0);
  ASSERT_NEAR(parse_as<Mobility>("2000 cm^2/(V*s)").in(cm2_per_Vs), 2000.0, 1e-9);
  ASSERT_NEAR(parse_as<InverseLength>("0.359 nm^-1").in(per_nm), 0.359, 1e-15);
  ASSERT_NEAR(parse_as<InverseLength>("0.359 / nm").canonical(), 0.359, 1e-15);
}

TEST(units, dimension_mismatch_throws) {
  ASSERT_THROW(parse_as<Energy>("10 ns"), DimensionError);
  ASSERT_THROW(parse_as<Time>("2000 cm^2/(V*s)"), DimensionError);
  RuntimeQuantity a = parse_quantity("1 meV");
  RuntimeQuantity b = parse_quantity("1 ns");
  ASSERT_THROW(a + b, DimensionError);
  ASSERT_NO_THROW(a * b);
  ASSERT_DOUBLE_EQ((a / parse_quantity("4 ueV")).as<Dimensionless>().canonical(), 250.0);
}

TEST(units, parse_errors) {
  ASSERT_THROW(parse_quantity("meV"), ParseError);
  ASSERT_THROW(parse_quantity("3 furlongs"), ParseError);
  ASSERT_THROW(parse_quantity("3 (meV"), ParseError);
  ASSERT_THROW(parse_quantity("3 meV^x"), ParseError);
}

TEST(units, describe_dimension) {
  ASSERT_EQ(RuntimeQuantity::describe_dimension(Energy::kExponents), "energy");
  ASSERT_EQ(RuntimeQuantity::describe_dimension(Dimensionless::kExponents), "dimensionless");
  ASSERT_EQ(RuntimeQuantity::describe_dimension(NumberDensity::kExponents), "length^-3");
}
