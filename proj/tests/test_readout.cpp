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


#include "donorqca/readout.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "donorqca/errors.hpp"

using namespace donorqca;
using namespace donorqca::units;

namespace {

constexpr double kPi = std::numbers::pi;
using C = Condition;

DeviceSpec device(const char* pattern) {
  DeviceSpec spec = zno_device();
  spec.pattern = Pattern::parse(pattern);
  return spec;
}

// Bloch vector of R(theta, phi)|0> from the rotation geometry: the south pole
// turned by theta about (cos phi, sin phi, 0).
BlochVector rotated_south_pole(double theta, double phi) {
  return {-std::sin(theta) * std::sin(phi), std::sin(theta) * std::cos(phi), -std::cos(theta)};
}

// D holds a0|0> + a1|1>, every other cell 0.
ChainState with_d(const Pattern& p, Complex a0, Complex a1) {
  StateVector v = StateVector::Zero(static_cast<Eigen::Index>(size_t{1} << p.size()));
  v[0] = a0;
  v[static_cast<Eigen::Index>(size_t{1} << (p.size() - 1))] = a1;
  return ChainState::pure(p, v);
}

TomographyResult noiseless(const DeviceSpec& spec, const PulseProgram& program, Level level,
                           std::optional<ChainState> initial = std::nullopt) {
  EnsembleOptions opt;
  opt.level = level;
  opt.initial = std::move(initial);
  return tomography_D(spec, program, NoiseModel::none(), 1, opt);
}

void expect_bloch(const BlochVector& got, const BlochVector& want, double tol) {
  EXPECT_NEAR(got.x, want.x, tol);
  EXPECT_NEAR(got.y, want.y, tol);
  EXPECT_NEAR(got.z, want.z, tol);
}

}  // namespace

TEST(readout, pumping_gives_all_down) {
  const ChainState s = initialize_pumped(Pattern::parse("ABCD"));
  EXPECT_EQ(s.amplitudes()[0], Complex(1.0, 0.0));
  for (double z : s.site_z()) EXPECT_EQ(z, -1.0);
  EXPECT_EQ(initialize_pumped(s.pattern()).amplitudes(), s.amplitudes());
  Rng rng = molecule_rng(1, 0, 2);
  EXPECT_EQ(initialize_pumped(s.pattern(), 1.0, rng).amplitudes(), s.amplitudes());
  EXPECT_THROW(initialize_pumped(s.pattern(), 1.5, rng), SpecError);
}

TEST(readout, imperfect_pumping_flip_rate) {
  const Pattern p = Pattern::parse("ABCABCD");
  Rng rng = molecule_rng(8, 0, 2);
  double up = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    for (double z : initialize_pumped(p, 0.9, rng).site_z()) up += (z + 1.0) / 2.0;
  }
  const double rate = up / (7.0 * n);
  EXPECT_NEAR(rate, 0.1, 3 * std::sqrt(0.09 / (7.0 * n)));
}

TEST(readout, faraday_examples) {
  const DeviceSpec spec = zno_device();
  const EnsembleResult r = run_ensemble(spec, NoiseModel::none(), PulseProgram{}, 4, {}, {});
  EXPECT_EQ(faraday_readout(r, spec.pattern, CellType::D).angle, -1.0);
  EXPECT_EQ(faraday_readout(r, spec.pattern, CellType::A, 2.5).angle, -2.5);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(faraday_readout(with_d(spec.pattern, h, h), CellType::D).angle, 0.0, 1e-15);
  // Half the molecules flipped: an equal mixture reads exactly zero.
  DensityMatrix rho = DensityMatrix::Zero(128, 128);
  rho(0, 0) = 0.5;
  rho(64, 64) = 0.5;
  EXPECT_EQ(faraday_readout(ChainState::mixed(spec.pattern, rho), CellType::D).angle, 0.0);
  EXPECT_THROW(faraday_readout(initialize_pumped(Pattern::parse("ABC")), CellType::D), SpecError);
}

TEST(readout, faraday_is_linear_in_mixtures) {
  const Pattern p = Pattern::parse("ABCD");
  std::mt19937_64 g(2);
  std::normal_distribution<double> nd;
  auto random = [&] {
    StateVector v(16);
    for (auto& a : v) a = Complex(nd(g), nd(g));
    v.normalize();
    return ChainState::pure(p, v);
  };
  const ChainState a = random(), b = random();
  const double w = 0.3;
  const DensityMatrix mix = w * a.density_matrix() + (1 - w) * b.density_matrix();
  for (CellType t : {CellType::A, CellType::D}) {
    const double lhs = faraday_readout(ChainState::mixed(p, mix), t).angle;
    const double rhs = w * faraday_readout(a, t).angle + (1 - w) * faraday_readout(b, t).angle;
    EXPECT_NEAR(lhs, rhs, 1e-12);
  }
}

TEST(readout, bloch_from_readouts_convention) {
  // A state at (x, y, z): the y pre-rotation reads -x and the x pre-rotation reads +y.
  const BlochVector b = bloch_from_readouts(0.3, -0.5, 0.2);
  EXPECT_EQ(b.x, 0.5);
  EXPECT_EQ(b.y, 0.2);
  EXPECT_EQ(b.z, 0.3);
}

TEST(readout, tomography_examples_oracle) {
  const DeviceSpec spec = device("ABCD");
  const PulseProgram flip = compile_rule(GateRule::rotate(CellType::D, C::Any, C::Any, kPi), spec);
  expect_bloch(noiseless(spec, flip, Level::Oracle).bloch, {0, 0, 1}, 1e-6);
  const PulseProgram to_plus_x = compile_rule(GateRule::rotate(CellType::D, C::Any, C::Any, kPi / 2, -kPi / 2), spec);
  expect_bloch(noiseless(spec, to_plus_x, Level::Oracle).bloch, {1, 0, 0}, 1e-6);
  EXPECT_THROW(tomography_D(device("ABC"), PulseProgram{}, NoiseModel::none(), 1), SpecError);
}

// Pulse-level pre-rotations on prepared D states. With sigma_z = diag(-1, 1)
// and sigma_y = [[0, i], [-i, 0]], e^{-i pi/4} gives (1, 1, 0)/sqrt2 and
// e^{+i pi/4} gives (1, -1, 0)/sqrt2.
TEST(readout, tomography_phase_convention_pulse_level) {
  const DeviceSpec spec = device("ABCD");
  const double h = 1.0 / std::sqrt(2.0), r = std::sqrt(2.0) / 2;
  const auto minus = noiseless(spec, {}, Level::Pulse, with_d(spec.pattern, h, h * std::polar(1.0, -kPi / 4)));
  expect_bloch(minus.bloch, {r, r, 0}, 1e-3);
  const auto plus = noiseless(spec, {}, Level::Pulse, with_d(spec.pattern, h, h * std::polar(1.0, kPi / 4)));
  expect_bloch(plus.bloch, {r, -r, 0}, 1e-3);
  // Same against direct expectation values of the prepared state.
  const BlochVector direct = bloch_vector(with_d(spec.pattern, h, h * std::polar(1.0, kPi / 4)), 3);
  expect_bloch(plus.bloch, direct, 1e-3);
}

TEST(readout, haar_round_trip_noiseless) {
  const DeviceSpec spec = device("ABCD");
  std::mt19937_64 g(20);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double theta = std::acos(1 - 2 * u(g)), phi = 2 * kPi * u(g);
    const PulseProgram prep = compile_rule(GateRule::rotate(CellType::D, C::Any, C::Any, theta, phi), spec);
    const TomographyResult t = noiseless(spec, prep, Level::Oracle);
    expect_bloch(t.bloch, rotated_south_pole(theta, phi), 0.01);
    EXPECT_LE(t.bloch.norm(), 1.0 + 1e-6);
  }
}

TEST(readout, haar_round_trip_noisy_ensemble) {
  const DeviceSpec spec = device("ABCD");
  const NoiseModel noise = NoiseModel::uniform(Time(1.0, us), Energy{}, kDefaultSeed);
  std::mt19937_64 g(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  EnsembleOptions opt;
  opt.level = Level::Oracle;
  for (int i = 0; i < 3; ++i) {
    const double theta = std::acos(1 - 2 * u(g)), phi = 2 * kPi * u(g);
    const PulseProgram prep = compile_rule(GateRule::rotate(CellType::D, C::Any, C::Any, theta, phi), spec);
    const TomographyResult t = tomography_D(spec, prep, noise, 10000, opt);
    const BlochVector exact =
        predicted_tomography_D(spec, prep, noise, Level::Oracle, initialize_pumped(spec.pattern));
    const auto got = t.bloch.array(), want = exact.array();
    for (int k = 0; k < 3; ++k) EXPECT_LE(std::abs(got[k] - want[k]), 3 * t.stderr_[k] + 1e-12) << i << " " << k;
    // Dephasing only shortens the vector.
    EXPECT_LT(exact.norm(), 1.0);
    EXPECT_GT(exact.norm(), 0.9);
  }
}

TEST(readout, end_to_end_cycle_noiseless) {
  const DeviceSpec spec = zno_device();
  const double theta = 1.2, phi = 2.2;
  PulseProgram p = compile_load(spec, theta, phi);
  p.append(compile_prepare_readout(spec, 0));
  const TomographyResult t = noiseless(spec, p, Level::Oracle);
  const BlochVector want = rotated_south_pole(theta, phi);
  const double f = 0.5 * (1 + t.bloch.x * want.x + t.bloch.y * want.y + t.bloch.z * want.z);
  EXPECT_GE(f, 0.999);
  const nlohmann::json j = t.to_json();
  EXPECT_EQ(j.at("bloch").size(), 3u);
  EXPECT_EQ(j.at("stderr").size(), 3u);
  EXPECT_EQ(j.at("n_molecules"), 1);
  EXPECT_EQ(j.at("seed"), kDefaultSeed);
}
