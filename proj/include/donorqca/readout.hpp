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


#ifndef DONORQCA_READOUT_HPP
#define DONORQCA_READOUT_HPP

#include <array>
#include <cstdint>

#include <json.hpp>

#include "donorqca/chain_state.hpp"
#include "donorqca/noise_ensemble.hpp"
#include "donorqca/programs.hpp"

namespace donorqca {

// All-down chain left by circularly polarised pumping. With fidelity < 1
// each cell independently ends up in '1' with probability 1 - fidelity.
ChainState initialize_pumped(const Pattern& pattern);
ChainState initialize_pumped(const Pattern& pattern, double fidelity, Rng& rng);

// Faraday rotation angle = kappa * <sigma_z> averaged over the target cells
// (and over molecules for an ensemble result).
struct FaradaySignal {
  double angle = 0.0;
  double stderr_ = 0.0;
  double kappa = 1.0;
  CellType target = CellType::D;
};

FaradaySignal faraday_readout(const EnsembleResult& result, const Pattern& pattern, CellType target,
                              double kappa = 1.0);
FaradaySignal faraday_readout(const ChainState& state, CellType target, double kappa = 1.0);

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double norm() const;
  std::array<double, 3> array() const { return {x, y, z}; }
};

BlochVector bloch_vector(const ChainState& state, int site);

// D pre-rotations of the three settings: none, R(pi/2, pi/2) about y and
// R(pi/2, 0) about x. The y rotation maps x onto -z and the x rotation maps
// y onto +z, so x = -M_z(y), y = +M_z(x), z = M_z(none).
std::array<PulseProgram, 3> tomography_programs(const DeviceSpec& spec, const PulseProgram& program);
BlochVector bloch_from_readouts(double z_none, double z_after_y, double z_after_x);

struct TomographyResult {
  BlochVector bloch;
  std::array<double, 3> stderr_{};
  std::size_t n_molecules = 0;
  std::uint64_t seed = 0;
  Level level = Level::Oracle;
  // {bloch: [x, y, z], stderr: [...], n_molecules, seed, level}
  nlohmann::json to_json() const;
};

// Runs the three settings over the ensemble. Settings share each molecule's
// static offsets and use separate trajectory streams.
TomographyResult tomography_D(const DeviceSpec& spec, const PulseProgram& program, const NoiseModel& noise,
                              std::size_t n_molecules, EnsembleOptions options = {});

// Exact density-matrix value of the same three readouts (no sampling,
// static offsets taken as zero).
BlochVector predicted_tomography_D(const DeviceSpec& spec, const PulseProgram& program, const NoiseModel& noise,
                                   Level level, const ChainState& initial);

}  // namespace donorqca

#endif  // DONORQCA_READOUT_HPP
