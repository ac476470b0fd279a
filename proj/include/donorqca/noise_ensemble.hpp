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


#ifndef DONORQCA_NOISE_ENSEMBLE_HPP
#define DONORQCA_NOISE_ENSEMBLE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "donorqca/chain_state.hpp"
#include "donorqca/device_params.hpp"
#include "donorqca/programs.hpp"

namespace donorqca {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20260101;
inline constexpr double kFwhmPerSigma = 2.355;

// Per-type T2 (absent = no dephasing) and static inhomogeneous FWHM of the
// spin transition.
struct NoiseModel {
  std::map<CellType, Time> t2;
  std::map<CellType, Energy> inhomogeneous_fwhm;
  std::uint64_t seed = kDefaultSeed;

  static NoiseModel none(std::uint64_t seed = kDefaultSeed);
  static NoiseModel uniform(std::optional<Time> t2, Energy fwhm, std::uint64_t seed = kDefaultSeed);

  std::optional<Time> t2_of(CellType t) const;
  Energy fwhm_of(CellType t) const;
  bool has_dephasing() const { return !t2.empty(); }
  bool has_offsets() const;
  // Throws SpecError for T2 <= 0 or negative widths.
  void validate() const;
};

// {"T2": "90 us" | {"A": "...", ...}, "Gamma_inh": "0.08 ueV" | {...}, "seed": n}
NoiseModel noise_model_from_json(const nlohmann::json& j);
nlohmann::json noise_model_to_json(const NoiseModel& model);

// Stream numbering inside one molecule.
enum class Stream : std::uint64_t { Offsets = 0, Trajectory = 1, Pumping = 2, FirstSetting = 3 };

// Independent generator for (seed, molecule, stream), seeded through
// splitmix64 so that draws do not depend on scheduling.
Rng molecule_rng(std::uint64_t seed, std::uint64_t molecule, std::uint64_t stream);

// p = (1 - exp(-duration / T2)) / 2.
double phase_flip_probability(Time duration, Time t2);

// Phase damping on one site: coherences scale by exp(-duration / T2).
void dephase(ChainState& rho, int site, Time duration, Time t2);
ChainState dephase(ChainState rho, int site, Time duration, std::optional<Time> t2);
// Applies sigma_z on `site` with probability phase_flip_probability.
void trajectory_dephase(ChainState& psi, int site, Time duration, Time t2, Rng& rng);

// Gaussian per-site transition-energy offsets in ueV, sd = FWHM / 2.355.
std::vector<double> draw_static_offsets(const NoiseModel& model, const Pattern& pattern, Rng& rng);

enum class Level { Oracle, Pulse };
Level level_from_string(const std::string& s);
std::string to_string(Level level);

// Noise and observation hooks for one run of a program.
struct RunContext {
  Level level = Level::Pulse;
  std::optional<Time> dt;
  std::vector<double> offsets;  // ueV per site; active while the circular laser is on
  const NoiseModel* noise = nullptr;
  Rng* rng = nullptr;           // trajectory stream; null means exact channels (density states)
  std::vector<Time> sample_times;
  // Logical-frame state at each sample time, in order.
  std::function<void(size_t, const ChainState&)> on_sample;
};

// Runs a program on one chain. Oracle level applies each rule event as its
// ideal unitary at the event midpoint with free evolution on both sides;
// events without a rule run at pulse level. Dephasing acts as a channel on
// density matrices and as sampled phase flips on pure states.
void run_program_in_place(ChainState& state, const PulseProgram& program, const DeviceSpec& spec,
                          const RunContext& ctx);
ChainState run_program(ChainState state, const PulseProgram& program, const DeviceSpec& spec,
                       Level level = Level::Pulse, std::optional<Time> dt = std::nullopt);

struct EnsembleOptions {
  Level level = Level::Pulse;
  int threads = 0;  // 0 = OpenMP default
  std::optional<Time> dt;
  std::optional<ChainState> initial;  // default: pumped all-down chain
  double pumping_fidelity = 1.0;
  std::uint64_t trajectory_stream = static_cast<std::uint64_t>(Stream::Trajectory);
};

struct EnsembleResult {
  std::vector<Time> times;
  std::vector<Observable> observables;
  std::vector<std::vector<double>> mean;    // [observable][time]
  std::vector<std::vector<double>> stderr_;  // [observable][time]
  std::vector<double> final_site_z;
  std::vector<double> final_site_z_stderr;
  std::size_t n_molecules = 0;
  std::uint64_t seed = 0;
  Level level = Level::Pulse;

  nlohmann::json to_json() const;
  // time_ns,observable,mean,stderr with %.12g values.
  std::string to_csv() const;
};

// Molecules are processed in fixed chunks of kEnsembleChunk and reduced in
// chunk order, so results are identical for any thread count. Empty
// sample_times means t = 0 and the end of every event.
inline constexpr std::size_t kEnsembleChunk = 1024;
EnsembleResult run_ensemble(const DeviceSpec& spec, const NoiseModel& model, const PulseProgram& program,
                            std::size_t n_molecules, const std::vector<Observable>& observables,
                            const std::vector<Time>& sample_times, const EnsembleOptions& options = {});

// Exact density-matrix evolution of the same noisy program with fixed
// offsets (zero by default); no sampling.
ChainState run_density(const DeviceSpec& spec, const NoiseModel& model, const PulseProgram& program,
                       const ChainState& initial, Level level, const std::vector<double>& offsets = {});

std::vector<Time> default_sample_times(const PulseProgram& program);

}  // namespace donorqca

#endif  // DONORQCA_NOISE_ENSEMBLE_HPP
