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

#include <cmath>
#include <string>

#include "donorqca/errors.hpp"

namespace donorqca {

ChainState initialize_pumped(const Pattern& pattern) { return new_chain(pattern, std::string(pattern.size(), '0')); }

ChainState initialize_pumped(const Pattern& pattern, double fidelity, Rng& rng) {
  if (fidelity < 0.0 || fidelity > 1.0) throw SpecError("pumping fidelity must lie in [0, 1]");
  std::string bits(pattern.size(), '0');
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (char& b : bits) {
    if (u(rng) >= fidelity) b = '1';
  }
  return new_chain(pattern, bits);
}

namespace {

std::vector<int> target_sites(const Pattern& pattern, CellType target) {
  std::vector<int> sites = pattern.sites_of(target);
  if (sites.empty()) throw SpecError(std::string("pattern ") + pattern.str() + " has no " + to_char(target) + " cell");
  return sites;
}

}  // namespace

FaradaySignal faraday_readout(const EnsembleResult& result, const Pattern& pattern, CellType target, double kappa) {
  if (result.final_site_z.size() != pattern.size()) throw SpecError("ensemble result does not match the pattern");
  const std::vector<int> sites = target_sites(pattern, target);
  FaradaySignal s;
  s.kappa = kappa;
  s.target = target;
  double var = 0.0;
  for (int k : sites) {
    s.angle += result.final_site_z[static_cast<size_t>(k)];
    var += std::pow(result.final_site_z_stderr[static_cast<size_t>(k)], 2);
  }
  const double n = static_cast<double>(sites.size());
  s.angle *= kappa / n;
  // Treats the sites as independent.
  s.stderr_ = std::abs(kappa) * std::sqrt(var) / n;
  return s;
}

FaradaySignal faraday_readout(const ChainState& state, CellType target, double kappa) {
  const std::vector<int> sites = target_sites(state.pattern(), target);
  const std::vector<double> z = state.site_z();
  FaradaySignal s;
  s.kappa = kappa;
  s.target = target;
  for (int k : sites) s.angle += z[static_cast<size_t>(k)];
  s.angle *= kappa / static_cast<double>(sites.size());
  return s;
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

BlochVector bloch_vector(const ChainState& state, int site) {
  const size_t n = state.pattern().size();
  if (site < 0 || static_cast<size_t>(site) >= n) throw SpecError("site out of range");
  return {state.expect(Observable::single('X', site, n)), state.expect(Observable::single('Y', site, n)),
          state.expect(Observable::single('Z', site, n))};
}

std::array<PulseProgram, 3> tomography_programs(const DeviceSpec& spec, const PulseProgram& program) {
  if (!spec.pattern.ends_with_d()) throw SpecError("tomography reads the D cell; pattern " + spec.pattern.str() + " has none");
  std::array<PulseProgram, 3> out{program, program, program};
  const double half_pi = M_PI / 2.0;
  out[1].append(compile_rule(GateRule::rotate(CellType::D, Condition::Any, Condition::Any, half_pi, half_pi), spec));
  out[2].append(compile_rule(GateRule::rotate(CellType::D, Condition::Any, Condition::Any, half_pi, 0.0), spec));
  return out;
}

BlochVector bloch_from_readouts(double z_none, double z_after_y, double z_after_x) {
  return {-z_after_y, z_after_x, z_none};
}

nlohmann::json TomographyResult::to_json() const {
  return {{"bloch", {bloch.x, bloch.y, bloch.z}},
          {"stderr", {stderr_[0], stderr_[1], stderr_[2]}},
          {"n_molecules", n_molecules},
          {"seed", seed},
          {"level", to_string(level)}};
}

TomographyResult tomography_D(const DeviceSpec& spec, const PulseProgram& program, const NoiseModel& noise,
                              std::size_t n_molecules, EnsembleOptions options) {
  const std::array<PulseProgram, 3> programs = tomography_programs(spec, program);
  const int d = static_cast<int>(spec.pattern.size()) - 1;
  const std::vector<Observable> obs{Observable::single('Z', d, spec.pattern.size())};
  std::array<double, 3> z{}, se{};
  for (size_t s = 0; s < 3; ++s) {
    options.trajectory_stream = static_cast<std::uint64_t>(Stream::FirstSetting) + s;
    const EnsembleResult r = run_ensemble(spec, noise, programs[s], n_molecules, obs, {programs[s].duration()}, options);
    z[s] = r.mean[0][0];
    se[s] = r.stderr_[0][0];
  }
  TomographyResult out;
  out.bloch = bloch_from_readouts(z[0], z[1], z[2]);
  out.stderr_ = {se[1], se[2], se[0]};
  out.n_molecules = n_molecules;
  out.seed = noise.seed;
  out.level = options.level;
  return out;
}

BlochVector predicted_tomography_D(const DeviceSpec& spec, const PulseProgram& program, const NoiseModel& noise,
                                   Level level, const ChainState& initial) {
  const std::array<PulseProgram, 3> programs = tomography_programs(spec, program);
  const int d = static_cast<int>(spec.pattern.size()) - 1;
  std::array<double, 3> z{};
  for (size_t s = 0; s < 3; ++s) {
    z[s] = run_density(spec, noise, programs[s], initial, level).site_z()[static_cast<size_t>(d)];
  }
  return bloch_from_readouts(z[0], z[1], z[2]);
}

}  // namespace donorqca
