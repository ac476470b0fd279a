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

#ifndef DONORQCA_PULSE_ENGINE_HPP
#define DONORQCA_PULSE_ENGINE_HPP

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "donorqca/chain_state.hpp"
#include "donorqca/device_params.hpp"
#include "donorqca/gate_oracle.hpp"
#include "donorqca/units.hpp"

namespace donorqca {

enum class EnvelopeShape { Rectangular, Gaussian };

// Gaussian envelopes are centred in the event, truncated at +-truncation
// sigma, so sigma = duration / (2 truncation).
struct Envelope {
  EnvelopeShape shape = EnvelopeShape::Rectangular;
  double truncation = 3.0;

  static Envelope rectangular() { return {}; }
  static Envelope gaussian(double truncation = 3.0) { return {EnvelopeShape::Gaussian, truncation}; }

  // Shape value in [0, 1] at time t of an event of length `duration`.
  double value(Time t, Time duration) const;
  // Integral of value() over the event.
  Time area(Time duration) const;
  Time sigma(Time duration) const { return duration / (2.0 * truncation); }

  friend bool operator==(const Envelope&, const Envelope&) = default;
};

struct MicrowaveDrive {
  Energy rabi;            // peak omega_1
  Energy photon_energy;   // E_MW, nominally the cavity energy
  double phase = 0.0;     // axis cos(phase) x + sin(phase) y
  Envelope envelope;

  Energy rabi_at(Time t, Time duration) const { return envelope.value(t, duration) * rabi; }
  // Rotation angle int omega_1 dt / hbar.
  double rotation_angle(Time duration) const;
  // Peak omega_1 that gives rotation angle `theta` over `duration`.
  static Energy rabi_for_angle(double theta, Time duration, const Envelope& envelope);

  friend bool operator==(const MicrowaveDrive&, const MicrowaveDrive&) = default;
};

// Laser-only window whose Ising evolution is the intended operation.
struct IsingPhase {
  int bond = 0;
  double angle = 0.0;
  friend bool operator==(const IsingPhase&, const IsingPhase&) = default;
};

// What an event is meant to do; used by oracle-level execution and reports.
using EventIntent = std::variant<std::monostate, GateRule, IsingPhase>;

struct PulseEvent {
  Time duration;
  LaserSettings lasers;
  std::optional<MicrowaveDrive> microwave;
  // Leave the Ising phases in place when returning to the logical frame.
  bool keep_ising = false;
  EventIntent intent;

  // Throws SpecError: non-positive duration, microwave without both lasers,
  // negative Rabi energy, truncation below 3 sigma.
  void validate() const;
  bool has_drive() const { return microwave.has_value() && microwave->rabi > Energy{}; }

  friend bool operator==(const PulseEvent&, const PulseEvent&) = default;
};

// Rotating-frame Hamiltonian at the microwave photon energy (the cavity
// energy when no drive is present), in ueV:
//   H = sum_k z_k sigma_z^k + sum_bonds (J/2) sigma_z sigma_z
//       + bias on the end sites + (omega_1(t)/2)(cos phi sigma_x + sin phi sigma_y) on every site
// with z_k = (Delta_t(k) - E_MW)/2. A flip of site k against neighbours
// (s_L, s_R) costs Delta + J_L s_L + J_R s_R - E_MW.
struct FrameHamiltonian {
  int n_sites = 0;
  Energy frame_energy;
  std::vector<double> zeeman;   // z_k
  std::vector<double> ising;    // J/2 for bond (k, k+1)
  std::vector<double> bias;     // J_virtual s_virtual / 2 per site
  std::vector<double> coupling_left;   // J to the left neighbour (real or virtual) per site
  std::vector<double> coupling_right;
  std::optional<MicrowaveDrive> drive;
  Time duration;

  // Diagonal over basis indices; offsets (ueV per site) add to transition
  // energies.
  std::vector<double> diagonal(const std::vector<double>& offsets = {}) const;
  std::vector<double> zeeman_diagonal() const;
  std::vector<double> ising_diagonal() const;  // bonds and boundary bias
  std::vector<double> bias_diagonal() const;   // boundary bias only
  // <0|H|1> drive element (omega_1(t)/2) e^{i phi}.
  Complex drive_coefficient(Time t) const;
  Matrix matrix(Time t, const std::vector<double>& offsets = {}) const;
  // Largest single-spin transition energy in the frame plus the drive peak.
  Energy energy_scale(const std::vector<double>& offsets = {}) const;
};

FrameHamiltonian build_hamiltonian(const DeviceSpec& spec, const LaserSettings& lasers,
                                   const std::optional<MicrowaveDrive>& microwave, Time duration);

inline constexpr double kMaxStepPhase = 0.05;      // rad per step
inline constexpr double kMinStepsPerEvent = 100.0;
inline constexpr double kDefaultStepsPerEvent = 2000.0;

// min(duration / 2000, 0.05 hbar / scale).
Time default_step(const FrameHamiltonian& h, const std::vector<double>& offsets = {});
// Throws StepSizeError when dt > duration / 100 or dt scale / hbar > 0.05.
void check_step(const FrameHamiltonian& h, Time dt, const std::vector<double>& offsets = {});

struct EvolveOptions {
  std::optional<Time> dt;
  std::vector<double> offsets;       // static per-site detuning offsets, ueV
  std::vector<Time> checkpoints;     // times inside the event where on_checkpoint fires
  // Called after every integration step (or diagonal interval) with its length.
  std::function<void(ChainState&, Time)> after_step;
  // Called with the rotating-frame state at each checkpoint.
  std::function<void(const ChainState&, Time)> on_checkpoint;
};

// Rotating-frame evolution over one event: midpoint piecewise-constant
// propagation with exact exponentials. Events without drive are diagonal and
// are propagated exactly in one step per checkpoint interval. Density
// matrices are propagated as U rho U^dag with the same steps.
void evolve_in_place(ChainState& state, const PulseEvent& event, const DeviceSpec& spec,
                     const EvolveOptions& options = {});
ChainState evolve(ChainState state, const PulseEvent& event, const DeviceSpec& spec,
                  std::optional<Time> dt = std::nullopt);

// exp(+i E t / hbar) with E the nominal diagonal removed when moving to the
// logical frame: Zeeman and Ising terms, or Zeeman and boundary bias for
// keep_ising events (only the bond phases stay).
std::vector<Complex> logical_frame_phases(const FrameHamiltonian& h, Time t, bool keep_ising);
void to_logical_frame(ChainState& state, const FrameHamiltonian& h, Time t, bool keep_ising);
// Removes only the single-spin frame precession sum_k z_k sigma_z over t.
void undo_frame_phases(ChainState& state, const FrameHamiltonian& h, Time t);

// evolve followed by to_logical_frame.
ChainState run_event(ChainState state, const PulseEvent& event, const DeviceSpec& spec,
                     std::optional<Time> dt = std::nullopt);

// |<a|b>|^2, <psi|rho|psi>, or the Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const ChainState& a, const ChainState& b);

// --- selectivity -------------------------------------------------------------

// One single-spin flip: site, neighbour bits (virtual neighbours at their
// fixed values) and its energy under some lasers.
struct Transition {
  int site = 0;
  int left_bit = 0;
  int right_bit = 0;
  Energy energy;
  std::string str(const Pattern& pattern) const;  // "A@0[0,1] 93.000 ueV"
};

std::vector<Transition> enumerate_transitions(const DeviceSpec& spec, const LaserSettings& lasers);

// Transitions that the rule does not intend to drive but that lie within
// `margin` of `drive_energy`.
std::vector<Transition> selectivity_collisions(const DeviceSpec& spec, const LaserSettings& lasers,
                                               const GateRule& rule, Energy drive_energy, Energy margin);

inline constexpr double kSelectivePulseNs = 10.0;
inline constexpr double kIsingRegimeFactor = 20.0;

// Gaussian pulse driving the rule's transition at the cavity energy: Omega_C
// is solved so the conditional transition of the target type sits on the
// cavity, pulse area theta hbar, phase phi. 'Any' conditions are only allowed
// on sides with zero coupling or a virtual neighbour. Throws InfeasibleError
// naming collisions.
PulseEvent selective_pi_pulse(const DeviceSpec& spec, const GateRule& rule,
                              Time duration = Time(kSelectivePulseNs, units::ns));

}  // namespace donorqca

#endif  // DONORQCA_PULSE_ENGINE_HPP
