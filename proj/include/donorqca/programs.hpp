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


#ifndef DONORQCA_PROGRAMS_HPP
#define DONORQCA_PROGRAMS_HPP

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "donorqca/device_params.hpp"
#include "donorqca/gate_oracle.hpp"
#include "donorqca/pulse_engine.hpp"

namespace donorqca {

// Strictly sequential list of events.
struct PulseProgram {
  std::string name;
  std::vector<std::string> comments;
  std::vector<std::string> source_rules;  // logical rules in GateRule::str() form
  std::vector<PulseEvent> events;
  // Per-site single-spin z angles removed with the frame during keep_ising
  // windows (boundary terms), for bookkeeping.
  std::vector<double> frame_z_phases;

  Time duration() const;
  // Event start times.
  std::vector<Time> start_times() const;
  PulseProgram& append(const PulseProgram& other);

  friend bool operator==(const PulseProgram&, const PulseProgram&) = default;
};

struct ConditionalRotate {
  GateRule rule;
};
// Ising phase exp(-i angle/4 sigma_z sigma_z) on bond (bond, bond + 1).
struct ControlledPhase {
  int bond = 0;
  double angle = 0.0;
};
// Exchange every cell of type `left` with its right neighbour of type
// `right`. C-A swaps also exchange a final C-D pair.
struct Swap {
  CellType left = CellType::A;
  CellType right = CellType::B;
};
struct ShiftTowardD {
  int cycles = 1;
};
// Move the content of cell `cell` onto the final D cell.
struct PrepareReadout {
  int cell = 0;
};
// Rotate cell 0 by R(theta, phi) starting from the pumped state.
struct LoadQubit {
  double theta = 0.0;
  double phi = 0.0;
};

using LogicalOp = std::variant<ConditionalRotate, ControlledPhase, Swap, ShiftTowardD, PrepareReadout, LoadQubit>;

inline constexpr double kControlledPhaseWindowNs = 10.0;

// One selective pulse per realisable (left, right) branch, left bit
// ascending, then right bit. 'Any' is expanded on sides where some target
// cell has a coupled real neighbour. z rotations become two pi pulses per
// branch: Rz(a) = R(pi, a/2 - pi) R(pi, 0).
PulseProgram compile_rule(const GateRule& rule, const DeviceSpec& spec);

// Microwave-free window of fixed length with Omega_C off and Omega_L scaled
// so bond `bond` accumulates the angle. Every other bond accumulates in
// proportion to its coupling; the comments list them. Angles are taken
// modulo 4 pi and 0 gives an empty program.
PulseProgram compile_controlled_phase(int bond, double angle, const DeviceSpec& spec);

// Logical rules of a swap stage; applying them in order with the oracle
// exchanges every (left, right) pair up to a global phase.
std::vector<GateRule> swap_rules(const Pattern& pattern, CellType left, CellType right,
                                 const BoundaryPolicy& boundary);
std::vector<GateRule> swap_rules(const Pattern& pattern, CellType left, CellType right);
PulseProgram compile_swap(CellType left, CellType right, const DeviceSpec& spec);

// Position permutation of one swap stage: perm[k] is where the content of
// cell k goes.
std::vector<int> swap_permutation(const Pattern& pattern, CellType left, CellType right);

// Requires an A-first ABC... pattern ending in CD with at least four cells.
// One cycle is the A-B, B-C and C-A (with C-D) stages; A-cell content moves
// three cells toward D per cycle.
PulseProgram compile_shift_toward_D(const DeviceSpec& spec, int cycles);

// Shortest stage sequence (breadth-first over swap stages) moving cell `cell`
// onto D.
std::vector<Swap> readout_stages(const Pattern& pattern, int cell);
PulseProgram compile_prepare_readout(const DeviceSpec& spec, int cell);

// Flip all C cells, rotate A cells whose left neighbour is 0 (only cell 0
// after the flip), flip the C cells back.
std::vector<GateRule> load_rules(double theta, double phi);
PulseProgram compile_load(const DeviceSpec& spec, double theta, double phi);

PulseProgram compile(const LogicalOp& op, const DeviceSpec& spec);
std::string describe(const LogicalOp& op);

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
  std::vector<std::string> warnings;
  std::string str() const;
};

// Per-event invariants, selectivity of every rule-driven pulse against the
// spec, intended transition on resonance, and the Ising regime warning.
ValidationReport validate_program(const PulseProgram& program, const DeviceSpec& spec);

// Program files: {"name", "comments", "source_rules", "frame_z_phases",
// "events": [...]} or a bare array of events. Each event has duration_ns,
// rabi_C_meV, rabi_L_meV, optional circular_on / linear_on / keep_ising /
// intent, and optional mw {rabi_ueV, freq_ueV, phase_rad, envelope,
// truncation}.
nlohmann::json program_to_json(const PulseProgram& program);
PulseProgram program_from_json(const nlohmann::json& j);
PulseProgram load_program(const std::filesystem::path& path);
void save_program(const PulseProgram& program, const std::filesystem::path& path);

}  // namespace donorqca

#endif  // DONORQCA_PROGRAMS_HPP
