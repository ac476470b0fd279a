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


#ifndef DONORQCA_DEMOS_HPP
#define DONORQCA_DEMOS_HPP

#include <string>
#include <vector>

#include "donorqca/programs.hpp"

namespace donorqca {

// pi/2 about -y on every `target` cell (pumped spin -> +x), then `steps`
// laser-on waits of `wait` each. Sampling at event ends gives the decay.
PulseProgram ramsey_program(const DeviceSpec& spec, CellType target, Time wait, int steps);

// pi/2 about -y, wait tau, pi about x, wait tau.
PulseProgram hahn_echo_program(const DeviceSpec& spec, CellType target, Time tau);

// One automaton step: every A cell flips iff its left neighbour is 0 and its
// right neighbour is 1.
PulseProgram ca_step_program(const DeviceSpec& spec);

// Load R(theta, phi) on cell 0 and move it onto D.
PulseProgram shift_and_read_program(const DeviceSpec& spec, double theta, double phi);

// The four canned programs of the demo command, named ramsey, hahn_echo,
// ca_step and shift_and_read.
std::vector<PulseProgram> demo_programs(const DeviceSpec& spec);
const std::vector<std::string>& demo_program_names();
// Throws SpecError for an unknown name.
PulseProgram demo_program(const DeviceSpec& spec, const std::string& name);

}  // namespace donorqca

#endif  // DONORQCA_DEMOS_HPP
