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


#include "donorqca/demos.hpp"

#include <numbers>

#include "donorqca/errors.hpp"

namespace donorqca {

using namespace units;

namespace {

constexpr double kPi = std::numbers::pi;

PulseEvent wait_event(const DeviceSpec& spec, Time duration) {
  PulseEvent e;
  e.duration = duration;
  e.lasers = spec.lasers;
  return e;
}

PulseProgram rotate_all(const DeviceSpec& spec, CellType target, double theta, double phi) {
  return compile_rule(GateRule::rotate(target, Condition::Any, Condition::Any, theta, phi), spec);
}

}  // namespace

PulseProgram ramsey_program(const DeviceSpec& spec, CellType target, Time wait, int steps) {
  if (steps < 1 || !(wait > Time{})) throw SpecError("ramsey needs a positive wait and at least one step");
  PulseProgram p = rotate_all(spec, target, kPi / 2, -kPi / 2);
  p.name = "ramsey";
  p.comments.push_back(std::string("pi/2 on ") + to_char(target) + " cells, then " + std::to_string(steps) +
                       " waits of " + format_quantity(wait.canonical(), "ns", "ns"));
  for (int i = 0; i < steps; ++i) p.events.push_back(wait_event(spec, wait));
  return p;
}

PulseProgram hahn_echo_program(const DeviceSpec& spec, CellType target, Time tau) {
  if (!(tau > Time{})) throw SpecError("echo delay must be positive");
  PulseProgram p = rotate_all(spec, target, kPi / 2, -kPi / 2);
  p.name = "hahn_echo";
  p.comments.push_back(std::string("echo on ") + to_char(target) + " cells, tau " +
                       format_quantity(tau.canonical(), "ns", "ns"));
  p.events.push_back(wait_event(spec, tau));
  p.append(rotate_all(spec, target, kPi, 0.0));
  p.events.push_back(wait_event(spec, tau));
  return p;
}

PulseProgram ca_step_program(const DeviceSpec& spec) {
  PulseProgram p = compile_rule(GateRule::rotate(CellType::A, Condition::Zero, Condition::One, kPi), spec);
  p.name = "ca_step";
  return p;
}

PulseProgram shift_and_read_program(const DeviceSpec& spec, double theta, double phi) {
  PulseProgram p = compile_load(spec, theta, phi);
  p.append(compile_prepare_readout(spec, 0));
  p.name = "shift_and_read";
  return p;
}

const std::vector<std::string>& demo_program_names() {
  static const std::vector<std::string> names{"ramsey", "hahn_echo", "ca_step", "shift_and_read"};
  return names;
}

PulseProgram demo_program(const DeviceSpec& spec, const std::string& name) {
  if (name == "ramsey") return ramsey_program(spec, CellType::A, Time(10.0, us), 10);
  if (name == "hahn_echo") return hahn_echo_program(spec, CellType::A, Time(50.0, us));
  if (name == "ca_step") return ca_step_program(spec);
  if (name == "shift_and_read") return shift_and_read_program(spec, 1.2, 2.2);
  throw SpecError("unknown demo program '" + name + "'");
}

std::vector<PulseProgram> demo_programs(const DeviceSpec& spec) {
  std::vector<PulseProgram> out;
  for (const std::string& name : demo_program_names()) out.push_back(demo_program(spec, name));
  return out;
}

}  // namespace donorqca
