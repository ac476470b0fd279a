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


#include "donorqca/programs.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <numbers>
#include <set>

#include "donorqca/device_io.hpp"
#include "donorqca/errors.hpp"

namespace donorqca {

using namespace units;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMeV = 1.0e3;  // canonical ueV per meV

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

Time PulseProgram::duration() const {
  Time t;
  for (const PulseEvent& e : events) t = t + e.duration;
  return t;
}

std::vector<Time> PulseProgram::start_times() const {
  std::vector<Time> out;
  Time t;
  for (const PulseEvent& e : events) {
    out.push_back(t);
    t = t + e.duration;
  }
  return out;
}

PulseProgram& PulseProgram::append(const PulseProgram& other) {
  comments.insert(comments.end(), other.comments.begin(), other.comments.end());
  source_rules.insert(source_rules.end(), other.source_rules.begin(), other.source_rules.end());
  events.insert(events.end(), other.events.begin(), other.events.end());
  if (frame_z_phases.size() < other.frame_z_phases.size()) frame_z_phases.resize(other.frame_z_phases.size(), 0.0);
  for (size_t k = 0; k < other.frame_z_phases.size(); ++k) frame_z_phases[k] += other.frame_z_phases[k];
  return *this;
}

// --- rules ---------------------------------------------------------------------

PulseProgram compile_rule(const GateRule& rule, const DeviceSpec& spec) {
  spec.validate();
  PulseProgram program;
  program.name = rule.str();
  program.source_rules.push_back(rule.str());
  const std::vector<int> targets = spec.pattern.sites_of(rule.target);
  if (targets.empty()) {
    program.comments.push_back(std::string("no ") + to_char(rule.target) + " cell: rule is the identity");
    return program;
  }
  const int n = static_cast<int>(spec.pattern.size());
  const EffectiveCouplings eff = effective_couplings(spec, spec.lasers);
  auto expand = [&](Condition c, bool left) -> std::vector<Condition> {
    if (c != Condition::Any) return {c};
    for (int k : targets) {
      const bool real = left ? k > 0 : k + 1 < n;
      const Energy j = left ? eff.left_coupling(k) : eff.right_coupling(k);
      if (real && j.canonical() != 0.0) return {Condition::Zero, Condition::One};
    }
    return {Condition::Any};
  };
  for (Condition l : expand(rule.left, true)) {
    for (Condition r : expand(rule.right, false)) {
      bool realisable = false;
      for (int k : targets) realisable = realisable || condition_mask(spec.pattern, k, l, r, spec.boundary);
      if (!realisable) continue;
      std::vector<GateRule> pulses;
      if (const auto* z = std::get_if<ZRotation>(&rule.action)) {
        pulses.push_back(GateRule::rotate(rule.target, l, r, kPi, 0.0));
        pulses.push_back(GateRule::rotate(rule.target, l, r, kPi, z->alpha / 2.0 - kPi));
      } else {
        const auto& eq = std::get<Equatorial>(rule.action);
        pulses.push_back(GateRule::rotate(rule.target, l, r, eq.theta, eq.phi));
      }
      for (const GateRule& p : pulses) {
        try {
          program.events.push_back(selective_pi_pulse(spec, p));
        } catch (const InfeasibleError& e) {
          throw InfeasibleError("compiling " + rule.str() + ": " + e.what());
        }
      }
    }
  }
  return program;
}

PulseProgram compile_controlled_phase(int bond, double angle, const DeviceSpec& spec) {
  spec.validate();
  const int n = static_cast<int>(spec.pattern.size());
  if (bond < 0 || bond + 1 >= n) throw SpecError("bond " + std::to_string(bond) + " outside the chain");
  PulseProgram program;
  char name[96];
  std::snprintf(name, sizeof name, "controlled phase %.17g on bond %d", angle, bond);
  program.name = name;
  double a = std::fmod(angle, 4.0 * kPi);
  if (a < 0.0) a += 4.0 * kPi;
  if (a == 0.0) return program;

  const EffectiveCouplings eff = effective_couplings(spec, spec.lasers);
  const Energy j = eff.bond(bond);
  if (!(j > Energy{})) {
    throw SpecError("bond " + std::to_string(bond) + " has zero coupling at the device operating point");
  }
  const Time window(kControlledPhaseWindowNs, ns);
  const Energy target = (a / 2.0) * (constants::hbar / window);
  const Energy rabi_l = Energy::from_canonical(
      snap_to_unit((spec.lasers.rabi_linear * std::sqrt((target / j).canonical())).canonical(), kMeV));

  PulseEvent e;
  e.duration = window;
  e.lasers = LaserSettings{Energy{}, rabi_l, false, true};
  e.keep_ising = true;
  e.intent = IsingPhase{bond, a};
  program.events.push_back(e);

  const FrameHamiltonian h = build_hamiltonian(spec, e.lasers, std::nullopt, window);
  for (int k = 0; k < n; ++k) {
    program.frame_z_phases.push_back(2.0 * h.bias[static_cast<size_t>(k)] * (window / constants::hbar).canonical());
  }
  const EffectiveCouplings scaled = effective_couplings(spec, e.lasers);
  for (int b = 0; b + 1 < n; ++b) {
    if (b == bond) continue;
    const double other = (2.0 * scaled.bond(b) * window / constants::hbar).canonical();
    program.comments.push_back("bond " + std::to_string(b) + " (" + to_char(spec.pattern[static_cast<size_t>(b)]) +
                               to_char(spec.pattern[static_cast<size_t>(b + 1)]) + ") accumulates " +
                               fmt_double(other) + " rad");
  }
  return program;
}

// --- swaps and shifts --------------------------------------------------------------

namespace {

// Right-hand types of a swap stage, after checking its preconditions.
std::vector<CellType> stage_partners(const Pattern& pattern, CellType left, CellType right,
                                     const BoundaryPolicy& boundary) {
  const int n = static_cast<int>(pattern.size());
  const std::string stage = std::string("swap stage ") + to_char(left) + to_char(right);
  const std::vector<int> xs = pattern.sites_of(left);
  if (xs.empty()) throw SpecError(stage + ": pattern " + pattern.str() + " has no " + to_char(left) + " cell");
  std::set<CellType> partners{right};
  for (int x : xs) {
    if (x + 1 >= n) throw SpecError(stage + ": cell " + std::to_string(x) + " has no right neighbour");
    const CellType t = pattern[static_cast<size_t>(x + 1)];
    if (t != right && t != CellType::D) {
      throw SpecError(stage + ": cell " + std::to_string(x) + " is followed by " + to_char(t));
    }
    partners.insert(t);
  }
  for (CellType t : partners) {
    for (int y : pattern.sites_of(t)) {
      if (y == 0 ? boundary.left_virtual == 0 : pattern[static_cast<size_t>(y - 1)] == left) continue;
      throw SpecError(stage + ": cell " + std::to_string(y) + " of type " + to_char(t) + " is not preceded by " +
                      to_char(left));
    }
  }
  return {partners.begin(), partners.end()};
}

}  // namespace

std::vector<GateRule> swap_rules(const Pattern& pattern, CellType left, CellType right,
                                 const BoundaryPolicy& boundary) {
  const std::vector<CellType> ys = stage_partners(pattern, left, right, boundary);
  const Condition any = Condition::Any, one = Condition::One, zero = Condition::Zero;
  std::vector<GateRule> rules;
  for (CellType y : ys) rules.push_back(GateRule::rotate(y, one, any, kPi, 0.0));
  rules.push_back(GateRule::rotate(left, any, one, kPi, 0.0));
  for (CellType y : ys) rules.push_back(GateRule::rotate(y, one, any, kPi, 0.0));
  // Phase bookkeeping: the three conditional flips above equal SWAP times a
  // diagonal that these z rotations undo.
  for (CellType y : ys) rules.push_back(GateRule::z(y, one, any, kPi));
  rules.push_back(GateRule::z(left, any, one, 1.5 * kPi));
  rules.push_back(GateRule::z(left, any, zero, -0.5 * kPi));
  return rules;
}

std::vector<GateRule> swap_rules(const Pattern& pattern, CellType left, CellType right) {
  return swap_rules(pattern, left, right, BoundaryPolicy{});
}

std::vector<int> swap_permutation(const Pattern& pattern, CellType left, CellType right) {
  stage_partners(pattern, left, right, BoundaryPolicy{});
  std::vector<int> perm(pattern.size());
  for (size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<int>(k);
  for (int x : pattern.sites_of(left)) std::swap(perm[static_cast<size_t>(x)], perm[static_cast<size_t>(x + 1)]);
  return perm;
}

PulseProgram compile_swap(CellType left, CellType right, const DeviceSpec& spec) {
  PulseProgram program;
  program.name = std::string("swap ") + to_char(left) + to_char(right);
  for (const GateRule& r : swap_rules(spec.pattern, left, right, spec.boundary)) program.append(compile_rule(r, spec));
  return program;
}

namespace {

void check_shift_pattern(const Pattern& p) {
  const size_t n = p.size();
  const std::string why = "shift toward D needs an ABC...CD pattern of at least four cells, got " + p.str();
  if (n < 4 || !p.ends_with_d() || p[n - 2] != CellType::C) throw SpecError(why);
  for (size_t k = 0; k + 1 < n; ++k) {
    if (p[k] != kAllCellTypes[k % 3]) throw SpecError(why);
  }
}

const Swap kStages[] = {{CellType::A, CellType::B}, {CellType::B, CellType::C}, {CellType::C, CellType::A}};

}  // namespace

PulseProgram compile_shift_toward_D(const DeviceSpec& spec, int cycles) {
  check_shift_pattern(spec.pattern);
  if (cycles < 1) throw SpecError("shift needs at least one cycle");
  PulseProgram cycle;
  for (const Swap& s : kStages) cycle.append(compile_swap(s.left, s.right, spec));
  PulseProgram program;
  for (int c = 0; c < cycles; ++c) program.append(cycle);
  program.name = "shift toward D, " + std::to_string(cycles) + " cycle" + (cycles == 1 ? "" : "s");
  return program;
}

std::vector<Swap> readout_stages(const Pattern& pattern, int cell) {
  if (!pattern.ends_with_d()) throw SpecError("readout needs a pattern ending in D");
  const int n = static_cast<int>(pattern.size());
  if (cell < 0 || cell >= n) throw SpecError("cell " + std::to_string(cell) + " outside the chain");
  std::vector<std::pair<Swap, std::vector<int>>> stages;
  for (const Swap& s : kStages) {
    try {
      stages.emplace_back(s, swap_permutation(pattern, s.left, s.right));
    } catch (const SpecError&) {
    }
  }
  std::vector<int> from(static_cast<size_t>(n), -1), via(static_cast<size_t>(n), -1);
  std::deque<int> queue{cell};
  from[static_cast<size_t>(cell)] = cell;
  while (!queue.empty()) {
    const int pos = queue.front();
    queue.pop_front();
    if (pos == n - 1) break;
    for (size_t s = 0; s < stages.size(); ++s) {
      const int next = stages[s].second[static_cast<size_t>(pos)];
      if (from[static_cast<size_t>(next)] != -1) continue;
      from[static_cast<size_t>(next)] = pos;
      via[static_cast<size_t>(next)] = static_cast<int>(s);
      queue.push_back(next);
    }
  }
  if (from[static_cast<size_t>(n - 1)] == -1) {
    throw InfeasibleError("no swap sequence moves cell " + std::to_string(cell) + " onto D in " + pattern.str());
  }
  std::vector<Swap> out;
  for (int pos = n - 1; pos != cell; pos = from[static_cast<size_t>(pos)]) {
    out.push_back(stages[static_cast<size_t>(via[static_cast<size_t>(pos)])].first);
  }
  return {out.rbegin(), out.rend()};
}

PulseProgram compile_prepare_readout(const DeviceSpec& spec, int cell) {
  PulseProgram program;
  for (const Swap& s : readout_stages(spec.pattern, cell)) program.append(compile_swap(s.left, s.right, spec));
  program.name = "prepare readout of cell " + std::to_string(cell);
  return program;
}

std::vector<GateRule> load_rules(double theta, double phi) {
  return {GateRule::rotate(CellType::C, Condition::Any, Condition::Any, kPi, 0.0),
          GateRule::rotate(CellType::A, Condition::Zero, Condition::Any, theta, phi),
          GateRule::rotate(CellType::C, Condition::Any, Condition::Any, kPi, 0.0)};
}

PulseProgram compile_load(const DeviceSpec& spec, double theta, double phi) {
  const Pattern& p = spec.pattern;
  if (p[0] != CellType::A) throw SpecError("loading writes cell 0, which must be an A cell");
  for (int a : p.sites_of(CellType::A)) {
    if (a > 0 && p[static_cast<size_t>(a - 1)] != CellType::C) {
      throw SpecError("loading needs every other A cell to follow a C cell");
    }
  }
  if (spec.boundary.left_virtual != 0) throw SpecError("loading needs the left virtual neighbour at 0");
  PulseProgram program;
  for (const GateRule& r : load_rules(theta, phi)) program.append(compile_rule(r, spec));
  program.name = "load R(" + fmt_double(theta) + ", " + fmt_double(phi) + ") onto cell 0";
  return program;
}

std::string describe(const LogicalOp& op) {
  struct V {
    std::string operator()(const ConditionalRotate& o) const { return "rotate " + o.rule.str(); }
    std::string operator()(const ControlledPhase& o) const {
      return "controlled phase " + fmt_double(o.angle) + " on bond " + std::to_string(o.bond);
    }
    std::string operator()(const Swap& o) const { return std::string("swap ") + to_char(o.left) + to_char(o.right); }
    std::string operator()(const ShiftTowardD& o) const { return "shift " + std::to_string(o.cycles); }
    std::string operator()(const PrepareReadout& o) const { return "prepare readout " + std::to_string(o.cell); }
    std::string operator()(const LoadQubit& o) const {
      return "load " + fmt_double(o.theta) + " " + fmt_double(o.phi);
    }
  };
  return std::visit(V{}, op);
}

PulseProgram compile(const LogicalOp& op, const DeviceSpec& spec) {
  struct V {
    const DeviceSpec& spec;
    PulseProgram operator()(const ConditionalRotate& o) const { return compile_rule(o.rule, spec); }
    PulseProgram operator()(const ControlledPhase& o) const {
      return compile_controlled_phase(o.bond, o.angle, spec);
    }
    PulseProgram operator()(const Swap& o) const { return compile_swap(o.left, o.right, spec); }
    PulseProgram operator()(const ShiftTowardD& o) const { return compile_shift_toward_D(spec, o.cycles); }
    PulseProgram operator()(const PrepareReadout& o) const { return compile_prepare_readout(spec, o.cell); }
    PulseProgram operator()(const LoadQubit& o) const { return compile_load(spec, o.theta, o.phi); }
  };
  return std::visit(V{spec}, op);
}

// --- validation --------------------------------------------------------------------

std::string ValidationReport::str() const {
  std::string out = ok ? "program valid" : "program invalid";
  for (const auto& v : violations) out += "\n  violation: " + v;
  for (const auto& w : warnings) out += "\n  warning: " + w;
  return out;
}

ValidationReport validate_program(const PulseProgram& program, const DeviceSpec& spec) {
  ValidationReport report;
  spec.validate();
  std::set<std::string> regime_warned;
  for (size_t i = 0; i < program.events.size(); ++i) {
    const PulseEvent& e = program.events[i];
    const std::string tag = "event " + std::to_string(i);
    try {
      e.validate();
    } catch (const SpecError& err) {
      report.violations.push_back(tag + ": " + err.what());
      continue;
    }
    if (e.lasers.linear_on) {
      const EffectiveCouplings eff = effective_couplings(spec, e.lasers);
      for (const Bond& b : eff.bonds) {
        const CellType l = spec.pattern[static_cast<size_t>(b.left)], r = spec.pattern[static_cast<size_t>(b.right)];
        const double gap = abs(eff.delta_of(l) - eff.delta_of(r)).in(ueV);
        const double j = abs(b.coupling).in(ueV);
        const std::string key = std::string(1, to_char(l)) + to_char(r);
        if (j > 0.0 && gap <= kIsingRegimeFactor * j && regime_warned.insert(key).second) {
          report.warnings.push_back(tag + ": " + key + " splitting gap " + fmt_double(gap) + " ueV is not above " +
                                    fmt_double(kIsingRegimeFactor) + " J = " +
                                    fmt_double(kIsingRegimeFactor * j) + " ueV (flip-flop terms neglected)");
        }
      }
    }
    if (!e.has_drive()) continue;
    const auto* rule = std::get_if<GateRule>(&e.intent);
    if (rule == nullptr) {
      report.warnings.push_back(tag + ": microwave event without a rule; selectivity not checked");
      continue;
    }
    const Energy margin = excitation_bandwidth(e.duration);
    const Energy drive = e.microwave->photon_energy;
    const auto collisions = selectivity_collisions(spec, e.lasers, *rule, drive, margin);
    if (!collisions.empty()) {
      std::string msg = tag + " (" + rule->str() + "): transition collision within " + fmt_double(margin.in(ueV)) +
                        " ueV of the drive:";
      for (const Transition& t : collisions) msg += " " + t.str(spec.pattern) + ";";
      report.violations.push_back(msg);
    }
    bool intended = false;
    for (const Transition& t : enumerate_transitions(spec, e.lasers)) {
      if (spec.pattern[static_cast<size_t>(t.site)] != rule->target || !condition_matches(rule->left, t.left_bit) ||
          !condition_matches(rule->right, t.right_bit)) {
        continue;
      }
      intended = true;
      if (abs(t.energy - drive) > 0.1 * margin) {
        report.violations.push_back(tag + " (" + rule->str() + "): intended transition " + t.str(spec.pattern) +
                                    " is off resonance with the drive at " + fmt_double(drive.in(ueV)) + " ueV");
      }
    }
    if (!intended) report.violations.push_back(tag + " (" + rule->str() + "): no cell realises the rule");
  }
  report.ok = report.violations.empty();
  return report;
}

// --- files -------------------------------------------------------------------------------

namespace {

void put_mev(json& j, const char* stem, Energy e) {
  if (auto v = exact_in_unit(e.canonical(), kMeV)) {
    j[std::string(stem) + "_meV"] = *v;
  } else {
    j[std::string(stem) + "_ueV"] = e.canonical();
  }
}

Energy get_mev(const json& j, const char* stem, size_t index) {
  const std::string mev = std::string(stem) + "_meV", uev = std::string(stem) + "_ueV";
  const bool has_mev = j.contains(mev), has_uev = j.contains(uev);
  if (has_mev == has_uev) {
    throw ParseError("event " + std::to_string(index) + ": give exactly one of " + mev + " and " + uev);
  }
  return has_mev ? Energy::from_canonical(j.at(mev).get<double>() * kMeV)
                 : Energy::from_canonical(j.at(uev).get<double>());
}

json event_to_json(const PulseEvent& e) {
  json j;
  j["duration_ns"] = e.duration.in(ns);
  put_mev(j, "rabi_C", e.lasers.rabi_circular);
  put_mev(j, "rabi_L", e.lasers.rabi_linear);
  j["circular_on"] = e.lasers.circular_on;
  j["linear_on"] = e.lasers.linear_on;
  if (e.keep_ising) j["keep_ising"] = true;
  if (const auto* r = std::get_if<GateRule>(&e.intent)) j["intent"] = r->str();
  if (const auto* p = std::get_if<IsingPhase>(&e.intent)) j["intent"] = {{"ising_bond", p->bond}, {"angle", p->angle}};
  if (e.microwave) {
    const MicrowaveDrive& m = *e.microwave;
    json mw = {{"rabi_ueV", m.rabi.in(ueV)},
               {"freq_ueV", m.photon_energy.in(ueV)},
               {"phase_rad", m.phase},
               {"envelope", m.envelope.shape == EnvelopeShape::Gaussian ? "gaussian" : "rectangular"}};
    if (m.envelope.shape == EnvelopeShape::Gaussian) mw["truncation"] = m.envelope.truncation;
    j["mw"] = mw;
  }
  return j;
}

const std::set<std::string> kEventKeys{"duration_ns", "rabi_C_meV", "rabi_C_ueV", "rabi_L_meV", "rabi_L_ueV",
                                       "circular_on", "linear_on",  "keep_ising", "intent",     "mw"};

PulseEvent event_from_json(const json& j, size_t index) {
  const std::string tag = "event " + std::to_string(index);
  if (!j.is_object()) throw ParseError(tag + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!kEventKeys.count(key)) throw ParseError(tag + ": unknown key '" + key + "'");
  }
  if (!j.contains("duration_ns")) throw ParseError(tag + ": duration_ns is required");
  PulseEvent e;
  e.duration = Time(j.at("duration_ns").get<double>(), ns);
  e.lasers.rabi_circular = get_mev(j, "rabi_C", index);
  e.lasers.rabi_linear = get_mev(j, "rabi_L", index);
  e.lasers.circular_on = j.value("circular_on", true);
  e.lasers.linear_on = j.value("linear_on", true);
  e.keep_ising = j.value("keep_ising", false);
  if (j.contains("intent")) {
    const json& in = j.at("intent");
    if (in.is_string()) {
      e.intent = parse_rule(in.get<std::string>());
    } else if (in.is_object() && in.contains("ising_bond") && in.contains("angle")) {
      e.intent = IsingPhase{in.at("ising_bond").get<int>(), in.at("angle").get<double>()};
    } else {
      throw ParseError(tag + ": intent must be a rule string or {ising_bond, angle}");
    }
  }
  if (j.contains("mw")) {
    const json& m = j.at("mw");
    for (const auto& [key, value] : m.items()) {
      if (key != "rabi_ueV" && key != "freq_ueV" && key != "phase_rad" && key != "envelope" && key != "truncation") {
        throw ParseError(tag + ".mw: unknown key '" + key + "'");
      }
    }
    MicrowaveDrive d;
    d.rabi = Energy::from_canonical(m.at("rabi_ueV").get<double>());
    d.photon_energy = Energy::from_canonical(m.at("freq_ueV").get<double>());
    d.phase = m.value("phase_rad", 0.0);
    const std::string env = m.value("envelope", "rectangular");
    if (env == "gaussian") {
      d.envelope = Envelope::gaussian(m.value("truncation", 3.0));
    } else if (env == "rectangular") {
      d.envelope = Envelope::rectangular();
    } else {
      throw ParseError(tag + ".mw.envelope must be 'gaussian' or 'rectangular'");
    }
    e.microwave = d;
  }
  return e;
}

}  // namespace

json program_to_json(const PulseProgram& program) {
  json j;
  j["name"] = program.name;
  j["comments"] = program.comments;
  j["source_rules"] = program.source_rules;
  j["frame_z_phases"] = program.frame_z_phases;
  j["events"] = json::array();
  for (const PulseEvent& e : program.events) j["events"].push_back(event_to_json(e));
  return j;
}

PulseProgram program_from_json(const json& j) {
  PulseProgram program;
  const json* events = &j;
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (key != "name" && key != "comments" && key != "source_rules" && key != "frame_z_phases" &&
          key != "events") {
        throw ParseError("program: unknown key '" + key + "'");
      }
    }
    program.name = j.value("name", "");
    program.comments = j.value("comments", std::vector<std::string>{});
    program.source_rules = j.value("source_rules", std::vector<std::string>{});
    program.frame_z_phases = j.value("frame_z_phases", std::vector<double>{});
    if (!j.contains("events")) throw ParseError("program: events are required");
    events = &j.at("events");
  }
  if (!events->is_array()) throw ParseError("program events must be an array");
  try {
    for (size_t i = 0; i < events->size(); ++i) program.events.push_back(event_from_json(events->at(i), i));
  } catch (const json::exception& e) {
    throw ParseError(std::string("program: ") + e.what());
  }
  return program;
}

PulseProgram load_program(const std::filesystem::path& path) {
  try {
    return program_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_program(const PulseProgram& program, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw SpecError("cannot write " + path.string());
  out << program_to_json(program).dump(2) << "\n";
}

}  // namespace donorqca
