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

#include "donorqca/pulse_engine.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "donorqca/errors.hpp"
#include "donorqca/kernels.hpp"

namespace donorqca {

using namespace units;

double Envelope::value(Time t, Time duration) const {
  if (t < Time{} || t > duration) return 0.0;
  if (shape == EnvelopeShape::Rectangular) return 1.0;
  const double x = ((t - 0.5 * duration) / sigma(duration)).canonical();
  return std::exp(-0.5 * x * x);
}

Time Envelope::area(Time duration) const {
  if (shape == EnvelopeShape::Rectangular) return duration;
  return sigma(duration) * (std::sqrt(2.0 * std::numbers::pi) * std::erf(truncation / std::numbers::sqrt2));
}

double MicrowaveDrive::rotation_angle(Time duration) const {
  return (rabi * envelope.area(duration) / constants::hbar).canonical();
}

Energy MicrowaveDrive::rabi_for_angle(double theta, Time duration, const Envelope& envelope) {
  return theta * (constants::hbar / envelope.area(duration));
}

void PulseEvent::validate() const {
  if (!(duration > Time{})) throw SpecError("event duration must be positive");
  lasers.validate();
  if (!microwave) return;
  if (microwave->rabi < Energy{}) throw SpecError("microwave Rabi energy must be non-negative");
  if (microwave->envelope.shape == EnvelopeShape::Gaussian && microwave->envelope.truncation < 3.0) {
    throw SpecError("gaussian envelope must extend to at least 3 sigma");
  }
  if (!lasers.circular_on || !lasers.linear_on) {
    throw SpecError("simultaneity violated: a microwave pulse needs both lasers on for the whole event");
  }
}

namespace {

double spin(std::uint64_t index, int k) { return (index >> k & 1) ? 1.0 : -1.0; }

double offset_at(const std::vector<double>& offsets, int k) {
  return offsets.empty() ? 0.0 : offsets[static_cast<size_t>(k)];
}

void check_offsets(const std::vector<double>& offsets, int n) {
  if (!offsets.empty() && offsets.size() != static_cast<size_t>(n)) {
    throw SpecError("one static offset per site is required");
  }
}

}  // namespace

std::vector<double> FrameHamiltonian::diagonal(const std::vector<double>& offsets) const {
  check_offsets(offsets, n_sites);
  const size_t dim = size_t{1} << n_sites;
  std::vector<double> d(dim, 0.0);
  for (size_t i = 0; i < dim; ++i) {
    double e = 0.0;
    for (int k = 0; k < n_sites; ++k) {
      e += (zeeman[k] + 0.5 * offset_at(offsets, k) + bias[k]) * spin(i, k);
    }
    for (int b = 0; b + 1 < n_sites; ++b) e += ising[b] * spin(i, b) * spin(i, b + 1);
    d[i] = e;
  }
  return d;
}

std::vector<double> FrameHamiltonian::zeeman_diagonal() const {
  const size_t dim = size_t{1} << n_sites;
  std::vector<double> d(dim, 0.0);
  for (size_t i = 0; i < dim; ++i) {
    for (int k = 0; k < n_sites; ++k) d[i] += zeeman[k] * spin(i, k);
  }
  return d;
}

std::vector<double> FrameHamiltonian::ising_diagonal() const {
  const size_t dim = size_t{1} << n_sites;
  std::vector<double> d(dim, 0.0);
  for (size_t i = 0; i < dim; ++i) {
    for (int k = 0; k < n_sites; ++k) d[i] += bias[k] * spin(i, k);
    for (int b = 0; b + 1 < n_sites; ++b) d[i] += ising[b] * spin(i, b) * spin(i, b + 1);
  }
  return d;
}

std::vector<double> FrameHamiltonian::bias_diagonal() const {
  const size_t dim = size_t{1} << n_sites;
  std::vector<double> d(dim, 0.0);
  for (size_t i = 0; i < dim; ++i) {
    for (int k = 0; k < n_sites; ++k) d[i] += bias[k] * spin(i, k);
  }
  return d;
}

Complex FrameHamiltonian::drive_coefficient(Time t) const {
  if (!drive) return 0.0;
  return std::polar(0.5 * drive->rabi_at(t, duration).in(ueV), drive->phase);
}

Matrix FrameHamiltonian::matrix(Time t, const std::vector<double>& offsets) const {
  const auto dim = static_cast<Eigen::Index>(size_t{1} << n_sites);
  Matrix h = Matrix::Zero(dim, dim);
  const std::vector<double> d = diagonal(offsets);
  const Complex c = drive_coefficient(t);
  for (Eigen::Index i = 0; i < dim; ++i) {
    h(i, i) = d[static_cast<size_t>(i)];
    for (int k = 0; k < n_sites; ++k) {
      const Eigen::Index bit = Eigen::Index{1} << k;
      if (i & bit) continue;
      h(i, i | bit) = c;
      h(i | bit, i) = std::conj(c);
    }
  }
  return h;
}

Energy FrameHamiltonian::energy_scale(const std::vector<double>& offsets) const {
  check_offsets(offsets, n_sites);
  double scale = 0.0;
  for (int k = 0; k < n_sites; ++k) {
    const double e = std::fabs(2.0 * zeeman[k] + offset_at(offsets, k)) + std::fabs(coupling_left[k]) +
                     std::fabs(coupling_right[k]);
    scale = std::max(scale, e);
  }
  if (drive) scale += drive->rabi.in(ueV);
  return Energy(scale, ueV);
}

FrameHamiltonian build_hamiltonian(const DeviceSpec& spec, const LaserSettings& lasers,
                                   const std::optional<MicrowaveDrive>& microwave, Time duration) {
  const EffectiveCouplings eff = effective_couplings(spec, lasers);
  FrameHamiltonian h;
  h.n_sites = static_cast<int>(spec.pattern.size());
  h.frame_energy = microwave ? microwave->photon_energy : spec.cavity_energy;
  h.drive = microwave;
  h.duration = duration;
  h.bias.assign(static_cast<size_t>(h.n_sites), 0.0);
  for (int k = 0; k < h.n_sites; ++k) {
    h.zeeman.push_back(0.5 * (eff.delta_of(spec.pattern[static_cast<size_t>(k)]) - h.frame_energy).in(ueV));
    h.coupling_left.push_back(eff.left_coupling(k).in(ueV));
    h.coupling_right.push_back(eff.right_coupling(k).in(ueV));
  }
  for (const Bond& b : eff.bonds) h.ising.push_back(0.5 * b.coupling.in(ueV));
  h.bias.front() += 0.5 * eff.left_boundary_coupling.in(ueV) * spin_of_bit(spec.boundary.left_virtual);
  h.bias.back() += 0.5 * eff.right_boundary_coupling.in(ueV) * spin_of_bit(spec.boundary.right_virtual);
  return h;
}

Time default_step(const FrameHamiltonian& h, const std::vector<double>& offsets) {
  Time dt = h.duration / kDefaultStepsPerEvent;
  const Energy scale = h.energy_scale(offsets);
  if (scale > Energy{}) dt = std::min(dt, kMaxStepPhase * (constants::hbar / scale));
  return dt;
}

void check_step(const FrameHamiltonian& h, Time dt, const std::vector<double>& offsets) {
  if (!(dt > Time{})) throw StepSizeError("integration step must be positive");
  if (dt.canonical() > h.duration.canonical() / kMinStepsPerEvent * (1.0 + 1e-12)) {
    throw StepSizeError("step " + std::to_string(dt.in(ns)) + " ns exceeds duration/100 = " +
                        std::to_string(h.duration.in(ns) / kMinStepsPerEvent) + " ns");
  }
  const double phase = (dt * h.energy_scale(offsets) / constants::hbar).canonical();
  if (phase > kMaxStepPhase * (1.0 + 1e-12)) {
    throw StepSizeError("step " + std::to_string(dt.in(ns)) + " ns advances the fastest spin by " +
                        std::to_string(phase) + " rad (limit 0.05)");
  }
}

namespace {

// exp(-i tau [[0, c], [conj(c), 0]]), the drive part of one step on one site.
kernels::Mat2 drive_rotation(Complex c, double tau) {
  const double r = std::abs(c);
  if (r == 0.0) return {Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(1, 0)};
  const double cs = std::cos(r * tau), sn = std::sin(r * tau) / r;
  const Complex mi(0.0, -1.0);
  return {Complex(cs, 0), mi * sn * c, mi * sn * std::conj(c), Complex(cs, 0)};
}

std::vector<Complex> phases_for(const std::vector<double>& energies, double time_over_hbar) {
  std::vector<Complex> out(energies.size());
  for (size_t i = 0; i < energies.size(); ++i) out[i] = std::polar(1.0, -energies[i] * time_over_hbar);
  return out;
}

}  // namespace

void evolve_in_place(ChainState& state, const PulseEvent& event, const DeviceSpec& spec,
                     const EvolveOptions& options) {
  event.validate();
  if (state.pattern() != spec.pattern) throw SpecError("state pattern does not match the device");
  const FrameHamiltonian h = build_hamiltonian(spec, event.lasers, event.microwave, event.duration);
  const std::vector<double> d = h.diagonal(options.offsets);

  std::vector<Time> bounds{Time{}};
  std::vector<Time> cps = options.checkpoints;
  std::sort(cps.begin(), cps.end());
  for (Time t : cps) {
    if (t < Time{} || t > event.duration) throw SpecError("checkpoint outside the event");
    if (t > bounds.back()) bounds.push_back(t);
  }
  if (bounds.back() < event.duration) bounds.push_back(event.duration);
  auto fire = [&](Time t) {
    if (!options.on_checkpoint) return;
    for (Time c : cps) {
      if (c == t) {
        options.on_checkpoint(state, t);
        return;
      }
    }
  };
  fire(Time{});

  if (!event.has_drive()) {
    for (size_t s = 1; s < bounds.size(); ++s) {
      const Time len = bounds[s] - bounds[s - 1];
      state.apply_diagonal(phases_for(d, (len / constants::hbar).canonical()));
      if (options.after_step) options.after_step(state, len);
      fire(bounds[s]);
    }
    return;
  }

  Time dt = options.dt ? *options.dt : default_step(h, options.offsets);
  if (options.dt) check_step(h, dt, options.offsets);
  // Strang splitting of the midpoint step: half the diagonal, the drive on
  // every site (the site terms commute), half the diagonal.
  for (size_t s = 1; s < bounds.size(); ++s) {
    const Time a = bounds[s - 1], b = bounds[s];
    const auto steps = static_cast<long>(std::ceil((b - a).canonical() / dt.canonical() - 1e-9));
    const Time step = (b - a) / static_cast<double>(std::max(1L, steps));
    const double tau = (step / constants::hbar).canonical();
    const std::vector<Complex> half = phases_for(d, 0.5 * tau);
    for (long j = 0; j < std::max(1L, steps); ++j) {
      const Time mid = a + (static_cast<double>(j) + 0.5) * step;
      const kernels::Mat2 r = drive_rotation(h.drive_coefficient(mid), tau);
      state.apply_diagonal(half);
      for (int k = 0; k < h.n_sites; ++k) state.apply_1q(r, k);
      state.apply_diagonal(half);
      if (options.after_step) options.after_step(state, step);
    }
    fire(b);
  }
}

ChainState evolve(ChainState state, const PulseEvent& event, const DeviceSpec& spec, std::optional<Time> dt) {
  EvolveOptions options;
  options.dt = dt;
  evolve_in_place(state, event, spec, options);
  return state;
}

std::vector<Complex> logical_frame_phases(const FrameHamiltonian& h, Time t, bool keep_ising) {
  std::vector<double> e = h.zeeman_diagonal();
  const std::vector<double> extra = keep_ising ? h.bias_diagonal() : h.ising_diagonal();
  for (size_t i = 0; i < e.size(); ++i) e[i] += extra[i];
  return phases_for(e, -(t / constants::hbar).canonical());
}

void to_logical_frame(ChainState& state, const FrameHamiltonian& h, Time t, bool keep_ising) {
  state.apply_diagonal(logical_frame_phases(h, t, keep_ising));
}

void undo_frame_phases(ChainState& state, const FrameHamiltonian& h, Time t) {
  state.apply_diagonal(phases_for(h.zeeman_diagonal(), -(t / constants::hbar).canonical()));
}

ChainState run_event(ChainState state, const PulseEvent& event, const DeviceSpec& spec, std::optional<Time> dt) {
  state = evolve(std::move(state), event, spec, dt);
  const FrameHamiltonian h = build_hamiltonian(spec, event.lasers, event.microwave, event.duration);
  to_logical_frame(state, h, event.duration, event.keep_ising);
  return state;
}

namespace {

Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const ChainState& a, const ChainState& b) {
  if (a.dim() != b.dim()) throw SpecError("fidelity between states of different dimension");
  double f = 0.0;
  if (a.is_pure() && b.is_pure()) {
    f = std::norm(a.amplitudes().dot(b.amplitudes()));
  } else if (a.is_pure() || b.is_pure()) {
    const StateVector& psi = a.is_pure() ? a.amplitudes() : b.amplitudes();
    const DensityMatrix& rho = a.is_pure() ? b.density() : a.density();
    f = psi.dot(rho * psi).real();
  } else {
    const Matrix s = psd_sqrt(a.density());
    const Matrix inner = s * b.density() * s;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
    const double t = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    f = t * t;
  }
  return std::clamp(f, 0.0, 1.0);
}

std::string Transition::str(const Pattern& pattern) const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%c@%d[%d,%d] %.4f ueV", to_char(pattern[static_cast<size_t>(site)]), site, left_bit,
                right_bit, energy.in(ueV));
  return buf;
}

std::vector<Transition> enumerate_transitions(const DeviceSpec& spec, const LaserSettings& lasers) {
  const EffectiveCouplings eff = effective_couplings(spec, lasers);
  const int n = static_cast<int>(spec.pattern.size());
  std::vector<Transition> out;
  for (int k = 0; k < n; ++k) {
    std::vector<int> lefts = k == 0 ? std::vector<int>{spec.boundary.left_virtual} : std::vector<int>{0, 1};
    std::vector<int> rights = k + 1 == n ? std::vector<int>{spec.boundary.right_virtual} : std::vector<int>{0, 1};
    for (int l : lefts) {
      for (int r : rights) {
        out.push_back(Transition{k, l, r,
                                 conditional_transition_energy(eff.delta_of(spec.pattern[static_cast<size_t>(k)]),
                                                               eff.left_coupling(k), spin_of_bit(l),
                                                               eff.right_coupling(k), spin_of_bit(r))});
      }
    }
  }
  return out;
}

std::vector<Transition> selectivity_collisions(const DeviceSpec& spec, const LaserSettings& lasers,
                                               const GateRule& rule, Energy drive_energy, Energy margin) {
  std::vector<Transition> out;
  for (const Transition& t : enumerate_transitions(spec, lasers)) {
    const bool intended = spec.pattern[static_cast<size_t>(t.site)] == rule.target &&
                          condition_matches(rule.left, t.left_bit) && condition_matches(rule.right, t.right_bit);
    if (!intended && abs(t.energy - drive_energy) < margin) out.push_back(t);
  }
  return out;
}

PulseEvent selective_pi_pulse(const DeviceSpec& spec, const GateRule& rule, Time duration) {
  const auto* eq = std::get_if<Equatorial>(&rule.action);
  if (eq == nullptr) throw SpecError("selective pulses realise equatorial rotations; compile z rotations instead");
  spec.validate();
  const EffectiveCouplings eff = effective_couplings(spec, spec.lasers);
  const int n = static_cast<int>(spec.pattern.size());

  // Energy shift J_L s_L + J_R s_R of the intended transition, which must be
  // the same on every site the rule can act on.
  std::optional<double> shift;
  for (int k : spec.pattern.sites_of(rule.target)) {
    if (!condition_mask(spec.pattern, k, rule.left, rule.right, spec.boundary)) continue;
    auto side = [&](Condition c, Energy j, bool is_virtual, int virtual_bit) -> double {
      if (c != Condition::Any) return j.in(ueV) * spin_of_bit(c == Condition::One ? 1 : 0);
      if (is_virtual) return j.in(ueV) * spin_of_bit(virtual_bit);
      if (j.canonical() != 0.0) {
        throw InfeasibleError("rule " + rule.str() + ": an 'any' condition on a coupled neighbour of site " +
                              std::to_string(k) + " needs one pulse per neighbour value");
      }
      return 0.0;
    };
    const double s = side(rule.left, eff.left_coupling(k), k == 0, spec.boundary.left_virtual) +
                     side(rule.right, eff.right_coupling(k), k + 1 == n, spec.boundary.right_virtual);
    if (shift && std::fabs(*shift - s) > 1e-9) {
      throw InfeasibleError("rule " + rule.str() + ": target sites have different neighbour couplings, so no single" +
                            " frequency addresses them all");
    }
    shift = s;
  }
  if (!shift) throw InfeasibleError("rule " + rule.str() + " can act on no site of pattern " + spec.pattern.str());

  const Energy target = spec.cavity_energy - Energy(*shift, ueV);
  Energy rabi_c;
  try {
    rabi_c = solve_rabi_for_resonance(spec.detuning(rule.target), target);
  } catch (const InfeasibleError& e) {
    throw InfeasibleError("rule " + rule.str() + ": " + e.what());
  }
  // Representable in meV so program files round-trip exactly.
  rabi_c = Energy::from_canonical(snap_to_unit(rabi_c.canonical(), 1.0e3));
  PulseEvent event;
  event.duration = duration;
  event.lasers = LaserSettings{rabi_c, spec.lasers.rabi_linear, true, true};
  const Envelope env = Envelope::gaussian();
  event.microwave = MicrowaveDrive{MicrowaveDrive::rabi_for_angle(eq->theta, duration, env), spec.cavity_energy,
                                   eq->phi, env};
  event.intent = rule;

  const Energy margin = excitation_bandwidth(duration);
  const auto collisions = selectivity_collisions(spec, event.lasers, rule, spec.cavity_energy, margin);
  if (!collisions.empty()) {
    std::string msg = "rule " + rule.str() + ": transitions within delta_EX = " + std::to_string(margin.in(ueV)) +
                      " ueV of the drive:";
    for (const Transition& t : collisions) msg += " " + t.str(spec.pattern) + ";";
    throw InfeasibleError(msg);
  }
  return event;
}

}  // namespace donorqca
