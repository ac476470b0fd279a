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


// Acceptance run: one PASS/FAIL line per criterion, each with its own
// tolerance and wall-clock limit. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "donorqca/device_io.hpp"
#include "donorqca/errors.hpp"
#include "donorqca/noise_ensemble.hpp"
#include "donorqca/programs.hpp"
#include "donorqca/readout.hpp"

using namespace donorqca;
using namespace donorqca::units;

namespace {

constexpr double kPi = std::numbers::pi;
using C = Condition;

struct Outcome {
  bool pass = true;
  std::string detail;
  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string num(double x, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

DeviceSpec file_device() { return load_device(std::string(DONORQCA_SOURCE_DIR) + "/data/devices/zno_device.json"); }

const ParameterRow& row(const std::vector<ParameterRow>& rows, const std::string& key) {
  for (const ParameterRow& r : rows) {
    if (r.key == key) return r;
  }
  throw SpecError("parameter table has no row " + key);
}

// 1. Closed-form parameter table against the published figures.
Outcome parameter_table_values() {
  Outcome o;
  const DeviceSpec spec = file_device();
  const auto rows = parameter_table(spec);
  struct Want {
    const char* key;
    double value;
    double tol;  // relative, or multiplicative factor when > 1
  };
  const std::vector<Want> wants{{"Delta_A", 95, 0.01},       {"Delta_B", 114, 0.01},   {"Delta_C", 143, 0.01},
                               {"Omega_C", 1.07, 0.01},      {"Gamma_D0X", 10, 0.15},  {"Gamma_inh_ESR", 0.08, 0.25},
                               {"delta_EX", 0.06, 0.20},     {"tau_c", 340, 0.03},     {"k_F", 0.359, 0.01},
                               {"T2_metal", 1.0, 1.5},       {"n_c", 7e17, 0.03},      {"T2_exp", 13, 0.15},
                               {"T2_over_Tp", 1e4, 1e-9}};
  int ok = 0;
  for (const Want& w : wants) {
    const double v = row(rows, w.key).value;
    const bool good = w.tol > 1 ? (v <= w.value * w.tol && v >= w.value / w.tol)
                                : std::abs(v - w.value) <= w.tol * std::abs(w.value);
    o.check(good, std::string(w.key) + " = " + num(v) + " vs " + num(w.value));
    ok += good;
  }
  DeviceSpec dilute = spec;
  dilute.donor_density = dilute.donor_density / 10.0;
  const double ratio = row(parameter_table(dilute), "T2_ins").value / row(rows, "T2_ins").value;
  o.check(std::abs(ratio - 10.0) <= 1e-12 * 10.0, "T2_ins scaling " + num(ratio, 15));
  ok += std::abs(ratio - 10.0) <= 1e-12 * 10.0;
  o.note(std::to_string(ok) + "/" + std::to_string(wants.size() + 1) + " values in tolerance, T2_ins(1e16)/T2_ins(1e17) = " +
         num(ratio, 15));
  return o;
}

// 2. The two quoted coherence times that the formulas do not reproduce:
// rows exist, are flagged, and match an SI dimensional-analysis oracle.
Outcome documented_discrepancies() {
  Outcome o;
  const auto rows = parameter_table(file_device());
  const double hbar = 1.054571817e-34, ev = 1.602176634e-19;
  const double n0 = 1e17 * 1e6, a0 = 2.151e-9, r0 = 35e-3 * ev, c0 = 64e-6 * ev * 1e-9, beta = 0.05;
  const double gamma = c0 / (r0 * a0);
  const double t2_ins = beta * hbar / (n0 * a0 * a0 * a0 * r0 * gamma * gamma);
  const double nu = 1.4e6, n_nuc = 50;
  struct Want {
    const char* key;
    double seconds;
  };
  for (const Want& w : std::vector<Want>{{"T2_ins", t2_ins},
                                         {"T2_ins_h", 2 * kPi * t2_ins},
                                         {"T2_limit", n_nuc / (2 * kPi * nu)},
                                         {"T2_limit_literal", n_nuc / nu}}) {
    const ParameterRow& r = row(rows, w.key);
    const double us_value = w.seconds * 1e6;
    o.check(std::abs(r.value - us_value) <= 1e-6 * us_value, std::string(w.key) + " " + num(r.value, 10) + " us vs oracle " + num(us_value, 10));
    o.check(r.status() == "flagged", std::string(w.key) + " not flagged");
    o.note(std::string(w.key) + " " + num(r.value, 4) + " us (quoted " + num(*r.reference) + ")");
  }
  return o;
}

// 3. Quantum rule unitary against the classical automaton on every basis state.
Outcome oracle_soundness() {
  Outcome o;
  const Pattern p = Pattern::parse("ABCABCD");
  int checked = 0, bad = 0;
  for (CellType t : kAllCellTypes) {
    for (C l : {C::Zero, C::One, C::Any}) {
      for (C r : {C::Zero, C::One, C::Any}) {
        const GateRule rule = GateRule::rotate(t, l, r, kPi, 0.3);
        const Matrix u = conditional_unitary(p, rule);
        for (size_t i = 0; i < 128; ++i) {
          const std::string out = classical_automaton_step(basis_bits(i, 7), p, rule);
          const double amp = std::abs(u(static_cast<Eigen::Index>(basis_index(out)), static_cast<Eigen::Index>(i)));
          if (std::abs(amp - 1.0) > 1e-12) ++bad;
          ++checked;
        }
      }
    }
  }
  o.check(bad == 0, std::to_string(bad) + " mismatches");
  // A flips iff its left C is 0 and its right B is 1.
  const GateRule worked = GateRule::rotate(CellType::A, C::Zero, C::One, kPi);
  const Pattern six = Pattern::parse("ABCABC");
  const std::string out = classical_automaton_step("010110", six, worked);
  o.check(out == "110010", "worked example gave " + out);
  const ChainState s = apply_rule(new_chain(six, "010110"), worked);
  o.check(std::abs(std::abs(s.amplitudes()[static_cast<Eigen::Index>(basis_index("110010"))]) - 1.0) < 1e-12,
          "worked example amplitude");
  o.note(std::to_string(checked) + " (rule, state) pairs, worked example 010110 -> " + out);
  return o;
}

DeviceSpec six_cell() {
  DeviceSpec spec = zno_device();
  spec.pattern = Pattern::parse("ABCABC");
  spec.relay_couplings =
      relay_couplings_for(4.0 * ueV, 2.0 * ueV, 6.0 * ueV, spec.lasers.rabi_linear, spec.relay_detuning);
  return spec;
}

// 4. Selective 10 ns gaussian pi pulses against the oracle on all 64 inputs.
Outcome pulse_selectivity() {
  Outcome o;
  const DeviceSpec spec = six_cell();
  const std::vector<GateRule> rules{GateRule::rotate(CellType::A, C::Zero, C::One, kPi),
                                    GateRule::rotate(CellType::B, C::One, C::Zero, kPi),
                                    GateRule::rotate(CellType::C, C::One, C::One, kPi)};
  for (const GateRule& rule : rules) {
    const PulseProgram p = compile_rule(rule, spec);
    o.check(p.events.size() == 1, rule.str() + " compiled to " + std::to_string(p.events.size()) + " events");
    const PulseEvent& e = p.events[0];
    o.check(e.duration == Time(10.0, ns) && e.microwave->envelope.shape == EnvelopeShape::Gaussian,
            rule.str() + " is not a 10 ns gaussian");
    double worst_f = 1.0, worst_leak = 0.0;
    for (size_t i = 0; i < 64; ++i) {
      const std::string bits = basis_bits(i, 6);
      const ChainState in = new_chain(spec.pattern, bits);
      const ChainState pulse = run_program(in, p, spec);
      const ChainState ideal = apply_rule(in, rule, spec.boundary);
      worst_f = std::min(worst_f, fidelity(pulse, ideal));
      const std::string want = classical_automaton_step(bits, spec.pattern, rule);
      const auto& a = pulse.amplitudes();
      for (int k = 0; k < 6; ++k) {
        if (want[static_cast<size_t>(k)] != bits[static_cast<size_t>(k)]) continue;
        double flipped = 0.0;
        for (Eigen::Index j = 0; j < a.size(); ++j) {
          if (((static_cast<size_t>(j) >> k) & 1) != static_cast<size_t>(bits[static_cast<size_t>(k)] - '0')) {
            flipped += std::norm(a[j]);
          }
        }
        worst_leak = std::max(worst_leak, flipped);
      }
    }
    o.check(worst_f >= 0.99, rule.str() + " min fidelity " + num(worst_f));
    o.check(worst_leak <= 0.02, rule.str() + " off-target flip " + num(worst_leak));
    o.note(rule.str() + ": min fidelity " + num(worst_f, 5) + ", max off-target flip " + num(worst_leak, 3));
  }
  return o;
}

// 5. Two-level Rabi physics on a single spin.
Outcome rabi_physics() {
  Outcome o;
  DeviceSpec spec = zno_device();
  spec.pattern = Pattern::parse("A");
  for (CellType t : kAllCellTypes) spec.relay_couplings[t] = Energy{};
  const Energy line = spin_splitting(spec.lasers.rabi_circular, spec.detuning(CellType::A));
  const Time t(10.0, ns);
  PulseEvent e;
  e.duration = t;
  e.lasers = spec.lasers;
  e.microwave = MicrowaveDrive{MicrowaveDrive::rabi_for_angle(kPi, t, Envelope::rectangular()), line, 0.0,
                               Envelope::rectangular()};
  const double p1 = std::norm(evolve(new_chain(spec.pattern, "0"), e, spec).amplitudes()[1]);
  o.check(p1 >= 0.9999, "resonant flip " + num(p1, 8));
  const double w1 = e.microwave->rabi.in(ueV), det = 10 * w1;
  const double omega = std::sqrt(w1 * w1 + det * det);
  const Time period = 2 * kPi * constants::hbar / Energy(omega, ueV);
  e.duration = 2.0 * period;
  e.microwave->photon_energy = line - Energy(det, ueV);
  EvolveOptions opt;
  for (int i = 1; i <= 400; ++i) opt.checkpoints.push_back(e.duration * (i / 400.0));
  double best = 0.0;
  opt.on_checkpoint = [&](const ChainState& s, Time) { best = std::max(best, std::norm(s.amplitudes()[1])); };
  ChainState s = new_chain(spec.pattern, "0");
  evolve_in_place(s, e, spec, opt);
  const double expected = w1 * w1 / (w1 * w1 + det * det);
  o.check(std::abs(best - expected) <= 0.1 * expected, "detuned max flip " + num(best) + " vs " + num(expected));
  o.note("resonant pi flip " + num(p1, 8) + "; 10x detuned max flip " + num(best, 5) + " vs " + num(expected, 5));
  return o;
}

PulseEvent wait(const DeviceSpec& spec, Time d, bool lasers = true) {
  PulseEvent e;
  e.duration = d;
  e.lasers = spec.lasers;
  e.lasers.circular_on = e.lasers.linear_on = lasers;
  return e;
}

ChainState plus_x() {
  StateVector v(2);
  v[0] = v[1] = 1.0 / std::sqrt(2.0);
  return ChainState::pure(Pattern::parse("A"), v);
}

// 6. Ramsey T2 recovery, Hahn echo under static inhomogeneity, trajectories
// against the exact channel.
Outcome noise_checks() {
  Outcome o;
  DeviceSpec spec = zno_device();
  spec.pattern = Pattern::parse("A");
  const Observable x0 = Observable::single('X', 0, 1);
  {
    const Time t2(1.0, us);
    const NoiseModel model = NoiseModel::uniform(t2, Energy{}, kDefaultSeed);
    PulseProgram p;
    p.events.push_back(wait(spec, Time(2.0, us)));
    std::vector<Time> times;
    for (int i = 1; i <= 10; ++i) times.push_back(Time(200.0 * i, ns));
    EnsembleOptions opt;
    opt.initial = plus_x();
    const EnsembleResult r = run_ensemble(spec, model, p, 100000, {x0}, times, opt);
    // Weighted least squares of ln<X> = -t / T2 (through the origin).
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < times.size(); ++i) {
      const double w = std::pow(r.mean[0][i] / r.stderr_[0][i], 2);
      const double x = times[i].in(us), y = std::log(r.mean[0][i]);
      sxx += w * x * x;
      sxy += w * x * y;
    }
    const double fit = -sxx / sxy;
    o.check(std::abs(fit - 1.0) <= 0.05, "Ramsey T2 fit " + num(fit) + " us");
    o.note("Ramsey T2 fit " + num(fit, 5) + " us (configured 1 us, 1e5 trajectories)");
  }
  {
    for (double fwhm : {0.08, 1.0}) {
      const NoiseModel model = NoiseModel::uniform(std::nullopt, Energy(fwhm, ueV), kDefaultSeed);
      const Time tau(100.0, ns);
      PulseProgram echo;
      echo.events.push_back(wait(spec, tau));
      echo.append(compile_rule(GateRule::rotate(CellType::A, C::Any, C::Any, kPi), spec));
      echo.events.push_back(wait(spec, tau));
      EnsembleOptions opt;
      opt.initial = plus_x();
      opt.level = Level::Oracle;
      const EnsembleResult r = run_ensemble(spec, model, echo, 10000, {x0}, {tau, echo.duration()}, opt);
      o.check(r.mean[0][1] >= 0.999, "echo amplitude " + num(r.mean[0][1]) + " at FWHM " + num(fwhm));
      o.note("echo at FWHM " + num(fwhm) + " ueV: FID " + num(r.mean[0][0], 3) + " -> echo " + num(r.mean[0][1], 8));
    }
  }
  {
    DeviceSpec abc = zno_device();
    abc.pattern = Pattern::parse("ABC");
    const NoiseModel model = NoiseModel::uniform(Time(40.0, ns), Energy{}, kDefaultSeed);
    PulseProgram p;
    p.events.push_back(wait(abc, Time(10.0, ns)));
    p.append(compile_rule(GateRule::rotate(CellType::B, C::Any, C::One, kPi / 2, 0.3), abc));
    p.events.push_back(wait(abc, Time(15.0, ns), false));
    p.append(compile_rule(GateRule::rotate(CellType::A, C::Any, C::Any, kPi / 3), abc));
    std::mt19937_64 g(1);
    std::normal_distribution<double> nd;
    StateVector v(8);
    for (auto& a : v) a = Complex(nd(g), nd(g));
    v.normalize();
    const ChainState in = ChainState::pure(abc.pattern, v);
    for (Level level : {Level::Oracle, Level::Pulse}) {
      const auto t0 = std::chrono::steady_clock::now();
      const DensityMatrix exact = run_density(abc, model, p, in, level).density_matrix();
      // Pulse-level trajectories cost about 17 ms each on one core.
      const int n = level == Level::Pulse ? 3000 : 10000;
      Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(8, 8);
      Eigen::MatrixXd qr = Eigen::MatrixXd::Zero(8, 8), qi = qr;
      for (int m = 0; m < n; ++m) {
        Rng rng = molecule_rng(model.seed, static_cast<std::uint64_t>(m), 1);
        RunContext ctx;
        ctx.level = level;
        ctx.noise = &model;
        ctx.rng = &rng;
        ChainState s = in;
        run_program_in_place(s, p, abc, ctx);
        const Eigen::MatrixXcd rho = s.amplitudes() * s.amplitudes().adjoint();
        sum += rho;
        qr += rho.real().cwiseAbs2();
        qi += rho.imag().cwiseAbs2();
      }
      double max_z = 0.0, chi2 = 0.0;
      int dof = 0;
      auto score = [&](double got, double want, double se) {
        const double d = std::abs(got - want);
        if (se > 0) {
          chi2 += (d / se) * (d / se);
          ++dof;
          max_z = std::max(max_z, d / se);
        } else if (d > 1e-12) {
          max_z = INFINITY;
        }
      };
      for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
          const Complex mean = sum(i, j) / double(n);
          score(mean.real(), exact(i, j).real(), std::sqrt(std::max(0.0, qr(i, j) / n - mean.real() * mean.real()) / n));
          score(mean.imag(), exact(i, j).imag(), std::sqrt(std::max(0.0, qi(i, j) / n - mean.imag() * mean.imag()) / n));
        }
      }
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (level == Level::Oracle) {
        o.check(max_z <= 3.0, "trajectory/channel max z " + num(max_z));
      } else {
        // Extra pulse-level run with fewer trajectories: an aggregate
        // chi-square bound, since 3 sigma on each of ~100 entries is not a
        // per-entry guarantee.
        o.check(std::abs(chi2 - dof) <= 5 * std::sqrt(2.0 * dof), "pulse trajectory/channel chi2 " + num(chi2));
      }
      o.note(to_string(level) + "-level ABC, " + std::to_string(n) + " trajectories: largest entry deviation " +
             num(max_z, 3) + " sigma, chi2 " + num(chi2, 4) + " for " + std::to_string(dof) + " entries (" +
             num(secs, 3) + " s)");
    }
  }
  return o;
}

BlochVector rotated_south_pole(double theta, double phi) {
  return {-std::sin(theta) * std::sin(phi), std::sin(theta) * std::cos(phi), -std::cos(theta)};
}

// 7. Pump, load, shift to D, tomography.
Outcome end_to_end_cycle() {
  Outcome o;
  const DeviceSpec spec = file_device();
  const NoiseModel noise = noise_model_from_json(read_json_file(std::string(DONORQCA_SOURCE_DIR) + "/data/devices/zno_device.json").at("noise"));
  const std::vector<std::pair<double, double>> states{{1.2, 2.2}, {kPi / 2, 0.0}, {2.7, -1.0}};
  for (auto [theta, phi] : states) {
    PulseProgram p = compile_load(spec, theta, phi);
    p.append(compile_prepare_readout(spec, 0));
    const BlochVector want = rotated_south_pole(theta, phi);
    EnsembleOptions opt;
    opt.level = Level::Oracle;
    const TomographyResult clean = tomography_D(spec, p, NoiseModel::none(), 1, opt);
    const double f = 0.5 * (1 + clean.bloch.x * want.x + clean.bloch.y * want.y + clean.bloch.z * want.z);
    o.check(f >= 0.999, "noiseless fidelity " + num(f));
    const TomographyResult noisy = tomography_D(spec, p, noise, 10000, opt);
    const BlochVector exact = predicted_tomography_D(spec, p, noise, Level::Oracle, initialize_pumped(spec.pattern));
    const auto g = noisy.bloch.array(), e = exact.array();
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double d = std::abs(g[k] - e[k]);
      if (d > 1e-12) worst = std::max(worst, noisy.stderr_[k] > 0 ? d / noisy.stderr_[k] : INFINITY);
    }
    o.check(worst <= 3.0, "noisy tomography off by " + num(worst) + " SE");
    const double fn = 0.5 * (1 + g[0] * want.x + g[1] * want.y + g[2] * want.z);
    o.note("(" + num(theta, 3) + ", " + num(phi, 3) + "): F " + num(f, 10) + ", noisy F " + num(fn, 5) +
           " within " + num(worst, 3) + " SE of exact channel");
  }
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

// 8. Identical seeds with different worker counts give identical bytes.
Outcome determinism() {
  Outcome o;
  const DeviceSpec spec = file_device();
  NoiseModel model = NoiseModel::uniform(Time(2.0, us), Energy(0.08, ueV), 99);
  const PulseProgram p = compile_shift_toward_D(spec, 1);
  std::vector<Observable> obs{Observable::single('Z', 3, 7), Observable::parse("X0*Z1", 7)};
  std::string first;
  for (int threads : {1, 2, 4}) {
    EnsembleOptions opt;
    opt.level = Level::Oracle;
    opt.threads = threads;
    opt.pumping_fidelity = 0.98;
    const std::string js = run_ensemble(spec, model, p, 5000, obs, {}, opt).to_json().dump();
    if (first.empty()) first = js;
    o.check(js == first, "library JSON differs at " + std::to_string(threads) + " threads");
  }
  // Same through the command line at pulse level.
  const std::string cli = DONORQCA_CLI;
  const std::string dev = std::string(DONORQCA_SOURCE_DIR) + "/data/devices/zno_device.json";
  std::vector<std::string> outputs;
  for (int threads : {1, 3}) {
    const std::string dir = "acceptance_determinism_" + std::to_string(threads);
    const std::string cmd = cli + " run --device " + dev + " --op ca_step --molecules 6 --seed 7 --threads " +
                            std::to_string(threads) + " --out " + dir + " --observable Z0 --observable X3 2>/dev/null >/dev/null";
    o.check(std::system(cmd.c_str()) == 0, "cli run failed");
    outputs.push_back(slurp(dir + "/summary.json"));
  }
  o.check(!outputs[0].empty() && outputs[0] == outputs[1], "CLI summary.json differs between 1 and 3 threads");
  o.note("library JSON identical at 1/2/4 threads (" + std::to_string(first.size()) +
         " bytes); CLI summary.json identical at 1/3 threads");
  return o;
}

}  // namespace

// Optional arguments select criteria by number, e.g. `acceptance 4 6`.
int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "parameter table", 1, parameter_table_values},
      {2, "documented discrepancies", 1, documented_discrepancies},
      {3, "oracle soundness", 5, oracle_soundness},
      {4, "pulse selectivity", 60, pulse_selectivity},
      {5, "Rabi physics", 1, rabi_physics},
      {6, "noise", 120, noise_checks},
      {7, "end-to-end cycle", 300, end_to_end_cycle},
      {8, "determinism", 120, determinism},
  };
  int failures = 0;
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  for (const Criterion& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_s) {
      o.pass = false;
      o.detail += "; runtime over limit";
    }
    failures += !o.pass;
    std::printf("criterion %d %s: %s (%.2f s, limit %.0f s) %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", secs,
                c.limit_s, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
