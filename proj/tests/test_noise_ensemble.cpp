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


#include "donorqca/noise_ensemble.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "donorqca/errors.hpp"
#include "donorqca/readout.hpp"

using namespace donorqca;
using namespace donorqca::units;

namespace {

constexpr double kPi = std::numbers::pi;
using C = Condition;

DeviceSpec device(const char* pattern) {
  DeviceSpec spec = zno_device();
  spec.pattern = Pattern::parse(pattern);
  return spec;
}

ChainState plus_x(const Pattern& p) {
  StateVector v = StateVector::Zero(2);
  v[0] = v[1] = 1.0 / std::sqrt(2.0);
  return ChainState::pure(p, v);
}

PulseEvent wait_event(const DeviceSpec& spec, Time duration, bool lasers = true) {
  PulseEvent e;
  e.duration = duration;
  e.lasers = spec.lasers;
  e.lasers.circular_on = e.lasers.linear_on = lasers;
  return e;
}

PulseProgram program_of(std::vector<PulseEvent> events) {
  PulseProgram p;
  p.events = std::move(events);
  return p;
}

const Observable& x0() {
  static const Observable o = Observable::single('X', 0, 1);
  return o;
}

}  // namespace

TEST(noise_ensemble, dephase_defining_examples) {
  const Pattern p = Pattern::parse("A");
  const Time t2(2.0, us);
  const ChainState rho = plus_x(p).to_density();
  EXPECT_NEAR(dephase(rho, 0, Time{}, t2).expect(x0()), 1.0, 1e-12);
  const ChainState once = dephase(rho, 0, t2, t2);
  EXPECT_NEAR(once.expect(x0()), std::exp(-1.0), 1e-9);
  EXPECT_NEAR(once.norm(), 1.0, 1e-9);
  const ChainState twice = dephase(dephase(rho, 0, 0.5 * t2, t2), 0, 0.5 * t2, t2);
  EXPECT_NEAR((twice.density_matrix() - once.density_matrix()).cwiseAbs().maxCoeff(), 0.0, 1e-10);
  EXPECT_NEAR(dephase(rho, 0, t2, std::nullopt).expect(x0()), 1.0, 1e-15);
  EXPECT_THROW(dephase(rho, 0, Time(-1.0, ns), t2), SpecError);
}

TEST(noise_ensemble, flip_probability_limits) {
  EXPECT_EQ(phase_flip_probability(Time{}, Time(1.0, us)), 0.0);
  EXPECT_LT(phase_flip_probability(Time(1.0, ns), Time(1e12, us)), 1e-15);
  EXPECT_NEAR(phase_flip_probability(Time(1.0, ms), Time(1.0, ns)), 0.5, 1e-15);
  EXPECT_NEAR(phase_flip_probability(Time(1.0, us), Time(1.0, us)), (1 - std::exp(-1.0)) / 2, 1e-15);
}

TEST(noise_ensemble, ramsey_trajectories_match_channel) {
  const DeviceSpec spec = device("A");
  const Time t2(1.0, us), t(250.0, ns);
  const NoiseModel model = NoiseModel::uniform(t2, Energy{}, 7);
  EnsembleOptions opt;
  opt.initial = plus_x(spec.pattern);
  const EnsembleResult r =
      run_ensemble(spec, model, program_of({wait_event(spec, t)}), 100000, {x0()}, {t}, opt);
  const double expected = std::exp(-0.25);
  EXPECT_NEAR(r.mean[0][0], expected, 0.01 * expected);
  EXPECT_LT(std::abs(r.mean[0][0] - expected), 3 * r.stderr_[0][0]);
}

TEST(noise_ensemble, static_offset_statistics) {
  const Pattern p = Pattern::parse("ABCD");
  NoiseModel model = NoiseModel::uniform(std::nullopt, Energy(0.08, ueV), 1);
  model.inhomogeneous_fwhm[CellType::D] = Energy{};
  const int n = 100000;
  std::vector<double> sum(4, 0.0), sumsq(4, 0.0);
  for (int m = 0; m < n; ++m) {
    Rng rng = molecule_rng(model.seed, static_cast<std::uint64_t>(m), 0);
    const std::vector<double> d = draw_static_offsets(model, p, rng);
    for (int k = 0; k < 4; ++k) {
      sum[k] += d[k];
      sumsq[k] += d[k] * d[k];
    }
  }
  const double sd = 0.08 / kFwhmPerSigma;
  for (int k = 0; k < 3; ++k) {
    EXPECT_LT(std::abs(sum[k] / n), 3 * sd / std::sqrt(double(n)));
    const double fwhm = kFwhmPerSigma * std::sqrt(sumsq[k] / n - std::pow(sum[k] / n, 2));
    EXPECT_NEAR(fwhm, 0.08, 0.02 * 0.08);
  }
  EXPECT_EQ(sum[3], 0.0);
  Rng a = molecule_rng(3, 9, 0), b = molecule_rng(3, 9, 0), c = molecule_rng(3, 10, 0);
  EXPECT_EQ(draw_static_offsets(model, p, a), draw_static_offsets(model, p, b));
  EXPECT_NE(molecule_rng(3, 9, 0)(), c());
}

TEST(noise_ensemble, free_induction_decay_matches_numerical_average) {
  const DeviceSpec spec = device("A");
  const NoiseModel model = NoiseModel::uniform(std::nullopt, Energy(0.08, ueV), 42);
  const size_t n = 2000;
  std::vector<Time> times;
  for (int i = 0; i <= 8; ++i) times.push_back(Time(5.0 * i, ns));
  EnsembleOptions opt;
  opt.initial = plus_x(spec.pattern);
  const EnsembleResult r =
      run_ensemble(spec, model, program_of({wait_event(spec, Time(40.0, ns))}), n, {x0()}, times, opt);
  // Oracle: average cos(delta t / hbar) over the same draws.
  for (size_t i = 0; i < times.size(); ++i) {
    double avg = 0.0;
    for (size_t m = 0; m < n; ++m) {
      Rng rng = molecule_rng(model.seed, m, static_cast<std::uint64_t>(Stream::Offsets));
      const double d = draw_static_offsets(model, spec.pattern, rng)[0];
      avg += std::cos(d * times[i].in(ns) / constants::hbar.canonical());
    }
    avg /= double(n);
    EXPECT_NEAR(r.mean[0][i], avg, 0.01 * std::abs(avg) + 1e-12) << i;
  }
  EXPECT_LT(r.mean[0].back(), 0.5);
}

TEST(noise_ensemble, offsets_only_act_under_circular_light) {
  const DeviceSpec spec = device("A");
  const NoiseModel model = NoiseModel::uniform(std::nullopt, Energy(0.08, ueV), 42);
  EnsembleOptions opt;
  opt.initial = plus_x(spec.pattern);
  const EnsembleResult r = run_ensemble(spec, model, program_of({wait_event(spec, Time(40.0, ns), false)}), 200,
                                        {x0()}, {}, opt);
  EXPECT_NEAR(r.mean[0].back(), 1.0, 1e-12);
}

TEST(noise_ensemble, hahn_echo_refocuses_static_offsets) {
  const DeviceSpec spec = device("A");
  const NoiseModel model = NoiseModel::uniform(std::nullopt, Energy(0.08, ueV), 5);
  const Time tau(100.0, ns);
  PulseProgram echo = program_of({wait_event(spec, tau)});
  echo.append(compile_rule(GateRule::rotate(CellType::A, C::Any, C::Any, kPi), spec));
  echo.events.push_back(wait_event(spec, tau));
  EnsembleOptions opt;
  opt.initial = plus_x(spec.pattern);
  opt.level = Level::Oracle;
  const std::vector<Time> times{tau, echo.duration()};
  const EnsembleResult r = run_ensemble(spec, model, echo, 2000, {x0()}, times, opt);
  EXPECT_LT(std::abs(r.mean[0][0]), 0.2);
  EXPECT_GE(r.mean[0][1], 0.999);
}

TEST(noise_ensemble, echo_amplitude_keeps_markovian_decay) {
  const DeviceSpec spec = device("A");
  const Time tau(100.0, ns), t2(1.0, us);
  const NoiseModel model = NoiseModel::uniform(t2, Energy(0.08, ueV), 5);
  PulseProgram echo = program_of({wait_event(spec, tau)});
  echo.append(compile_rule(GateRule::rotate(CellType::A, C::Any, C::Any, kPi), spec));
  echo.events.push_back(wait_event(spec, tau));
  // Zero offsets: the density run is the exact echo amplitude.
  const ChainState out = run_density(spec, model, echo, plus_x(spec.pattern), Level::Oracle);
  EXPECT_NEAR(out.expect(x0()), std::exp(-(echo.duration() / t2).canonical()), 1e-12);
}

TEST(noise_ensemble, trajectories_match_density_entries) {
  const DeviceSpec spec = device("ABC");
  const NoiseModel model = NoiseModel::uniform(Time(40.0, ns), Energy{}, kDefaultSeed);
  PulseProgram p = program_of({wait_event(spec, Time(10.0, ns))});
  p.append(compile_rule(GateRule::rotate(CellType::B, C::Any, C::One, kPi / 2, 0.3), spec));
  p.events.push_back(wait_event(spec, Time(15.0, ns), false));
  p.append(compile_rule(GateRule::rotate(CellType::A, C::Any, C::Any, kPi / 3), spec));
  std::mt19937_64 g(1);
  std::normal_distribution<double> nd;
  StateVector v(8);
  for (auto& a : v) a = Complex(nd(g), nd(g));
  v.normalize();
  const ChainState in = ChainState::pure(spec.pattern, v);
  const DensityMatrix exact = run_density(spec, model, p, in, Level::Oracle).density_matrix();

  const int n = 10000;
  Eigen::MatrixXd sr = Eigen::MatrixXd::Zero(8, 8), si = sr, qr = sr, qi = sr;
  for (int m = 0; m < n; ++m) {
    Rng rng = molecule_rng(model.seed, static_cast<std::uint64_t>(m), 1);
    RunContext ctx;
    ctx.level = Level::Oracle;
    ctx.noise = &model;
    ctx.rng = &rng;
    ChainState s = in;
    run_program_in_place(s, p, spec, ctx);
    const StateVector& a = s.amplitudes();
    const Eigen::MatrixXcd rho = a * a.adjoint();
    sr += rho.real();
    si += rho.imag();
    qr += rho.real().cwiseAbs2();
    qi += rho.imag().cwiseAbs2();
  }
  double chi2 = 0.0;
  int dof = 0;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const double mr = sr(i, j) / n, mi = si(i, j) / n;
      const double er = std::sqrt(std::max(0.0, qr(i, j) / n - mr * mr) / n);
      const double ei = std::sqrt(std::max(0.0, qi(i, j) / n - mi * mi) / n);
      EXPECT_LE(std::abs(mr - exact(i, j).real()), 3 * er + 1e-12) << i << "," << j;
      EXPECT_LE(std::abs(mi - exact(i, j).imag()), 3 * ei + 1e-12) << i << "," << j;
      // Upper triangle (with diagonal) holds the independent components.
      if (j < i) continue;
      if (er > 0) {
        chi2 += std::pow((mr - exact(i, j).real()) / er, 2);
        ++dof;
      }
      if (ei > 0) {
        chi2 += std::pow((mi - exact(i, j).imag()) / ei, 2);
        ++dof;
      }
    }
  }
  // No bias: the summed squared z-scores stay within five sd of chi^2(dof).
  EXPECT_LT(std::abs(chi2 - dof), 5 * std::sqrt(2.0 * dof)) << chi2 << " / " << dof;
}

TEST(noise_ensemble, dephasing_step_halving_converges) {
  const DeviceSpec spec = device("A");
  const NoiseModel model = NoiseModel::uniform(Time(30.0, ns), Energy{}, 1);
  PulseEvent e = wait_event(spec, Time(10.0, ns));
  e.microwave = MicrowaveDrive{Energy(0.3, ueV), spec.cavity_energy, 0.0, Envelope::rectangular()};
  const PulseProgram p = program_of({e});
  const ChainState in = new_chain(spec.pattern, "0").to_density();
  auto run = [&](double dt) {
    RunContext ctx;
    ctx.noise = &model;
    ctx.dt = Time(dt, ns);
    ChainState s = in;
    run_program_in_place(s, p, spec, ctx);
    return s.density_matrix();
  };
  const DensityMatrix a = run(0.002), b = run(0.001), c = run(0.0005);
  const double d1 = (a - b).cwiseAbs().maxCoeff(), d2 = (b - c).cwiseAbs().maxCoeff();
  EXPECT_LT(d2, 1e-4);
  EXPECT_LT(d2, d1);
}

TEST(noise_ensemble, single_noiseless_molecule_equals_pulse_run) {
  const DeviceSpec spec = device("ABC");
  const PulseProgram p = compile_rule(GateRule::rotate(CellType::B, C::Any, C::Zero, kPi / 2), spec);
  std::vector<Observable> obs;
  for (const char* o : {"ZII", "IXI", "IYZ", "XXX"}) obs.push_back(Observable::parse(o, 3));
  const ChainState start = new_chain(spec.pattern, "101");
  EnsembleOptions opt;
  opt.initial = start;
  const EnsembleResult r = run_ensemble(spec, NoiseModel::none(), p, 1, obs, {}, opt);
  const ChainState single = run_program(start, p, spec);
  for (size_t o = 0; o < obs.size(); ++o) {
    EXPECT_EQ(r.mean[o].back(), single.expect(obs[o])) << obs[o].str();
    EXPECT_EQ(r.stderr_[o].back(), 0.0);
  }
}

TEST(noise_ensemble, empty_program_reports_initial_state) {
  const DeviceSpec spec = zno_device();
  const EnsembleResult r =
      run_ensemble(spec, NoiseModel::none(), PulseProgram{}, 3, {Observable::single('Z', 6, 7)}, {});
  ASSERT_EQ(r.times.size(), 1u);
  EXPECT_EQ(r.mean[0][0], -1.0);
  for (double z : r.final_site_z) EXPECT_EQ(z, -1.0);
}

TEST(noise_ensemble, results_independent_of_thread_count) {
  const DeviceSpec spec = device("ABCD");
  NoiseModel model = NoiseModel::uniform(Time(200.0, ns), Energy(0.08, ueV), 1234);
  PulseProgram p = compile_load(spec, 1.1, 0.3);
  p.events.push_back(wait_event(spec, Time(20.0, ns)));
  std::vector<Observable> obs{Observable::single('X', 0, 4), Observable::single('Z', 0, 4)};
  EnsembleOptions one, four;
  one.threads = 1;
  four.threads = 4;
  one.level = four.level = Level::Oracle;
  one.pumping_fidelity = four.pumping_fidelity = 0.97;
  const std::string a = run_ensemble(spec, model, p, 2500, obs, {}, one).to_json().dump();
  const std::string b = run_ensemble(spec, model, p, 2500, obs, {}, four).to_json().dump();
  EXPECT_EQ(a, b);
  const EnsembleResult r = run_ensemble(spec, model, p, 2500, obs, {}, one);
  EXPECT_EQ(r.to_csv(), run_ensemble(spec, model, p, 2500, obs, {}, four).to_csv());
  EXPECT_EQ(r.to_csv().substr(0, 31), "time_ns,observable,mean,stderr\n");
}

TEST(noise_ensemble, noise_json_round_trip) {
  const nlohmann::json j = nlohmann::json::parse(R"({"T2": "90 us", "Gamma_inh": {"A": "0.08 ueV"}, "seed": 5})");
  const NoiseModel m = noise_model_from_json(j);
  EXPECT_NEAR(m.t2_of(CellType::D)->in(us), 90.0, 1e-12);
  EXPECT_NEAR(m.fwhm_of(CellType::A).in(ueV), 0.08, 1e-15);
  EXPECT_EQ(m.fwhm_of(CellType::B), Energy{});
  EXPECT_EQ(m.seed, 5u);
  const NoiseModel back = noise_model_from_json(noise_model_to_json(m));
  EXPECT_EQ(back.t2, m.t2);
  EXPECT_EQ(back.inhomogeneous_fwhm, m.inhomogeneous_fwhm);
  EXPECT_THROW(noise_model_from_json(nlohmann::json::parse(R"({"T2": "-1 us"})")), SpecError);
  EXPECT_THROW(noise_model_from_json(nlohmann::json::parse(R"({"T2": "1 ueV"})")), ParseError);
  EXPECT_THROW(noise_model_from_json(nlohmann::json::parse(R"({"T1": "1 us"})")), ParseError);
  EXPECT_EQ(level_from_string("oracle"), Level::Oracle);
  EXPECT_THROW(level_from_string("exact"), SpecError);
}
