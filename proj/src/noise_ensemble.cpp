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

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>

#include "donorqca/errors.hpp"
#include "donorqca/readout.hpp"

namespace donorqca {

using namespace units;
using nlohmann::json;

NoiseModel NoiseModel::none(std::uint64_t seed) {
  NoiseModel m;
  m.seed = seed;
  return m;
}

NoiseModel NoiseModel::uniform(std::optional<Time> t2, Energy fwhm, std::uint64_t seed) {
  NoiseModel m;
  m.seed = seed;
  for (CellType t : kAllCellTypes) {
    if (t2) m.t2[t] = *t2;
    if (fwhm > Energy{}) m.inhomogeneous_fwhm[t] = fwhm;
  }
  return m;
}

std::optional<Time> NoiseModel::t2_of(CellType t) const {
  auto it = t2.find(t);
  if (it == t2.end()) return std::nullopt;
  return it->second;
}

Energy NoiseModel::fwhm_of(CellType t) const {
  auto it = inhomogeneous_fwhm.find(t);
  return it == inhomogeneous_fwhm.end() ? Energy{} : it->second;
}

bool NoiseModel::has_offsets() const {
  for (const auto& [t, w] : inhomogeneous_fwhm) {
    if (w > Energy{}) return true;
  }
  return false;
}

void NoiseModel::validate() const {
  for (const auto& [t, v] : t2) {
    if (!(v > Time{})) throw SpecError(std::string("noise: T2 of type ") + to_char(t) + " must be positive");
  }
  for (const auto& [t, w] : inhomogeneous_fwhm) {
    if (w < Energy{}) throw SpecError(std::string("noise: Gamma_inh of type ") + to_char(t) + " must be >= 0");
  }
}

namespace {

template <class Q>
std::map<CellType, Q> read_per_type(const json& j, const char* key) {
  std::map<CellType, Q> out;
  if (!j.contains(key) || j.at(key).is_null()) return out;
  const json& v = j.at(key);
  auto parse = [&](const json& s) {
    if (!s.is_string()) throw ParseError(std::string("noise.") + key + " values must be strings with units");
    return parse_as<Q>(s.get<std::string>());
  };
  if (v.is_object()) {
    for (const auto& [k, s] : v.items()) {
      if (k.size() != 1) throw ParseError(std::string("noise.") + key + ": '" + k + "' is not a cell type");
      out[cell_type_from_char(k[0])] = parse(s);
    }
  } else {
    const Q q = parse(v);
    for (CellType t : kAllCellTypes) out[t] = q;
  }
  return out;
}

}  // namespace

NoiseModel noise_model_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("noise must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "T2" && key != "Gamma_inh" && key != "seed") throw ParseError("noise: unknown key '" + key + "'");
  }
  NoiseModel m;
  try {
    m.t2 = read_per_type<Time>(j, "T2");
    m.inhomogeneous_fwhm = read_per_type<Energy>(j, "Gamma_inh");
  } catch (const DimensionError& e) {
    throw ParseError(std::string("noise: ") + e.what());
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw ParseError("noise.seed must be a non-negative integer");
    m.seed = j.at("seed").get<std::uint64_t>();
  }
  m.validate();
  return m;
}

json noise_model_to_json(const NoiseModel& model) {
  json j;
  j["seed"] = model.seed;
  for (const auto& [t, v] : model.t2) j["T2"][std::string(1, to_char(t))] = format_quantity(v.canonical(), "us", "ns");
  for (const auto& [t, w] : model.inhomogeneous_fwhm) {
    j["Gamma_inh"][std::string(1, to_char(t))] = format_quantity(w.canonical(), "ueV", "ueV");
  }
  return j;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng molecule_rng(std::uint64_t seed, std::uint64_t molecule, std::uint64_t stream) {
  std::uint64_t s = seed;
  const std::uint64_t a = splitmix64(s);
  s = a ^ molecule;
  const std::uint64_t b = splitmix64(s);
  s = b ^ (stream * 0xd1342543de82ef95ULL);
  const std::uint64_t c = splitmix64(s);
  const std::uint64_t d = splitmix64(s);
  std::seed_seq seq{static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32), static_cast<std::uint32_t>(d),
                    static_cast<std::uint32_t>(d >> 32)};
  return Rng(seq);
}

double phase_flip_probability(Time duration, Time t2) {
  if (duration < Time{}) throw SpecError("dephasing duration must be non-negative");
  if (!(t2 > Time{})) throw SpecError("T2 must be positive");
  return 0.5 * (1.0 - std::exp(-(duration / t2).canonical()));
}

void dephase(ChainState& rho, int site, Time duration, Time t2) {
  const double p = phase_flip_probability(duration, t2);
  rho.scale_coherences(site, 1.0 - 2.0 * p);
}

ChainState dephase(ChainState rho, int site, Time duration, std::optional<Time> t2) {
  if (duration < Time{}) throw SpecError("dephasing duration must be non-negative");
  if (t2) dephase(rho, site, duration, *t2);
  return rho;
}

void trajectory_dephase(ChainState& psi, int site, Time duration, Time t2, Rng& rng) {
  const double p = phase_flip_probability(duration, t2);
  if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p) psi.apply_1q(pauli::z(), site);
}

std::vector<double> draw_static_offsets(const NoiseModel& model, const Pattern& pattern, Rng& rng) {
  std::vector<double> out(pattern.size(), 0.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (size_t k = 0; k < pattern.size(); ++k) {
    const double sd = model.fwhm_of(pattern[k]).in(ueV) / kFwhmPerSigma;
    // One draw per site keeps streams aligned whatever the widths are.
    const double g = normal(rng);
    out[k] = sd * g;
  }
  return out;
}

Level level_from_string(const std::string& s) {
  if (s == "oracle") return Level::Oracle;
  if (s == "pulse") return Level::Pulse;
  throw SpecError("level must be 'oracle' or 'pulse', got '" + s + "'");
}

std::string to_string(Level level) { return level == Level::Oracle ? "oracle" : "pulse"; }

// --- program execution ------------------------------------------------------

namespace {

struct Runner {
  ChainState& state;
  const DeviceSpec& spec;
  const RunContext& ctx;
  size_t next_sample = 0;

  void emit(const ChainState& s) {
    if (ctx.on_sample) ctx.on_sample(next_sample, s);
    ++next_sample;
  }

  void noise_step(ChainState& s, Time dt) {
    if (ctx.noise == nullptr || !ctx.noise->has_dephasing() || dt <= Time{}) return;
    for (int k = 0; k < s.num_sites(); ++k) {
      auto t2 = ctx.noise->t2_of(spec.pattern[static_cast<size_t>(k)]);
      if (!t2) continue;
      if (s.is_pure()) {
        if (ctx.rng == nullptr) throw SpecError("dephasing a pure state needs a trajectory generator");
        trajectory_dephase(s, k, dt, *t2, *ctx.rng);
      } else {
        dephase(s, k, dt, *t2);
      }
    }
  }

  // Logical-frame free evolution: only the static offsets act.
  void free_evolve(Time dt, const std::vector<double>& offsets) {
    if (dt <= Time{}) return;
    if (!offsets.empty()) {
      const double tau = (dt / constants::hbar).canonical();
      std::vector<Complex> phases(state.dim());
      for (size_t i = 0; i < phases.size(); ++i) {
        double e = 0.0;
        for (int k = 0; k < state.num_sites(); ++k) e += 0.5 * offsets[static_cast<size_t>(k)] * ((i >> k & 1) ? 1 : -1);
        phases[i] = std::polar(1.0, -e * tau);
      }
      state.apply_diagonal(phases);
    }
    noise_step(state, dt);
  }

  void oracle_event(const PulseEvent& e, const GateRule& rule, Time t0, const std::vector<double>& offsets) {
    const Time half = 0.5 * e.duration;
    Time now;
    auto advance_to = [&](Time local_end) {
      while (next_sample < ctx.sample_times.size() && ctx.sample_times[next_sample] - t0 <= local_end) {
        const Time ts = ctx.sample_times[next_sample] - t0;
        free_evolve(ts - now, offsets);
        now = ts;
        emit(state);
      }
      free_evolve(local_end - now, offsets);
      now = local_end;
    };
    advance_to(half);
    apply_rule_in_place(state, rule, spec.boundary);
    advance_to(e.duration);
  }

  void pulse_event(const PulseEvent& e, Time t0, const std::vector<double>& offsets) {
    const FrameHamiltonian h = build_hamiltonian(spec, e.lasers, e.microwave, e.duration);
    EvolveOptions opt;
    opt.dt = ctx.dt;
    opt.offsets = offsets;
    for (size_t i = next_sample; i < ctx.sample_times.size(); ++i) {
      const Time local = ctx.sample_times[i] - t0;
      if (local > e.duration) break;
      opt.checkpoints.push_back(local);
    }
    if (ctx.noise != nullptr && ctx.noise->has_dephasing()) {
      opt.after_step = [this](ChainState& s, Time dt) { noise_step(s, dt); };
    }
    opt.on_checkpoint = [&](const ChainState& s, Time t) {
      ChainState copy = s;
      to_logical_frame(copy, h, t, e.keep_ising);
      emit(copy);
    };
    evolve_in_place(state, e, spec, opt);
    to_logical_frame(state, h, e.duration, e.keep_ising);
  }

  void run(const PulseProgram& program) {
    const auto& times = ctx.sample_times;
    if (!std::is_sorted(times.begin(), times.end())) throw SpecError("sample times must be ascending");
    const Time total = program.duration();
    for (Time t : times) {
      if (t < Time{} || t.canonical() > total.canonical() * (1.0 + 1e-12) + 1e-12) {
        throw SpecError("sample time " + std::to_string(t.in(ns)) + " ns lies outside the program");
      }
    }
    if (!ctx.offsets.empty() && ctx.offsets.size() != spec.pattern.size()) {
      throw SpecError("one static offset per site is required");
    }
    if (state.pattern() != spec.pattern) throw SpecError("state pattern does not match the device");
    while (next_sample < times.size() && times[next_sample] <= Time{}) emit(state);
    Time t0;
    for (const PulseEvent& e : program.events) {
      const std::vector<double> offsets = e.lasers.circular_on ? ctx.offsets : std::vector<double>{};
      const auto* rule = std::get_if<GateRule>(&e.intent);
      if (ctx.level == Level::Oracle && e.has_drive() && rule != nullptr) {
        e.validate();
        oracle_event(e, *rule, t0, offsets);
      } else {
        pulse_event(e, t0, offsets);
      }
      t0 = t0 + e.duration;
    }
    while (next_sample < times.size()) emit(state);
  }
};

}  // namespace

void run_program_in_place(ChainState& state, const PulseProgram& program, const DeviceSpec& spec,
                          const RunContext& ctx) {
  Runner{state, spec, ctx}.run(program);
}

ChainState run_program(ChainState state, const PulseProgram& program, const DeviceSpec& spec, Level level,
                       std::optional<Time> dt) {
  RunContext ctx;
  ctx.level = level;
  ctx.dt = dt;
  run_program_in_place(state, program, spec, ctx);
  return state;
}

std::vector<Time> default_sample_times(const PulseProgram& program) {
  std::vector<Time> out{Time{}};
  Time t;
  for (const PulseEvent& e : program.events) {
    t = t + e.duration;
    out.push_back(t);
  }
  return out;
}

// --- ensembles ------------------------------------------------------------------

namespace {

struct Accumulator {
  std::vector<double> sum, sumsq, zsum, zsumsq;
};

double round12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

}  // namespace

EnsembleResult run_ensemble(const DeviceSpec& spec, const NoiseModel& model, const PulseProgram& program,
                            std::size_t n_molecules, const std::vector<Observable>& observables,
                            const std::vector<Time>& sample_times, const EnsembleOptions& options) {
  spec.validate();
  model.validate();
  if (n_molecules == 0) throw SpecError("ensemble needs at least one molecule");
  if (options.pumping_fidelity < 0.0 || options.pumping_fidelity > 1.0) {
    throw SpecError("pumping fidelity must lie in [0, 1]");
  }
  for (const Observable& o : observables) {
    if (o.size() != spec.pattern.size()) throw SpecError("observable " + o.str() + " does not fit the chain");
  }
  if (options.initial && options.initial->pattern() != spec.pattern) {
    throw SpecError("initial state pattern does not match the device");
  }
  EnsembleResult result;
  result.times = sample_times.empty() ? default_sample_times(program) : sample_times;
  result.observables = observables;
  result.n_molecules = n_molecules;
  result.seed = model.seed;
  result.level = options.level;

  const size_t n_obs = observables.size(), n_t = result.times.size(), n_sites = spec.pattern.size();
  const size_t n_chunks = (n_molecules + kEnsembleChunk - 1) / kEnsembleChunk;
  std::vector<Accumulator> chunks(n_chunks);
  std::exception_ptr failure;
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long c = 0; c < static_cast<long>(n_chunks); ++c) {
    try {
      Accumulator& acc = chunks[static_cast<size_t>(c)];
      acc.sum.assign(n_obs * n_t, 0.0);
      acc.sumsq.assign(n_obs * n_t, 0.0);
      acc.zsum.assign(n_sites, 0.0);
      acc.zsumsq.assign(n_sites, 0.0);
      const size_t begin = static_cast<size_t>(c) * kEnsembleChunk;
      const size_t end = std::min(n_molecules, begin + kEnsembleChunk);
      for (size_t m = begin; m < end; ++m) {
        RunContext ctx;
        ctx.level = options.level;
        ctx.dt = options.dt;
        ctx.noise = &model;
        ctx.sample_times = result.times;
        if (model.has_offsets()) {
          Rng r = molecule_rng(model.seed, m, static_cast<std::uint64_t>(Stream::Offsets));
          ctx.offsets = draw_static_offsets(model, spec.pattern, r);
        }
        Rng trajectory = molecule_rng(model.seed, m, options.trajectory_stream);
        ctx.rng = &trajectory;
        ChainState state;
        if (options.initial) {
          state = *options.initial;
        } else if (options.pumping_fidelity < 1.0) {
          Rng r = molecule_rng(model.seed, m, static_cast<std::uint64_t>(Stream::Pumping));
          state = initialize_pumped(spec.pattern, options.pumping_fidelity, r);
        } else {
          state = initialize_pumped(spec.pattern);
        }
        ctx.on_sample = [&](size_t i, const ChainState& s) {
          for (size_t o = 0; o < n_obs; ++o) {
            const double v = s.expect(observables[o]);
            acc.sum[o * n_t + i] += v;
            acc.sumsq[o * n_t + i] += v * v;
          }
        };
        run_program_in_place(state, program, spec, ctx);
        const std::vector<double> z = state.site_z();
        for (size_t k = 0; k < n_sites; ++k) {
          acc.zsum[k] += z[k];
          acc.zsumsq[k] += z[k] * z[k];
        }
      }
    } catch (...) {
#pragma omp critical(donorqca_ensemble_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> sum(n_obs * n_t, 0.0), sumsq(n_obs * n_t, 0.0), zsum(n_sites, 0.0), zsumsq(n_sites, 0.0);
  for (const Accumulator& acc : chunks) {
    for (size_t i = 0; i < sum.size(); ++i) {
      sum[i] += acc.sum[i];
      sumsq[i] += acc.sumsq[i];
    }
    for (size_t k = 0; k < n_sites; ++k) {
      zsum[k] += acc.zsum[k];
      zsumsq[k] += acc.zsumsq[k];
    }
  }
  const double n = static_cast<double>(n_molecules);
  auto stats = [n](double s, double s2, double& mean, double& se) {
    mean = s / n;
    const double var = n > 1 ? std::max(0.0, (s2 - n * mean * mean) / (n - 1.0)) : 0.0;
    se = std::sqrt(var / n);
  };
  result.mean.assign(n_obs, std::vector<double>(n_t));
  result.stderr_.assign(n_obs, std::vector<double>(n_t));
  for (size_t o = 0; o < n_obs; ++o) {
    for (size_t i = 0; i < n_t; ++i) stats(sum[o * n_t + i], sumsq[o * n_t + i], result.mean[o][i], result.stderr_[o][i]);
  }
  result.final_site_z.resize(n_sites);
  result.final_site_z_stderr.resize(n_sites);
  for (size_t k = 0; k < n_sites; ++k) stats(zsum[k], zsumsq[k], result.final_site_z[k], result.final_site_z_stderr[k]);
  return result;
}

json EnsembleResult::to_json() const {
  json j;
  j["level"] = to_string(level);
  j["seed"] = seed;
  j["n_molecules"] = n_molecules;
  json t = json::array();
  for (Time x : times) t.push_back(round12(x.in(ns)));
  j["times_ns"] = t;
  j["observables"] = json::array();
  for (size_t o = 0; o < observables.size(); ++o) {
    json m = json::array(), s = json::array();
    for (size_t i = 0; i < times.size(); ++i) {
      m.push_back(round12(mean[o][i]));
      s.push_back(round12(stderr_[o][i]));
    }
    j["observables"].push_back({{"name", observables[o].str()}, {"mean", m}, {"stderr", s}});
  }
  json z = json::array(), zs = json::array();
  for (size_t k = 0; k < final_site_z.size(); ++k) {
    z.push_back(round12(final_site_z[k]));
    zs.push_back(round12(final_site_z_stderr[k]));
  }
  j["final_site_z"] = z;
  j["final_site_z_stderr"] = zs;
  return j;
}

std::string EnsembleResult::to_csv() const {
  std::ostringstream out;
  out << "time_ns,observable,mean,stderr\n";
  char buf[160];
  for (size_t i = 0; i < times.size(); ++i) {
    for (size_t o = 0; o < observables.size(); ++o) {
      std::snprintf(buf, sizeof buf, "%.12g,%s,%.12g,%.12g\n", times[i].in(ns), observables[o].str().c_str(),
                    mean[o][i], stderr_[o][i]);
      out << buf;
    }
  }
  return out.str();
}

ChainState run_density(const DeviceSpec& spec, const NoiseModel& model, const PulseProgram& program,
                       const ChainState& initial, Level level, const std::vector<double>& offsets) {
  model.validate();
  ChainState state = initial.is_pure() ? initial.to_density() : initial;
  RunContext ctx;
  ctx.level = level;
  ctx.noise = &model;
  ctx.offsets = offsets;
  run_program_in_place(state, program, spec, ctx);
  return state;
}

}  // namespace donorqca
