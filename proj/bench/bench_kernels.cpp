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


// Serial reference kernels against their OpenMP versions, plus the molecule
// loop of the ensemble runner.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "donorqca/kernels.hpp"
#include "donorqca/noise_ensemble.hpp"

namespace k = donorqca::kernels;
using k::Complex;

namespace {

std::vector<Complex> random_state(int n) {
  std::mt19937_64 g(1);
  std::normal_distribution<double> nd;
  std::vector<Complex> v(std::size_t{1} << n);
  for (auto& a : v) a = Complex(nd(g), nd(g));
  return v;
}

const k::Mat2 kHadamardLike{Complex(0.6, 0), Complex(0.8, 0), Complex(0.8, 0), Complex(-0.6, 0)};

template <bool Parallel>
void BM_apply_1q(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto psi = random_state(n);
  for (auto _ : state) {
    for (int q = 0; q < n; ++q) {
      if constexpr (Parallel) {
        k::apply_1q(psi.data(), n, q, kHadamardLike);
      } else {
        k::reference::apply_1q(psi.data(), n, q, kHadamardLike);
      }
    }
    benchmark::DoNotOptimize(psi.data());
  }
  state.SetItemsProcessed(state.iterations() * n * static_cast<int64_t>(psi.size()));
}

template <bool Parallel>
void BM_apply_hamiltonian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto psi = random_state(n);
  std::vector<Complex> out(psi.size());
  std::vector<double> d(psi.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::sin(double(i));
  for (auto _ : state) {
    if constexpr (Parallel) {
      k::apply_hamiltonian(psi.data(), out.data(), n, d.data(), Complex(0.3, 0.1));
    } else {
      k::reference::apply_hamiltonian(psi.data(), out.data(), n, d.data(), Complex(0.3, 0.1));
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(psi.size()));
}

template <bool Parallel>
void BM_expect_z(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto psi = random_state(n);
  double sink = 0.0;
  for (auto _ : state) {
    if constexpr (Parallel) {
      sink += k::expect_z_product(psi.data(), psi.size(), 0b1011);
    } else {
      sink += k::reference::expect_z_product(psi.data(), psi.size(), 0b1011);
    }
  }
  benchmark::DoNotOptimize(sink);
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(psi.size()));
}

void BM_ensemble(benchmark::State& state) {
  using namespace donorqca;
  const DeviceSpec spec = zno_device();
  const NoiseModel model = NoiseModel::uniform(Time(1.0, units::us), Energy(0.08, units::ueV));
  const PulseProgram program = compile_shift_toward_D(spec, 1);
  EnsembleOptions opt;
  opt.level = Level::Oracle;
  opt.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = run_ensemble(spec, model, program, 4096, {Observable::single('Z', 6, 7)}, {}, opt);
    benchmark::DoNotOptimize(r.mean.data());
  }
  state.SetItemsProcessed(state.iterations() * 4096);
}

}  // namespace

BENCHMARK(BM_apply_1q<false>)->Name("apply_1q/serial")->Arg(10)->Arg(14)->Arg(18);
BENCHMARK(BM_apply_1q<true>)->Name("apply_1q/openmp")->Arg(10)->Arg(14)->Arg(18);
BENCHMARK(BM_apply_hamiltonian<false>)->Name("apply_hamiltonian/serial")->Arg(10)->Arg(14)->Arg(18);
BENCHMARK(BM_apply_hamiltonian<true>)->Name("apply_hamiltonian/openmp")->Arg(10)->Arg(14)->Arg(18);
BENCHMARK(BM_expect_z<false>)->Name("expect_z/serial")->Arg(10)->Arg(14)->Arg(18);
BENCHMARK(BM_expect_z<true>)->Name("expect_z/openmp")->Arg(10)->Arg(14)->Arg(18);
BENCHMARK(BM_ensemble)->Name("ensemble/oracle_shift")->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
