// Copyright 2026 The cvclone Authors
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

#include <benchmark/benchmark.h>

#include "cvclone/cloner.hpp"
#include "cvclone/gaussian_state.hpp"
#include "cvclone/modular.hpp"
#include "cvclone/random.hpp"
#include "cvclone/wigner.hpp"

namespace {

void BM_ConvolveWigner(benchmark::State &state) {
    auto points = static_cast<std::size_t>(state.range(0));
    cvclone::GridSpec spec{-12, 12, -12, 12, points, points};
    auto w = cvclone::wigner_of_gaussian(cvclone::coherent(0.5, -0.25), spec);
    cvclone::ShiftDistribution noise(0.5, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cvclone::convolve_wigner(w, noise));
    }
}
BENCHMARK(BM_ConvolveWigner)->Arg(129)->Arg(257)->Arg(513)->Unit(benchmark::kMillisecond);

void BM_DiscreteClone(benchmark::State &state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto vac = cvclone::discrete::discrete_vacuum(n);
    auto f = cvclone::discrete::gaussian_amplitude(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cvclone::discrete::clone(vac, f));
    }
}
BENCHMARK(BM_DiscreteClone)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_ErrorDistribution(benchmark::State &state) {
    cvclone::Rng rng(1);
    auto f = cvclone::random_discrete_amplitude(8, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cvclone::discrete::error_distribution(f, cvclone::Copy::b));
    }
}
BENCHMARK(BM_ErrorDistribution)->Unit(benchmark::kMicrosecond);

void BM_SampledDual(benchmark::State &state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto spec = cvclone::sample(cvclone::universal_cloner(), n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cvclone::dual_amplitude(spec));
    }
}
BENCHMARK(BM_SampledDual)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
