// Copyright 2026 The smearlab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <vector>

#include <benchmark/benchmark.h>

#include "smearlab/measure.hpp"
#include "smearlab/phase_space.hpp"
#include "smearlab/random_instances.hpp"
#include "smearlab/sampling.hpp"
#include "smearlab/semispectral.hpp"

using namespace smearlab;

static void BM_ConvolveAtoms(benchmark::State &state) {
    Rng rng(1);
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = random_atomic_measure(n, 10.0, rng);
    const auto b = random_atomic_measure(n, 10.0, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(convolve(a, b));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ConvolveAtoms)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

static void BM_ConvolveDensities(benchmark::State &state) {
    const double step = 24.0 / static_cast<double>(state.range(0));
    const auto g1 = gaussian_density(0.0, 1.0, -12.0, 12.0, step);
    const auto g2 = gaussian_density(0.0, 2.0, -12.0, 12.0, step);
    for (auto _ : state) {
        benchmark::DoNotOptimize(convolve(g1, g2));
    }
}
BENCHMARK(BM_ConvolveDensities)->Arg(600)->Arg(2400);

static void BM_Smear(benchmark::State &state) {
    Rng rng(2);
    const auto dim = static_cast<Index>(state.range(0));
    const auto spectral = spectral_measure_of(random_hermitian(dim, rng));
    const auto mu = gaussian_density(0.0, 0.25, -4.0, 4.0, 0.01);
    std::vector<double> edges;
    for (int i = -120; i <= 120; ++i) {
        edges.push_back(0.05 * i);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(smear(mu, spectral, edges));
    }
}
BENCHMARK(BM_Smear)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_PhaseSpaceBuild(benchmark::State &state) {
    const auto dim = static_cast<Index>(state.range(0));
    const auto vac = DensityOperator::basis_state(dim, 0);
    const PhaseSpaceGrid grid{6.0, static_cast<int>(state.range(1))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_phase_space_povm(vac, grid));
    }
}
BENCHMARK(BM_PhaseSpaceBuild)->Args({20, 24})->Args({40, 48})->Unit(benchmark::kMillisecond);

static void BM_Sample(benchmark::State &state) {
    Rng rng(3);
    const auto spectral = spectral_measure_of(random_hermitian(16, rng));
    std::vector<double> eig;
    for (const auto &a : spectral.atoms()) {
        eig.push_back(a.location);
    }
    const auto povm = bin_measure(AtomicPOVM(spectral), isolating_edges(eig));
    const auto rho = random_density(16, 4, rng);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample(povm, rho, n, 7));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sample)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
