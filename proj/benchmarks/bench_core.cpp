#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>

#include "iontide/constants.hpp"
#include "iontide/fock.hpp"
#include "iontide/gaussian.hpp"
#include "iontide/potential.hpp"
#include "iontide/propagator.hpp"
#include "iontide/species.hpp"
#include "iontide/switching.hpp"
#include "iontide/trap.hpp"
#include "iontide/wavefunction.hpp"

using namespace iontide;
using constants::pi;
using constants::two_pi;

namespace {
const IonSpecies& ca = IonSpecies::ca40();
const double omega = two_pi * 1e6;
} // namespace

static void BM_SplitStep(benchmark::State& state) {
    const auto points = static_cast<std::size_t>(state.range(0));
    const PotentialSpec well = PotentialSpec::make(1e6, std::nullopt, -2.4e-6, 0.0);
    const std::size_t chunk = 16;
    const GridSpec grid = GridSpec::make(-1.6e-6, 1.6e-6, points, 1.0, chunk)
                              .with_time(chunk * (pi / omega) / 1400.0, chunk);
    const double a0 = ground_state_extent(ca, omega);
    const Wavefunction psi0 = make_coherent_state(grid, well, ca, 0.2e-6 / (2.0 * a0));
    for (auto _ : state) {
        auto res = propagate(psi0, well, ca);
        benchmark::DoNotOptimize(res.norm_drift);
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * chunk));
    state.counters["points"] = static_cast<double>(points);
}
BENCHMARK(BM_SplitStep)->Arg(1 << 12)->Arg(1 << 15)->Arg(1 << 18)->Unit(benchmark::kMillisecond);

static void BM_FockAnalysis(benchmark::State& state) {
    const PotentialSpec well = PotentialSpec::harmonic(1e6, 0.0);
    const GridSpec grid = GridSpec::make(-0.3e-6, 0.3e-6, 1 << 15, 1.0, 1);
    const Wavefunction psi = make_coherent_state(grid, well, ca, {2.0, 1.0});
    for (auto _ : state) {
        auto amps = fock_amplitudes(psi, well, ca, 24);
        benchmark::DoNotOptimize(amps.back());
    }
}
BENCHMARK(BM_FockAnalysis)->Unit(benchmark::kMillisecond);

static void BM_ResidualQuadrature(benchmark::State& state) {
    const PotentialSpec well = PotentialSpec::harmonic(1e6, 0.0);
    const double z0 = 50e-6, tau = 5e-9;
    const auto protocol = TransportProtocol::make(
        well.at_center(-z0), well, well.at_center(z0), TransitionShape::sinusoidal(tau),
        pi / omega - tau, TransitionShape::sinusoidal(1.4 * tau));
    for (auto _ : state) {
        benchmark::DoNotOptimize(residual_alpha_general(protocol, ca, omega));
    }
}
BENCHMARK(BM_ResidualQuadrature)->Unit(benchmark::kMicrosecond);

static void BM_SqueezeProtocol(benchmark::State& state) {
    // 6 cycles = -60 dB, near the edge of what the eigenvalue split resolves
    const auto protocol = SqueezeProtocol::make(two_pi * 1.2e6, std::sqrt(0.1), 6);
    for (auto _ : state) {
        auto run = run_squeeze_protocol(protocol, GaussianState::vacuum());
        benchmark::DoNotOptimize(run.final.det());
    }
}
BENCHMARK(BM_SqueezeProtocol)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
