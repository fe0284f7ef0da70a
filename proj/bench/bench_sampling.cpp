// Serial reference against the OpenMP kernels, and Sylvester counting against
// dense diagonalisation.
#include <benchmark/benchmark.h>

#include <omp.h>

#include "levy_spectra/engine.hpp"

using namespace levy_spectra;

namespace {

ModelSpec rank_one() {
    ModelSpec spec;
    spec.dim = 1;
    spec.variant = Variant::RankOneSite;
    spec.hopping = 1.0;
    spec.disorder = DisorderLaw::uniform(0.0, 5.0);
    return spec;
}

std::vector<EnergyWindow> windows_for(const LatticeBox& box) {
    return {local_window(box, 2.5, 0.5), local_window(box, 2.5, 1.0), local_window(box, 2.5, 2.0)};
}

void BM_SampleCountsSerial(benchmark::State& state) {
    const auto spec = rank_one();
    const auto box = fit_box(spec, static_cast<int>(state.range(0)));
    const auto windows = windows_for(box);
    for (auto _ : state) benchmark::DoNotOptimize(sample_counts_serial(spec, box, windows, 256, 1));
    state.SetItemsProcessed(state.iterations() * 256);
}

void BM_SampleCountsParallel(benchmark::State& state) {
    const auto spec = rank_one();
    const auto box = fit_box(spec, static_cast<int>(state.range(0)));
    const auto windows = windows_for(box);
    RunOptions opts;
    opts.workers = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(sample_counts(spec, box, windows, 256, 1, opts));
    state.SetItemsProcessed(state.iterations() * 256);
}

void BM_BlocksSerial(benchmark::State& state) {
    const auto spec = rank_one();
    const auto box = fit_box(spec, 199);
    const auto scheme = BlockScheme::tile(box, 10);
    const auto window = local_window(box, 2.5, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(run_eta_blocks_serial(spec, box, scheme, window, 128, 1));
}

void BM_BlocksParallel(benchmark::State& state) {
    const auto spec = rank_one();
    const auto box = fit_box(spec, 199);
    const auto scheme = BlockScheme::tile(box, 10);
    const auto window = local_window(box, 2.5, 1.0);
    RunOptions opts;
    opts.workers = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_eta_blocks(spec, box, scheme, window, 128, 1, opts));
}

void BM_CountInertia(benchmark::State& state) {
    const auto spec = rank_one();
    const auto box = fit_box(spec, static_cast<int>(state.range(0)));
    const auto h = build_hamiltonian(spec, box, sample_disorder(spec, box, 1, 0));
    const auto window = local_window(box, 2.5, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(count_in(h, window));
}

void BM_CountDense(benchmark::State& state) {
    const auto spec = rank_one();
    const auto box = fit_box(spec, static_cast<int>(state.range(0)));
    const auto h = build_hamiltonian(spec, box, sample_disorder(spec, box, 1, 0));
    const auto window = local_window(box, 2.5, 1.0);
    for (auto _ : state) {
        const auto ev = eigenvalues_dense(h);
        benchmark::DoNotOptimize(count_sorted_in(ev, window.left(), window.right()));
    }
}

const int kMaxThreads = omp_get_num_procs();

}  // namespace

BENCHMARK(BM_SampleCountsSerial)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleCountsParallel)
    ->ArgsProduct({{250, 1000}, benchmark::CreateRange(1, std::max(1, kMaxThreads), 2)})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_BlocksSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlocksParallel)
    ->RangeMultiplier(2)
    ->Range(1, std::max(1, kMaxThreads))
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_CountInertia)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_CountDense)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
