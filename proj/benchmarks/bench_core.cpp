#include <benchmark/benchmark.h>

#include "regioncert/certificates.hpp"
#include "regioncert/grid.hpp"
#include "regioncert/linalg.hpp"
#include "regioncert/output_scan.hpp"
#include "regioncert/synthesis.hpp"

using namespace regioncert;

namespace {

Matrix random_square(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = rng.uniform(-1, 1);
    return m;
}

Network bench_net(std::size_t d) {
    Rng rng(7);
    return gen_random({d, 3, 3, 2}, Activation::tanh(), rng);
}

}  // namespace

static void BM_Rank(benchmark::State& state) {
    const Matrix m = random_square(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(rank(m, 1e-9));
}
BENCHMARK(BM_Rank)->RangeMultiplier(2)->Range(4, 64);

static void BM_Invert(benchmark::State& state) {
    const Matrix m = random_square(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(try_invert(m, 1e-12));
}
BENCHMARK(BM_Invert)->RangeMultiplier(2)->Range(4, 64);

static void BM_ExhaustiveSplit(benchmark::State& state) {
    Rng rng(3);
    Matrix m(3, static_cast<std::size_t>(state.range(0)));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rng.uniform(-1, 1);
    for (auto _ : state) benchmark::DoNotOptimize(column_split_exhaustive(m, 1e-9));
}
BENCHMARK(BM_ExhaustiveSplit)->Arg(4)->Arg(8)->Arg(12);

static void BM_CertifyAll(benchmark::State& state) {
    SynthSpec spec;
    spec.widths = {6, 5, 4, 3, 2};
    spec.activation = Activation::sigmoid();
    spec.target_theorem = TheoremId::Bounded;
    spec.seed = 4;
    const Network net = gen_certified(spec);
    CertifyOptions opts;
    if (state.range(0)) opts.split = SplitMode::exhaustive();
    for (auto _ : state) benchmark::DoNotOptimize(certify_all(net, opts));
}
BENCHMARK(BM_CertifyAll)->Arg(0)->Arg(1);

static void BM_GridScan2D(benchmark::State& state) {
    const Network net = bench_net(2);
    const GridSpec spec = GridSpec::cube(2, -4, 4, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(grid_scan(net, spec, ScanOptions{0.0, 1}));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(spec.cell_count()));
}
BENCHMARK(BM_GridScan2D)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_GridScan3D(benchmark::State& state) {
    const Network net = bench_net(3);
    const GridSpec spec = GridSpec::cube(3, -4, 4, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(grid_scan(net, spec, ScanOptions{0.0, 1}));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(spec.cell_count()));
}
BENCHMARK(BM_GridScan3D)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_LabelComponents(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Rng rng(5);
    std::vector<std::int32_t> labels(n * n);
    for (auto& l : labels) l = static_cast<std::int32_t>(rng.uniform_index(3)) - 1;
    const GridSpec spec = GridSpec::cube(2, 0, 1, n);
    for (auto _ : state) benchmark::DoNotOptimize(label_components(spec, 2, labels));
}
BENCHMARK(BM_LabelComponents)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_OutputSpaceScan(benchmark::State& state) {
    const Network net = bench_net(2);
    const GridSpec spec = GridSpec::cube(2, -4, 4, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(output_space_scan(net, spec, 0, {0, 1}));
}
BENCHMARK(BM_OutputSpaceScan)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
