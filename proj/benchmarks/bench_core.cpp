#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "hilberg/codes.hpp"
#include "hilberg/measures.hpp"
#include "hilberg/pmi.hpp"
#include "hilberg/process.hpp"
#include "hilberg/rng.hpp"
#include "hilberg/sampling.hpp"
#include "hilberg/zeta.hpp"

namespace {

using namespace hilberg;

void bm_zeta(benchmark::State& state) {
    double s = 1.0 + 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(zeta(s).value);
}
BENCHMARK(bm_zeta)->Arg(2)->Arg(4)->Arg(100);

void bm_zipf_sample(benchmark::State& state) {
    ZipfSampler sampler(static_cast<double>(state.range(0)) / 100.0);
    RngStream rng(7);
    for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(rng));
}
BENCHMARK(bm_zipf_sample)->Arg(25)->Arg(50)->Arg(75);

void bm_sample_window_santa_fe(benchmark::State& state) {
    ProcessSpec spec = ProcessSpec::santa_fe(0.5);
    RngStream rng(11);
    std::size_t n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sample_window(spec, n, rng).left.size());
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(2 * n));
}
BENCHMARK(bm_sample_window_santa_fe)->Arg(1 << 8)->Arg(1 << 12);

void bm_pmi_exact_santa_fe(benchmark::State& state) {
    ProcessSpec spec = ProcessSpec::santa_fe(0.5);
    RngStream rng(13);
    Window w = sample_window(spec, static_cast<std::size_t>(state.range(0)), rng);
    for (auto _ : state) benchmark::DoNotOptimize(pmi_exact(w, spec).value);
}
BENCHMARK(bm_pmi_exact_santa_fe)->Arg(1 << 8)->Arg(1 << 12);

void bm_pmi_mixture_closed_form(benchmark::State& state) {
    std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(pmi_mixture_closed_form(n / 3, n / 2, n));
}
BENCHMARK(bm_pmi_mixture_closed_form)->Arg(1 << 8)->Arg(1 << 12);

void bm_expected_mi_mixture(benchmark::State& state) {
    std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(expected_mi_mixture(n));
}
BENCHMARK(bm_expected_mi_mixture)->Arg(1 << 8)->Arg(1 << 12);

void bm_expected_mi_santa_fe(benchmark::State& state) {
    ProcessSpec spec = ProcessSpec::santa_fe(0.5);
    std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(expected_mi_santa_fe(spec, n, 1e-8));
}
BENCHMARK(bm_expected_mi_santa_fe)->Arg(1 << 10)->Arg(1 << 16)->Arg(1 << 20);

void bm_lz78_encode_bits(benchmark::State& state) {
    RngStream rng(17);
    std::vector<std::uint32_t> bits(static_cast<std::size_t>(state.range(0)));
    for (std::uint32_t& b : bits) b = rng.next_bit() ? 1u : 0u;
    for (auto _ : state) benchmark::DoNotOptimize(lz78_length(bits, 2).bits);
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(bm_lz78_encode_bits)->Arg(1 << 12)->Arg(1 << 16);

} // namespace

BENCHMARK_MAIN();
