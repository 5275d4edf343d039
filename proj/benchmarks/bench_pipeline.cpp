#include "starkcheck/pipeline.hpp"
#include "starkcheck/splaces.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace starkcheck;

namespace {

const char* kNames[] = {"sqrt10", "sqrt3", "sqrt42"};

FieldBundle load(int i) { return parse_bundle_text(*fixture_text(kNames[i])); }

void BM_Pipeline(benchmark::State& state) {
    FieldBundle b = load(static_cast<int>(state.range(0)));
    PipelineConfig cfg;
    cfg.precision_bits = state.range(1);
    for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(b, cfg));
    state.SetLabel(kNames[state.range(0)]);
}
BENCHMARK(BM_Pipeline)->ArgsProduct({{0, 1, 2}, {128, 256}})->Unit(benchmark::kMillisecond);

void BM_ParseBundle(benchmark::State& state) {
    std::string text = *fixture_text(kNames[state.range(0)]);
    for (auto _ : state) benchmark::DoNotOptimize(parse_bundle_text(text));
    state.SetLabel(kNames[state.range(0)]);
}
BENCHMARK(BM_ParseBundle)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

void BM_ArtinSearch(benchmark::State& state) {
    PrecisionScope ps(128);
    FieldBundle b = load(1);
    PlaceSet P = b.places;
    refine_roots(P, b.field->poly(), 160);
    SUnitLattice L(b.group, P, b.lattice);
    ArtinOptions opt = b.artin;
    opt.betas.reset();
    for (auto _ : state) benchmark::DoNotOptimize(build_artin_system(L, opt));
}
BENCHMARK(BM_ArtinSearch)->Unit(benchmark::kMillisecond);

void BM_SmithNormalForm(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long> d(-50, 50);
    IntMatrix A(n, n);
    for (auto& x : A.a) x = d(rng);
    for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(A));
}
BENCHMARK(BM_SmithNormalForm)->RangeMultiplier(2)->Range(4, 32);

void BM_Recognize(benchmark::State& state) {
    PrecisionScope ps(128);
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<long> den(1, 1000000), num(-1000000000, 1000000000);
    std::vector<Real> xs;
    for (int i = 0; i < 256; ++i) xs.emplace_back(mpq_class(num(rng), den(rng)));
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(recognize_rational(xs[i++ % xs.size()], 1000000, 128));
}
BENCHMARK(BM_Recognize);

}  // namespace

BENCHMARK_MAIN();
