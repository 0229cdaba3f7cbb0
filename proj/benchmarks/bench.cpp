#include <benchmark/benchmark.h>

#include "rcts/alphabet.hpp"
#include "rcts/automata.hpp"
#include "rcts/cts.hpp"
#include "rcts/switching.hpp"
#include "rcts/translate.hpp"

namespace {

using namespace rcts;

void BM_GenSingle(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gen_single(n));
    }
}
BENCHMARK(BM_GenSingle)->Arg(2)->Arg(3)->Arg(4);

void BM_ComposedExplore(benchmark::State& state) {
    const SingleSwitchSystem sys = gen_single(static_cast<int>(state.range(0)));
    const ComposedCts composed(sys.system);
    for (auto _ : state) {
        benchmark::DoNotOptimize(composed.explore());
    }
}
BENCHMARK(BM_ComposedExplore)->Arg(2)->Arg(3);

void BM_ComposedLanguage(benchmark::State& state) {
    const SingleSwitchSystem sys = gen_single(3);
    const ComposedCts composed(sys.system);
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(composed.language_upto(k));
    }
}
BENCHMARK(BM_ComposedLanguage)->Arg(2)->Arg(3);

void BM_CtsToAa(benchmark::State& state) {
    const SingleSwitchSystem sys = gen_single(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(cts_to_aa(sys.system));
    }
}
BENCHMARK(BM_CtsToAa)->Arg(2)->Arg(3);

void BM_LexNormalForm(benchmark::State& state) {
    // Three letters with pairwise-overlapping owners plus one independent
    // pair keeps the normal form nontrivial.
    const DistributedAlphabet alpha(
        {"a", "b", "c", "d"}, {"p1", "p2", "p3"},
        {ProcessSet::of_raw(0b011), ProcessSet::of_raw(0b110), ProcessSet::of_raw(0b100),
         ProcessSet::of_raw(0b001)});
    Word w;
    for (int i = 0; i < 64; ++i) {
        w.push_back(Letter{(i * 7 + i / 5) % 4});
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(lex_normal_form(alpha, w));
    }
}
BENCHMARK(BM_LexNormalForm);

} // namespace

BENCHMARK_MAIN();
