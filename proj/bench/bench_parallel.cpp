#include "loopfilt/suite.hpp"

#include <benchmark/benchmark.h>

namespace {

void verify(benchmark::State& state, bool parallel) {
    auto d = lf::make_loop_datum('A', 2, "swap");
    lf::GradedAlgebra G(d, lf::origin(d));
    auto inv = lf::invariant_system(d.datum);
    lf::Rat r = lf::make_rat(1, 2);
    for (auto _ : state) {
        auto rep = lf::verify_basecase(G, inv, r, static_cast<int>(state.range(0)), 0, parallel);
        benchmark::DoNotOptimize(rep.strata.size());
    }
}

void BM_VerifyBasecaseSerial(benchmark::State& s) { verify(s, false); }
void BM_VerifyBasecaseParallel(benchmark::State& s) { verify(s, true); }

void criterion(benchmark::State& state, bool parallel) {
    lf::SuiteOptions o;
    o.parallel = parallel;
    for (auto _ : state) benchmark::DoNotOptimize(lf::check_alignment(o).checks);
}

void BM_AlignmentSerial(benchmark::State& s) { criterion(s, false); }
void BM_AlignmentParallel(benchmark::State& s) { criterion(s, true); }

}  // namespace

BENCHMARK(BM_VerifyBasecaseSerial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyBasecaseParallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AlignmentSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AlignmentParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
