#include <benchmark/benchmark.h>

#include "hyperfade/irs_link.hpp"
#include "hyperfade/solver.hpp"

using namespace hyperfade;

namespace {

const cascade::CascadePair& ridge_pair() {
    static const auto pair = solver::equal_channel_params(0.25);
    return pair;
}

void BM_Quantile(benchmark::State& state) {
    const auto p = ipl::make_ipl(0.25, 2.0, 1.0);
    double u = 0.0;
    for (auto _ : state) {
        u += 1e-7;
        if (u >= 1.0) u = 1e-7;
        benchmark::DoNotOptimize(ipl::quantile(p, u));
    }
}
BENCHMARK(BM_Quantile);

void BM_SampleSum(benchmark::State& state) {
    const auto model = irslink::make_model(ridge_pair(), int(state.range(0)), 1.0);
    for (auto _ : state) {
        auto draws = irslink::sample_sum(model, {1, 0}, 1024);
        benchmark::DoNotOptimize(draws.data());
    }
    state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_SampleSum)->Arg(1)->Arg(4)->Arg(16);

void BM_ProductPdfDirect(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(cascade::product_pdf_direct(ridge_pair(), 1.0));
}
BENCHMARK(BM_ProductPdfDirect);

void BM_ProductPdfFoxH(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(cascade::product_pdf_foxh(ridge_pair(), 1.0));
}
BENCHMARK(BM_ProductPdfFoxH);

void BM_SumLawBuild(benchmark::State& state) {
    for (auto _ : state) {
        irslink::SumDistribution law(ridge_pair(), int(state.range(0)));
        benchmark::DoNotOptimize(law.frequency_cut());
    }
}
BENCHMARK(BM_SumLawBuild)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SumLawCdf(benchmark::State& state) {
    static const irslink::SumDistribution law(ridge_pair(), 4);
    double h = 0.1;
    for (auto _ : state) {
        h = (h > 8.0) ? 0.1 : h + 0.01;
        benchmark::DoNotOptimize(law.cdf(h));
    }
}
BENCHMARK(BM_SumLawCdf);

void BM_SolveEqualChannel(benchmark::State& state) {
    double a0 = 0.001;
    for (auto _ : state) {
        a0 = (a0 > 0.315) ? 0.001 : a0 + 1e-4;
        benchmark::DoNotOptimize(solver::solve_equal_channel(a0));
    }
}
BENCHMARK(BM_SolveEqualChannel);

}  // namespace

BENCHMARK_MAIN();
