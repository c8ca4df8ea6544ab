#include <benchmark/benchmark.h>

#include "qionss/quantize_lc.hpp"
#include "qionss/simulate.hpp"
#include "qionss/transfer_function.hpp"

using namespace qionss;
using namespace qionss::response;

namespace {

constexpr double kKappa = 44.311346272637900682;

void BM_LadderCommutator(benchmark::State& state) {
    const auto ops = lc::lc_ladder_ops({1e-9, 1e-12});
    for (auto _ : state) benchmark::DoNotOptimize(commutator(ops.a, ops.a_dag));
}
BENCHMARK(BM_LadderCommutator);

void BM_FreqSweep(benchmark::State& state) {
    const auto tf = transfer_function(openqsys::build_state_space({kKappa, 0.0}));
    const auto grid = log_grid(1.0, 1e9, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(freq_response(tf, grid));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FreqSweep)->Arg(401)->Arg(10000);

void BM_SimulateMean(benchmark::State& state) {
    const auto m = openqsys::build_state_space({kKappa, 0.0});
    const auto grid = make_grid(0.0, 1e-6, static_cast<std::size_t>(state.range(0)));
    const auto u = InputSignal::sinusoid(1.0, 300.0);
    for (auto _ : state) benchmark::DoNotOptimize(simulate_mean(m, u, grid));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateMean)->Arg(10000)->Arg(1000000);

void BM_StochasticEnsemble(benchmark::State& state) {
    const auto m = openqsys::build_state_space({kKappa, 0.0});
    const auto grid = make_grid(0.0, 1e-5, 2000);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(simulate_stochastic(m, InputSignal::vacuum(), grid, n, 1, {}, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0) * 2000);
}
BENCHMARK(BM_StochasticEnsemble)->Arg(100)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
