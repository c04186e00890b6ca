#include <benchmark/benchmark.h>

#include "qbs/qbs.hpp"

namespace {

using namespace qbs;

void BM_SimulateQsa(benchmark::State& state) {
    const auto a = static_cast<std::size_t>(state.range(0));
    std::vector<std::uint8_t> bits(std::size_t{1} << a);
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = static_cast<std::uint8_t>(i & 1U);
    const Circuit qsa = build_qsa(BitDataArray(bits));
    for (auto _ : state) benchmark::DoNotOptimize(simulate(qsa));
    state.SetLabel(std::to_string(qsa.num_qubits()) + " qubits");
}
BENCHMARK(BM_SimulateQsa)->DenseRange(2, 12, 2);

void BM_CounterBasis(benchmark::State& state) {
    const Circuit c = build_counter(CounterSpec::for_controls(static_cast<std::size_t>(state.range(0))));
    BasisState in = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_basis(c, in));
        in = (in + 1) & ((BasisState{1} << state.range(0)) - 1);
    }
}
BENCHMARK(BM_CounterBasis)->Arg(4)->Arg(8)->Arg(16)->Arg(21);

void BM_ParallelCircuit(benchmark::State& state) {
    const SampleResults s = SampleResults::count({0, 1, 1, 0}, 8);
    for (auto _ : state) benchmark::DoNotOptimize(Replicator(s, Mode::QuantumParallel));
}
BENCHMARK(BM_ParallelCircuit)->Unit(benchmark::kMillisecond);

void BM_Replicate(benchmark::State& state, Mode mode) {
    const SampleResults s = SampleResults::count({0, 1, 0, 1, 0, 1, 0, 1}, 16);
    for (auto _ : state) {
        benchmark::DoNotOptimize(replicate(s, static_cast<std::size_t>(state.range(0)), mode, 1));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK_CAPTURE(BM_Replicate, sequential, Mode::QuantumSequential)
    ->RangeMultiplier(2)
    ->Range(1000, 8000)
    ->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oN);
BENCHMARK_CAPTURE(BM_Replicate, oracle, Mode::ClassicalOracle)
    ->RangeMultiplier(2)
    ->Range(1000, 8000)
    ->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oN);

}  // namespace

BENCHMARK_MAIN();
