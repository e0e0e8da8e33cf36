#include <benchmark/benchmark.h>

#include "resil/composition.hpp"
#include "resil/failure_sim.hpp"
#include "resil/pattern_models.hpp"

using namespace resil;

static void BM_NVersionExclusiveSuccess(benchmark::State& state)
{
    std::vector<Probability> p(static_cast<std::size_t>(state.range(0)), Probability::exact(0.9));
    for (auto _ : state)
        benchmark::DoNotOptimize(nversion_exclusive_success(p));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NVersionExclusiveSuccess)->RangeMultiplier(4)->Range(2, 1024)->Complexity();

static void BM_EvaluateSystem(benchmark::State& state)
{
    SystemModel s;
    s.event_model = EventModel(1000);
    s.components.push_back({"fab", ReconfigurationParams{0.5, 2, 0.0, {}}, 1.0});
    s.components.push_back({"rep", RedundancyParams{100, 0.8, 2, RedundancyMode::Space, 2, 1000}, 0.8});
    CheckpointParams ck;
    ck.regular_time = 100;
    ck.checkpoint_cost = 2;
    ck.checkpoint_rate = 0.5;
    ck.recovery_cost = 6;
    ck.event_model = EventModel(1000);
    s.components.push_back({"ck", RollbackPattern{ck}, 1.0});
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_system(s, 50.0));
}
BENCHMARK(BM_EvaluateSystem);

static SimScenario checkpoint_scenario()
{
    SimScenario s;
    s.work = 1000;
    s.fault_mtti = 500;
    s.max_sim_time = 1e7;
    s.policy = CheckpointPolicy{10, 0.5, 5};
    return s;
}

static void BM_RunTrialCheckpoint(benchmark::State& state)
{
    const SimScenario s = checkpoint_scenario();
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_trial(s, seed++));
}
BENCHMARK(BM_RunTrialCheckpoint);

static void BM_RunTrialReplication(benchmark::State& state)
{
    SimScenario s;
    s.work = 100;
    s.fault_mtti = 1000;
    s.policy = ReplicationPolicy{static_cast<int>(state.range(0)), RedundancyMode::Space, 1, 0.0};
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_trial(s, seed++));
}
BENCHMARK(BM_RunTrialReplication)->Arg(2)->Arg(8)->Arg(64);

static void BM_RunEnsemble(benchmark::State& state)
{
    const SimScenario s = checkpoint_scenario();
    for (auto _ : state)
        benchmark::DoNotOptimize(run_ensemble(s, 10000, 42, static_cast<unsigned>(state.range(0))));
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_RunEnsemble)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
