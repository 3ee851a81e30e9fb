#include <benchmark/benchmark.h>

#include <unistd.h>

#include <filesystem>
#include <random>

#include "acband/acband.hpp"
#include "acband/cse.hpp"
#include "acband/hyperband.hpp"
#include "acband/hyperband_plan.hpp"
#include "acband/synthetic.hpp"

using namespace acband;

namespace {

RuntimeMatrix heavy(std::size_t n, std::size_t m) {
    HeavyTailSpec spec;
    spec.n_configs = n;
    spec.n_instances = m;
    spec.seed = 1;
    return generate_heavy_tailed_matrix(spec);
}

std::vector<ConfigId> first_configs(std::size_t n) {
    std::vector<ConfigId> out;
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(static_cast<std::uint32_t>(i));
    return out;
}

void BM_EvaluateGroup(benchmark::State& state) {
    const RuntimeMatrix m = heavy(64, 1024);
    const std::vector<ConfigId> group = first_configs(static_cast<std::size_t>(state.range(0)));
    SeededRng rng(3);
    std::uint32_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_group(m, group, InstanceId(i), rng));
        i = (i + 1) % 1024;
    }
}
BENCHMARK(BM_EvaluateGroup)->Arg(2)->Arg(4)->Arg(16);

void BM_Cse(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const RuntimeMatrix m = heavy(n, 20000);
    const MatrixOracle oracle(m);
    const std::vector<ConfigId> configs = first_configs(n);
    std::vector<InstanceId> instances;
    for (std::uint32_t i = 0; i < 20000; ++i) instances.emplace_back(i);
    for (auto _ : state) {
        RunContext ctx(m.n_instances());
        SeededRng rng(7);
        benchmark::DoNotOptimize(run_cse(configs, instances, CseOptions{2, 1.0, StatisticKind::WinFrequency}, oracle, rng, ctx));
    }
}
BENCHMARK(BM_Cse)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_AcbandRun(benchmark::State& state) {
    const RuntimeMatrix m = heavy(500, 20000);
    const MatrixOracle oracle(m);
    ACBandParams p;
    p.k = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_acband(p, oracle));
}
BENCHMARK(BM_AcbandRun)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_HyperbandPlan(benchmark::State& state) {
    HyperbandParams p;
    p.eta = static_cast<int>(state.range(0));
    p.n_max = 625;
    p.budget = 100000;
    for (auto _ : state) benchmark::DoNotOptimize(hb_plan(p));
}
BENCHMARK(BM_HyperbandPlan)->Arg(3)->Arg(5);

void BM_LoadMatrix(benchmark::State& state) {
    const auto format = state.range(0) == 0 ? MatrixFormat::Csv : MatrixFormat::Binary;
    const auto path = std::filesystem::temp_directory_path() /
                      ("acband_bench_" + std::to_string(::getpid()) + (format == MatrixFormat::Csv ? ".csv" : ".acbm"));
    save_runtime_matrix(heavy(200, 2000), path, format);
    for (auto _ : state) benchmark::DoNotOptimize(load_runtime_matrix(path, format));
    std::filesystem::remove(path);
    state.SetLabel(format == MatrixFormat::Csv ? "csv" : "binary");
}
BENCHMARK(BM_LoadMatrix)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
