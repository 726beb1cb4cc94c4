// Benchmarks the loss/gradient kernels: serial reference vs the blocked
// OpenMP path, over a realistically sized synthetic season.

#include <benchmark/benchmark.h>

#include "parkfit/fit.hpp"
#include "parkfit/kernels.hpp"
#include "parkfit/synth.hpp"

namespace {

using namespace parkfit;

struct BenchData {
    PaTriples pas;
    std::vector<double> b, d, r;
};

const BenchData& bench_data() {
    static const BenchData data = [] {
        SyntheticSpec spec;
        spec.n_teams = 30;
        spec.n_parks = 30;
        spec.rng_seed = 2718281828ULL;

        ParameterSet planted;
        planted.event = EventClass::HomeRun;
        SplitMix64 rng{mix64(spec.rng_seed)};
        for (int t = 0; t < spec.n_teams; ++t) {
            planted.b.push_back(rng.next_double() * 0.6 - 0.3);
            planted.d.push_back(rng.next_double() * 0.6 - 0.3);
        }
        for (int k = 0; k < spec.n_parks; ++k)
            planted.r.push_back(rng.next_double() * 0.6 - 0.3);
        spec.params.emplace(EventClass::HomeRun, planted);
        spec.schedule = mlb_like_schedule(spec.n_teams, 76);

        SynthResult result = generate(spec);
        BenchData out;
        out.pas = make_triples(result.dataset, EventClass::HomeRun);
        SplitMix64 prng{mix64(7)};
        for (int t = 0; t < spec.n_teams; ++t) {
            out.b.push_back(prng.next_double() - 0.5);
            out.d.push_back(prng.next_double() - 0.5);
        }
        for (int k = 0; k < spec.n_parks; ++k)
            out.r.push_back(prng.next_double() - 0.5);
        return out;
    }();
    return data;
}

void BM_AccumulateSerial(benchmark::State& state) {
    const BenchData& data = bench_data();
    ParamView view{data.b, data.d, data.r};
    for (auto _ : state) {
        Accumulation acc = accumulate_serial(view, data.pas);
        benchmark::DoNotOptimize(acc.loss);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(data.pas.size()));
}

void BM_AccumulateBlocked(benchmark::State& state) {
    const BenchData& data = bench_data();
    ParamView view{data.b, data.d, data.r};
    for (auto _ : state) {
        Accumulation acc = accumulate_blocked(view, data.pas);
        benchmark::DoNotOptimize(acc.loss);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(data.pas.size()));
}

BENCHMARK(BM_AccumulateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AccumulateBlocked)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
