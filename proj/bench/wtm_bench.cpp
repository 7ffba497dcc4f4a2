// Benchmarks comparing the OpenMP kernels in src/ against the serial
// reference implementations kept for testing.
//
//   ./bench/wtm_bench [--benchmark_filter=...]

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "../tests/reference.hpp"
#include "wtm/activity.hpp"
#include "wtm/inference.hpp"
#include "wtm/model.hpp"
#include "wtm/wavelet.hpp"

namespace {

std::vector<double> random_signal(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> x(n);
    for (auto& v : x) v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return x;
}

std::vector<wtm::SensorSeries> random_house(std::size_t sensors, std::size_t n) {
    std::mt19937_64 rng(99);
    std::vector<wtm::SensorSeries> set;
    for (std::size_t s = 0; s < sensors; ++s) {
        wtm::SensorSeries series;
        series.sensor_id = "sensor" + std::to_string(s);
        series.sampling_frequency_hz = 1.0 / 30.0;
        series.time_reference_posix_s = 1599955200;
        series.values.resize(n);
        for (auto& v : series.values) v = (rng() % 8) == 0;
        set.push_back(std::move(series));
    }
    return set;
}

void dwt_kernel(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = random_signal(n, 1);
    const auto& spec = wtm::find_wavelet("rbio3.1");
    for (auto _ : state) {
        auto coeffs = wtm::dwt(x, spec, 1);
        benchmark::DoNotOptimize(coeffs.averaging.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void dwt_reference(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = random_signal(n, 1);
    const auto& spec = wtm::find_wavelet("rbio3.1");
    for (auto _ : state) {
        auto coeffs = wtm::reference::dwt_direct(x, spec, 1);
        benchmark::DoNotOptimize(coeffs.averaging.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void idwt_kernel(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto& spec = wtm::find_wavelet("rbio3.1");
    const auto coeffs = wtm::dwt(random_signal(n, 2), spec, 1);
    for (auto _ : state) {
        auto back = wtm::idwt(coeffs, spec);
        benchmark::DoNotOptimize(back.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void idwt_reference(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto& spec = wtm::find_wavelet("rbio3.1");
    const auto coeffs = wtm::reference::dwt_direct(random_signal(n, 2), spec, 1);
    for (auto _ : state) {
        auto back = wtm::reference::idwt_direct(coeffs, spec);
        benchmark::DoNotOptimize(back.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void entropy_stream_kernel(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto house = random_house(6, n);
    for (auto _ : state) {
        auto stream = wtm::entropy_stream(house, 120.0, 30.0);
        benchmark::DoNotOptimize(stream.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void entropy_stream_reference(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto house = random_house(6, n);
    const double t0 = 1599955200.0;
    for (auto _ : state) {
        std::vector<wtm::ActivitySnapshot> stream;
        for (std::size_t i = 0; i + 4 <= n; ++i)
            stream.push_back(wtm::reference::snapshot_direct(
                house, t0 + 30.0 * static_cast<double>(i), 120.0));
        benchmark::DoNotOptimize(stream.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void lof_kernel(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(5);
    std::vector<std::vector<double>> points(n);
    for (auto& p : points)
        p = {static_cast<double>(rng() >> 11) * 0x1.0p-53,
             static_cast<double>(rng() >> 11) * 0x1.0p-53};
    for (auto _ : state) {
        auto scores = wtm::lof_scores(points, 20);
        benchmark::DoNotOptimize(scores.data());
    }
}

void lof_reference(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(5);
    std::vector<std::vector<double>> points(n);
    for (auto& p : points)
        p = {static_cast<double>(rng() >> 11) * 0x1.0p-53,
             static_cast<double>(rng() >> 11) * 0x1.0p-53};
    for (auto _ : state) {
        auto scores = wtm::reference::lof_scores_direct(points, 20);
        benchmark::DoNotOptimize(scores.data());
    }
}

void hmln_inference(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(3);
    std::vector<wtm::EvidencePoint> evidence(n);
    for (std::size_t i = 0; i < n; ++i) {
        evidence[i].timestamp = 1599955200.0 + 30.0 * static_cast<double>(i);
        evidence[i].entropy_real = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        evidence[i].entropy_expected = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        evidence[i].sensors.door_open_durations_s["door"] = static_cast<double>(rng() % 600);
        evidence[i].sensors.motion_active["motion"] = (rng() & 1) != 0;
        evidence[i].sensors.in_rest_interval = (rng() & 3) == 0;
    }
    const wtm::RuleConfig rules;
    for (auto _ : state) {
        auto run = wtm::detect_hmln(evidence, rules, true);
        benchmark::DoNotOptimize(run.flags.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

}  // namespace

BENCHMARK(dwt_kernel)->Arg(1 << 13)->Arg(1 << 17);
BENCHMARK(dwt_reference)->Arg(1 << 13)->Arg(1 << 17);
BENCHMARK(idwt_kernel)->Arg(1 << 13)->Arg(1 << 17);
BENCHMARK(idwt_reference)->Arg(1 << 13)->Arg(1 << 17);
BENCHMARK(entropy_stream_kernel)->Arg(1 << 12);
BENCHMARK(entropy_stream_reference)->Arg(1 << 12);
BENCHMARK(lof_kernel)->Arg(1000);
BENCHMARK(lof_reference)->Arg(1000);
BENCHMARK(hmln_inference)->Arg(1 << 12);

BENCHMARK_MAIN();
