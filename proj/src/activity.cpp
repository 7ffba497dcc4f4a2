#include "wtm/activity.hpp"

#include <algorithm>
#include <cmath>

#include "wtm/common.hpp"

namespace wtm {

namespace {

// Multiplicity of the sample period in `span_s`, or -1 if not a multiple.
long long aligned_samples(double span_s, double frequency_hz) {
    const double q = span_s * frequency_hz;
    const double r = std::round(q);
    if (std::abs(q - r) > std::max(1e-9, std::abs(q) * 1e-12)) return -1;
    return static_cast<long long>(r);
}

void check_shared_grid(std::span<const SensorSeries> series_set) {
    if (series_set.empty()) throw InvalidInput("no sensor series given");
    const auto& first = series_set.front();
    for (const auto& s : series_set) {
        validate_series(s);
        if (s.sampling_frequency_hz != first.sampling_frequency_hz ||
            s.time_reference_posix_s != first.time_reference_posix_s ||
            s.values.size() != first.values.size())
            throw InvalidInput("sensor series do not share one sampling grid");
    }
}

ActivitySnapshot snapshot_at(std::span<const SensorSeries> series_set, std::size_t start_index,
                             std::size_t window_samples, double window_start,
                             double window_length_s) {
    const double period = series_set.front().sample_period_s();
    ActivitySnapshot snap;
    snap.window_start = window_start;
    snap.window_length_s = window_length_s;
    snap.sensor_count = series_set.size();

    std::vector<double> probabilities;
    double total = 0.0;
    for (const auto& s : series_set) {
        std::size_t ones = 0;
        for (std::size_t i = start_index; i < start_index + window_samples; ++i) ones += s.values[i];
        const double on = static_cast<double>(ones) * period;
        snap.on_times_s[s.sensor_id] = on;
        total += on;
    }
    if (total > 0.0) {
        for (const auto& s : series_set) {
            const double p = snap.on_times_s[s.sensor_id] / total;
            snap.probabilities[s.sensor_id] = p;
            probabilities.push_back(p);
        }
        snap.normalized_entropy = normalized_entropy(probabilities, snap.sensor_count);
    }
    return snap;
}

}  // namespace

std::map<std::string, double> window_on_times(std::span<const SensorSeries> series_set,
                                              double window_start, double window_length_s) {
    check_shared_grid(series_set);
    const auto& first = series_set.front();
    std::size_t start_index = 0;
    if (!grid_index(first, window_start, &start_index))
        throw InvalidInput("window start is not aligned to the sampling grid");
    const long long window_samples = aligned_samples(window_length_s, first.sampling_frequency_hz);
    if (window_samples < 1) throw InvalidInput("window length is not a positive grid multiple");
    if (start_index + static_cast<std::size_t>(window_samples) > first.values.size())
        throw InvalidInput("window runs past the end of the data");

    std::map<std::string, double> on_times;
    const double period = first.sample_period_s();
    for (const auto& s : series_set) {
        std::size_t ones = 0;
        for (std::size_t i = start_index; i < start_index + window_samples; ++i) ones += s.values[i];
        on_times[s.sensor_id] = static_cast<double>(ones) * period;
    }
    return on_times;
}

std::optional<std::map<std::string, double>> activity_probabilities(
    const std::map<std::string, double>& on_times) {
    double total = 0.0;
    for (const auto& [id, t] : on_times) {
        if (t < 0.0) throw InvalidInput("negative on-time for sensor " + id);
        total += t;
    }
    if (total == 0.0) return std::nullopt;
    std::map<std::string, double> probabilities;
    for (const auto& [id, t] : on_times) probabilities[id] = t / total;
    return probabilities;
}

double normalized_entropy(std::span<const double> probabilities, std::size_t outcome_count) {
    if (outcome_count < 2) throw InvalidInput("normalized_entropy: needs at least 2 outcomes");
    double sum = 0.0;
    for (const double p : probabilities) {
        if (p < 0.0 || p > 1.0) throw InvalidInput("normalized_entropy: probability out of [0,1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw InvalidInput("normalized_entropy: probabilities do not sum to 1");

    std::vector<double> sorted(probabilities.begin(), probabilities.end());
    std::sort(sorted.begin(), sorted.end());
    double h = 0.0;
    for (const double p : sorted) {
        if (p > 0.0) h -= p * std::log2(p);
    }
    const double normalized = h / std::log2(static_cast<double>(outcome_count));
    return std::clamp(normalized, 0.0, 1.0);
}

std::vector<ActivitySnapshot> entropy_stream(std::span<const SensorSeries> series_set,
                                             double window_length_s, double stride_s) {
    check_shared_grid(series_set);
    const auto& first = series_set.front();
    const long long window_samples = aligned_samples(window_length_s, first.sampling_frequency_hz);
    const long long stride_samples = aligned_samples(stride_s, first.sampling_frequency_hz);
    if (window_samples < 1) throw InvalidInput("window length is not a positive grid multiple");
    if (stride_samples < 1) throw InvalidInput("stride is not a positive grid multiple");
    if (static_cast<std::size_t>(window_samples) > first.values.size()) return {};

    const std::size_t count =
        (first.values.size() - static_cast<std::size_t>(window_samples)) /
            static_cast<std::size_t>(stride_samples) +
        1;
    std::vector<ActivitySnapshot> stream(count);
    const double t0 = static_cast<double>(first.time_reference_posix_s);
    const double period = first.sample_period_s();

#pragma omp parallel for schedule(static) if (count >= 4096)
    for (std::ptrdiff_t w = 0; w < static_cast<std::ptrdiff_t>(count); ++w) {
        const std::size_t start_index = static_cast<std::size_t>(w) * stride_samples;
        stream[w] = snapshot_at(series_set, start_index, window_samples,
                                t0 + static_cast<double>(start_index) * period, window_length_s);
    }
    return stream;
}

}  // namespace wtm
