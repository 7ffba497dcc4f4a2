#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wtm/series.hpp"

namespace wtm {

// Per-window activity summary. probabilities is empty when no sensor was
// active in the window (the no-activity case, entropy 0).
struct ActivitySnapshot {
    double window_start = 0.0;
    double window_length_s = 0.0;
    std::map<std::string, double> on_times_s;
    std::map<std::string, double> probabilities;
    double normalized_entropy = 0.0;
    std::size_t sensor_count = 0;
};

// Seconds each sensor was on inside [window_start, window_start + length).
// All series must share one sampling grid and the window must align to it.
std::map<std::string, double> window_on_times(std::span<const SensorSeries> series_set,
                                              double window_start, double window_length_s);

// P(s_i) = T(s_i) / sum_j T(s_j); nullopt when the total on-time is zero.
std::optional<std::map<std::string, double>> activity_probabilities(
    const std::map<std::string, double>& on_times);

// H / log2(R) with 0*log2(0) = 0. Probabilities must sum to 1 (1e-9) and
// R >= 2. The sum is evaluated over the sorted value multiset so the result
// is exactly permutation invariant.
double normalized_entropy(std::span<const double> probabilities, std::size_t outcome_count);

// One snapshot per stride over the shared grid; windows that would run past
// the end of the data are not emitted.
std::vector<ActivitySnapshot> entropy_stream(std::span<const SensorSeries> series_set,
                                             double window_length_s, double stride_s);

}  // namespace wtm
