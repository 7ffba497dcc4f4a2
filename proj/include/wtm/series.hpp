#pragma once

#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

namespace wtm {

// Uniformly sampled binary signal with a time reference.
// Sample n covers the instant time_reference_posix_s + n / sampling_frequency_hz.
struct SensorSeries {
    std::string sensor_id;
    std::string location;
    std::vector<std::uint8_t> values;  // strictly 0/1
    double sampling_frequency_hz = 0.0;
    std::int64_t time_reference_posix_s = 0;

    double sample_period_s() const { return 1.0 / sampling_frequency_hz; }
    double timestamp_at(std::size_t n) const {
        return static_cast<double>(time_reference_posix_s) + static_cast<double>(n) / sampling_frequency_hz;
    }
};

// Throws InvalidInput unless values are all 0/1 and the frequency is positive.
void validate_series(const SensorSeries& series);

// Nearest sample index for a grid-aligned timestamp; tolerates the rounding of
// (t - t0) * fs at grid points. Returns false if t is not on the grid.
bool grid_index(const SensorSeries& series, double timestamp, std::size_t* index);

}  // namespace wtm
