#include "wtm/series.hpp"

#include <cmath>

#include "wtm/common.hpp"

namespace wtm {

void validate_series(const SensorSeries& series) {
    if (!(series.sampling_frequency_hz > 0.0))
        throw InvalidInput("series " + series.sensor_id + ": sampling frequency must be positive");
    for (const auto v : series.values) {
        if (v > 1) throw InvalidInput("series " + series.sensor_id + ": values must be 0/1");
    }
}

bool grid_index(const SensorSeries& series, double timestamp, std::size_t* index) {
    const double q = (timestamp - static_cast<double>(series.time_reference_posix_s)) *
                     series.sampling_frequency_hz;
    const double snapped = std::round(q);
    const double tol = std::max(1e-9, std::abs(q) * 1e-12);
    if (std::abs(q - snapped) > tol) return false;
    if (snapped < 0.0 || snapped >= static_cast<double>(series.values.size())) return false;
    *index = static_cast<std::size_t>(snapped);
    return true;
}

}  // namespace wtm
