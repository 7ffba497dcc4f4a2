#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wtm/series.hpp"

namespace wtm {

struct HarmonicComponent {
    double frequency_hz = 0.0;
    double amplitude = 0.0;
    double phase = 0.0;
};

// Fourier baseline: binary-state probability as a mean plus the K dominant
// harmonics of the training spectrum.
struct FremenModel {
    std::string sensor_id;
    double mean_activation = 0.0;
    std::vector<HarmonicComponent> components;  // sorted by descending amplitude
    std::int64_t time_reference_posix_s = 0;
    double binarize_cutoff = 0.5;
};

struct FremenPrediction {
    double probability = 0.0;
    int value = 0;
};

// Keeps the K strongest non-DC spectral bins. Requires series length >= 2K+1.
FremenModel fit_fremen(const SensorSeries& series, int component_count);

// p(t) = clamp(mean + sum a*cos(2*pi*f*(t - t0) + phi)); value = p >= cutoff.
FremenPrediction predict_fremen(const FremenModel& model, double t);

// JSON persistence ("<sensor>.fremen.json"); bit-exact round trip.
std::string to_json(const FremenModel& model);
FremenModel fremen_model_from_json(const std::string& text);
void save_model(const FremenModel& model, const std::filesystem::path& path);
FremenModel load_model_fremen(const std::filesystem::path& path);

}  // namespace wtm
