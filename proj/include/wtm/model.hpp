#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "wtm/series.hpp"
#include "wtm/wavelet.hpp"

namespace wtm {

// One kept coefficient. level 0 is the averaging band, 1..Q are detail
// levels (1 = finest).
struct CoefficientEntry {
    int level = 0;
    std::size_t shift = 0;
    double value = 0.0;
};

// Sparse kept set: entries sorted by (level, shift), magnitudes >= tau.
struct ThresholdResult {
    std::vector<CoefficientEntry> kept;
    std::size_t kept_count = 0;
};

// Keeps coefficients with |value| >= tau (inclusive). tau must be >= 0.
ThresholdResult threshold_coefficients(const CoefficientSet& coeffs, double tau);

struct Forecast {
    std::size_t index = 0;
    int value = 0;
};

// Persisted periodic sensor model. The signal is treated as one period of
// period_samples samples starting at time_reference_posix_s; the transform
// ran on padded_samples (>= period_samples, multiple of 2^levels).
class WaveletModel {
public:
    std::string sensor_id;
    std::vector<CoefficientEntry> kept_coefficients;
    std::string wavelet_name;
    int levels = 1;
    double threshold = 0.0;
    std::size_t period_samples = 0;
    std::size_t padded_samples = 0;
    double sampling_frequency_hz = 0.0;
    std::int64_t time_reference_posix_s = 0;
    double binarize_cutoff = 0.5;

    // build diagnostics
    std::size_t kept_count = 0;
    double training_rmse = 0.0;

    double period_seconds() const {
        return static_cast<double>(period_samples) / sampling_frequency_hz;
    }

    // Densify, inverse-transform, binarize; memoized after the first call.
    const std::vector<std::uint8_t>& reconstruction() const;

private:
    struct Cache {
        std::once_flag once;
        std::vector<std::uint8_t> binary;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

WaveletModel build_model(const SensorSeries& series, const std::string& wavelet_name,
                         int levels, double tau);

// Fresh (non-memoized) reconstruction of the model period.
std::vector<std::uint8_t> reconstruct(const WaveletModel& model);

// n_i = ceil((t_f - t0) * f_s) mod N; value = reconstruction()[n_i].
Forecast forecast(const WaveletModel& model, double t_f);

// One forecast per sample period from t_start to t_end inclusive.
SensorSeries forecast_window(const WaveletModel& model, double t_start, double t_end);

// Largest tau (over the distinct coefficient magnitudes) whose binarized
// reconstruction still equals the training signal exactly.
double find_lossless_tau(const SensorSeries& series, const std::string& wavelet_name, int levels);

// JSON persistence ("<sensor>.wmodel.json"); bit-exact round trip.
std::string to_json(const WaveletModel& model);
WaveletModel wavelet_model_from_json(const std::string& text);
void save_model(const WaveletModel& model, const std::filesystem::path& path);
WaveletModel load_model(const std::filesystem::path& path);

}  // namespace wtm
