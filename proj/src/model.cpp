#include "wtm/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "wtm/common.hpp"
#include "wtm/io.hpp"

namespace wtm {

namespace {

using ordered_json = nlohmann::ordered_json;

std::size_t round_up(std::size_t n, std::size_t multiple) {
    return (n + multiple - 1) / multiple * multiple;
}

// Transform length: original length padded to a multiple of 2^levels, and
// long enough that `levels` stays within the maximum decomposition level.
std::size_t padded_length(std::size_t n, int levels, std::size_t filter_length) {
    const std::size_t block = std::size_t{1} << levels;
    const std::size_t min_len = ((std::size_t{1} << levels) - 1) * (filter_length - 1);
    return std::max(round_up(std::max<std::size_t>(n, 2), block), round_up(min_len, block));
}

std::vector<double> padded_signal(const SensorSeries& series, std::size_t padded) {
    std::vector<double> x(padded, 0.0);
    for (std::size_t i = 0; i < series.values.size(); ++i) x[i] = series.values[i];
    return x;
}

CoefficientSet densify(const WaveletModel& model) {
    CoefficientSet coeffs;
    coeffs.original_length = model.padded_samples;
    coeffs.averaging.assign(model.padded_samples >> model.levels, 0.0);
    coeffs.details.resize(model.levels);
    for (int j = 1; j <= model.levels; ++j)
        coeffs.details[j - 1].assign(model.padded_samples >> j, 0.0);
    for (const auto& entry : model.kept_coefficients) {
        if (entry.level < 0 || entry.level > model.levels)
            throw InvalidInput("model " + model.sensor_id + ": coefficient level out of range");
        auto& band = entry.level == 0 ? coeffs.averaging : coeffs.details[entry.level - 1];
        if (entry.shift >= band.size())
            throw InvalidInput("model " + model.sensor_id + ": coefficient shift out of range");
        band[entry.shift] = entry.value;
    }
    return coeffs;
}

std::vector<std::uint8_t> binarize(std::span<const double> real, std::size_t n, double cutoff) {
    std::vector<std::uint8_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = real[i] >= cutoff ? 1 : 0;
    return out;
}

double binary_rmse(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < a.size(); ++i) mismatches += a[i] != b[i];
    if (mismatches == 0) return 0.0;
    return std::sqrt(static_cast<double>(mismatches) / static_cast<double>(a.size()));
}

// ceil with a snap tolerance so grid-aligned products that land a hair above
// an integer do not spill into the next sample.
double snapped_ceil(double q) {
    const double r = std::round(q);
    const double tol = std::max(1e-9, std::abs(q) * 1e-12);
    return std::abs(q - r) <= tol ? r : std::ceil(q);
}

}  // namespace

ThresholdResult threshold_coefficients(const CoefficientSet& coeffs, double tau) {
    if (tau < 0.0) throw InvalidInput("threshold_coefficients: negative threshold");
    ThresholdResult result;
    for (std::size_t k = 0; k < coeffs.averaging.size(); ++k) {
        if (std::abs(coeffs.averaging[k]) >= tau)
            result.kept.push_back({0, k, coeffs.averaging[k]});
    }
    for (int j = 1; j <= coeffs.level_count(); ++j) {
        const auto& band = coeffs.details[j - 1];
        for (std::size_t k = 0; k < band.size(); ++k) {
            if (std::abs(band[k]) >= tau) result.kept.push_back({j, k, band[k]});
        }
    }
    result.kept_count = result.kept.size();
    return result;
}

WaveletModel build_model(const SensorSeries& series, const std::string& wavelet_name,
                         int levels, double tau) {
    validate_series(series);
    if (series.values.empty()) throw InvalidInput("build_model: empty series");
    const WaveletSpec& wavelet = find_wavelet(wavelet_name);

    WaveletModel model;
    model.sensor_id = series.sensor_id;
    model.wavelet_name = wavelet_name;
    model.levels = levels;
    model.threshold = tau;
    model.period_samples = series.values.size();
    model.padded_samples = padded_length(series.values.size(), levels, wavelet.filter_length());
    model.sampling_frequency_hz = series.sampling_frequency_hz;
    model.time_reference_posix_s = series.time_reference_posix_s;

    const CoefficientSet coeffs = dwt(padded_signal(series, model.padded_samples), wavelet, levels);
    ThresholdResult thresholded = threshold_coefficients(coeffs, tau);
    model.kept_coefficients = std::move(thresholded.kept);
    model.kept_count = thresholded.kept_count;
    model.training_rmse = binary_rmse(reconstruct(model), series.values);
    return model;
}

std::vector<std::uint8_t> reconstruct(const WaveletModel& model) {
    const WaveletSpec& wavelet = find_wavelet(model.wavelet_name);
    if (model.padded_samples == 0 || model.period_samples == 0 ||
        model.period_samples > model.padded_samples ||
        model.padded_samples % (std::size_t{1} << model.levels) != 0)
        throw InvalidInput("model " + model.sensor_id + ": inconsistent sample layout");
    const std::vector<double> real = idwt(densify(model), wavelet);
    return binarize(real, model.period_samples, model.binarize_cutoff);
}

const std::vector<std::uint8_t>& WaveletModel::reconstruction() const {
    std::call_once(cache_->once, [this] { cache_->binary = reconstruct(*this); });
    return cache_->binary;
}

Forecast forecast(const WaveletModel& model, double t_f) {
    const double q = (t_f - static_cast<double>(model.time_reference_posix_s)) *
                     model.sampling_frequency_hz;
    const auto n = static_cast<long long>(model.period_samples);
    long long index = static_cast<long long>(snapped_ceil(q)) % n;
    if (index < 0) index += n;
    const auto& recon = model.reconstruction();
    return {static_cast<std::size_t>(index), recon[static_cast<std::size_t>(index)]};
}

SensorSeries forecast_window(const WaveletModel& model, double t_start, double t_end) {
    if (t_end < t_start) throw InvalidInput("forecast_window: t_end before t_start");
    if (std::abs(t_start - std::round(t_start)) > 1e-6)
        throw InvalidInput("forecast_window: window start must be whole seconds");
    const auto count =
        static_cast<std::size_t>(std::floor(snapped_ceil((t_end - t_start) * model.sampling_frequency_hz))) + 1;

    SensorSeries out;
    out.sensor_id = model.sensor_id;
    out.sampling_frequency_hz = model.sampling_frequency_hz;
    out.time_reference_posix_s = static_cast<std::int64_t>(std::llround(t_start));
    out.values.resize(count);

    model.reconstruction();  // materialize once before the parallel loop
    const double t0 = static_cast<double>(out.time_reference_posix_s);
#pragma omp parallel for schedule(static) if (count >= 16384)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
        const double t = t0 + static_cast<double>(i) / model.sampling_frequency_hz;
        out.values[i] = static_cast<std::uint8_t>(forecast(model, t).value);
    }
    return out;
}

double find_lossless_tau(const SensorSeries& series, const std::string& wavelet_name, int levels) {
    validate_series(series);
    if (series.values.empty()) throw InvalidInput("find_lossless_tau: empty series");
    const WaveletSpec& wavelet = find_wavelet(wavelet_name);
    const std::size_t padded = padded_length(series.values.size(), levels, wavelet.filter_length());
    const CoefficientSet coeffs = dwt(padded_signal(series, padded), wavelet, levels);

    std::set<double> magnitudes;
    for (const double v : coeffs.averaging)
        if (v != 0.0) magnitudes.insert(std::abs(v));
    for (const auto& band : coeffs.details)
        for (const double v : band)
            if (v != 0.0) magnitudes.insert(std::abs(v));
    if (magnitudes.empty()) return 0.0;  // all-zero signal: any threshold is lossless

    // Binary inputs produce few distinct magnitudes, so a descending scan
    // with a full reconstruction per probe stays cheap.
    WaveletModel probe;
    probe.sensor_id = series.sensor_id;
    probe.wavelet_name = wavelet_name;
    probe.levels = levels;
    probe.period_samples = series.values.size();
    probe.padded_samples = padded;
    probe.sampling_frequency_hz = series.sampling_frequency_hz;
    probe.time_reference_posix_s = series.time_reference_posix_s;
    for (auto it = magnitudes.rbegin(); it != magnitudes.rend(); ++it) {
        const double tau = *it;
        ThresholdResult kept = threshold_coefficients(coeffs, tau);
        probe.kept_coefficients = std::move(kept.kept);
        if (binary_rmse(reconstruct(probe), series.values) == 0.0) return tau;
    }
    return 0.0;
}

std::string to_json(const WaveletModel& model) {
    ordered_json doc;
    doc["format_version"] = 1;
    doc["kind"] = "wavelet";
    doc["sensor_id"] = model.sensor_id;
    doc["wavelet"] = model.wavelet_name;
    doc["levels"] = model.levels;
    doc["threshold"] = model.threshold;
    doc["period_samples"] = model.period_samples;
    doc["padded_samples"] = model.padded_samples;
    doc["sampling_frequency_hz"] = model.sampling_frequency_hz;
    doc["time_reference_posix_s"] = model.time_reference_posix_s;
    doc["binarize_cutoff"] = model.binarize_cutoff;
    doc["kept_count"] = model.kept_count;
    doc["training_rmse"] = model.training_rmse;
    ordered_json entries = ordered_json::array();
    for (const auto& entry : model.kept_coefficients)
        entries.push_back({entry.level, entry.shift, entry.value});
    doc["coefficients"] = std::move(entries);
    return doc.dump(2) + "\n";
}

WaveletModel wavelet_model_from_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("model file is not valid JSON: ") + e.what());
    }
    if (doc.value("format_version", 0) != 1 || doc.value("kind", "") != "wavelet")
        throw DataError("model file has an unsupported format");

    WaveletModel model;
    try {
        model.sensor_id = doc.at("sensor_id").get<std::string>();
        model.wavelet_name = doc.at("wavelet").get<std::string>();
        model.levels = doc.at("levels").get<int>();
        model.threshold = doc.at("threshold").get<double>();
        model.period_samples = doc.at("period_samples").get<std::size_t>();
        model.padded_samples = doc.at("padded_samples").get<std::size_t>();
        model.sampling_frequency_hz = doc.at("sampling_frequency_hz").get<double>();
        model.time_reference_posix_s = doc.at("time_reference_posix_s").get<std::int64_t>();
        model.binarize_cutoff = doc.at("binarize_cutoff").get<double>();
        model.kept_count = doc.at("kept_count").get<std::size_t>();
        model.training_rmse = doc.at("training_rmse").get<double>();
        for (const auto& entry : doc.at("coefficients")) {
            model.kept_coefficients.push_back({entry.at(0).get<int>(),
                                               entry.at(1).get<std::size_t>(),
                                               entry.at(2).get<double>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("model file is missing fields: ") + e.what());
    }
    return model;
}

void save_model(const WaveletModel& model, const std::filesystem::path& path) {
    write_file_atomic(path, to_json(model));
}

WaveletModel load_model(const std::filesystem::path& path) {
    return wavelet_model_from_json(read_file(path));
}

}  // namespace wtm
