#include "wtm/fremen.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <span>

#include <fftw3.h>
#include <nlohmann/json.hpp>

#include "wtm/common.hpp"
#include "wtm/io.hpp"

namespace wtm {

namespace {

using ordered_json = nlohmann::ordered_json;

// FFTW planning is not thread-safe; execution is.
std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}

std::vector<std::complex<double>> real_spectrum(std::span<const std::uint8_t> values) {
    const std::size_t n = values.size();
    const std::size_t bins = n / 2 + 1;
    std::vector<double> in(n);
    for (std::size_t i = 0; i < n; ++i) in[i] = values[i];
    std::vector<std::complex<double>> out(bins);

    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                    reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

}  // namespace

FremenModel fit_fremen(const SensorSeries& series, int component_count) {
    validate_series(series);
    if (component_count <= 0) throw InvalidInput("fit_fremen: component count must be positive");
    const std::size_t n = series.values.size();
    if (n < 2 * static_cast<std::size_t>(component_count) + 1)
        throw InvalidInput("fit_fremen: series shorter than 2K+1 samples");

    const auto spectrum = real_spectrum(series.values);
    FremenModel model;
    model.sensor_id = series.sensor_id;
    model.time_reference_posix_s = series.time_reference_posix_s;
    model.mean_activation = spectrum[0].real() / static_cast<double>(n);

    std::vector<HarmonicComponent> all;
    for (std::size_t k = 1; k < spectrum.size(); ++k) {
        const bool nyquist = (n % 2 == 0) && (k == n / 2);
        HarmonicComponent c;
        c.frequency_hz = static_cast<double>(k) * series.sampling_frequency_hz / static_cast<double>(n);
        c.amplitude = (nyquist ? 1.0 : 2.0) * std::abs(spectrum[k]) / static_cast<double>(n);
        c.phase = std::atan2(spectrum[k].imag(), spectrum[k].real());
        all.push_back(c);
    }
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        if (a.amplitude != b.amplitude) return a.amplitude > b.amplitude;
        return a.frequency_hz < b.frequency_hz;
    });
    const std::size_t keep = std::min<std::size_t>(component_count, all.size());
    model.components.assign(all.begin(), all.begin() + keep);
    return model;
}

FremenPrediction predict_fremen(const FremenModel& model, double t) {
    const double dt = t - static_cast<double>(model.time_reference_posix_s);
    double p = model.mean_activation;
    for (const auto& c : model.components)
        p += c.amplitude * std::cos(2.0 * std::numbers::pi * c.frequency_hz * dt + c.phase);
    p = std::clamp(p, 0.0, 1.0);
    return {p, p >= model.binarize_cutoff ? 1 : 0};
}

std::string to_json(const FremenModel& model) {
    ordered_json doc;
    doc["format_version"] = 1;
    doc["kind"] = "fremen";
    doc["sensor_id"] = model.sensor_id;
    doc["mean_activation"] = model.mean_activation;
    doc["time_reference_posix_s"] = model.time_reference_posix_s;
    doc["binarize_cutoff"] = model.binarize_cutoff;
    ordered_json comps = ordered_json::array();
    for (const auto& c : model.components)
        comps.push_back({c.frequency_hz, c.amplitude, c.phase});
    doc["components"] = std::move(comps);
    return doc.dump(2) + "\n";
}

FremenModel fremen_model_from_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("model file is not valid JSON: ") + e.what());
    }
    if (doc.value("format_version", 0) != 1 || doc.value("kind", "") != "fremen")
        throw DataError("model file has an unsupported format");
    FremenModel model;
    try {
        model.sensor_id = doc.at("sensor_id").get<std::string>();
        model.mean_activation = doc.at("mean_activation").get<double>();
        model.time_reference_posix_s = doc.at("time_reference_posix_s").get<std::int64_t>();
        model.binarize_cutoff = doc.at("binarize_cutoff").get<double>();
        for (const auto& c : doc.at("components"))
            model.components.push_back({c.at(0).get<double>(), c.at(1).get<double>(),
                                        c.at(2).get<double>()});
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("model file is missing fields: ") + e.what());
    }
    return model;
}

void save_model(const FremenModel& model, const std::filesystem::path& path) {
    write_file_atomic(path, to_json(model));
}

FremenModel load_model_fremen(const std::filesystem::path& path) {
    return fremen_model_from_json(read_file(path));
}

}  // namespace wtm
