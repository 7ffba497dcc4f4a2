#include "reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wtm/common.hpp"

namespace wtm::reference {

CoefficientSet dwt_direct(std::span<const double> signal, const WaveletSpec& wavelet, int levels) {
    CoefficientSet out;
    out.original_length = signal.size();
    out.details.resize(levels);
    std::vector<double> current(signal.begin(), signal.end());
    for (int j = 1; j <= levels; ++j) {
        const std::size_t n = current.size();
        const std::size_t half = n / 2;
        std::vector<double> approx(half, 0.0);
        std::vector<double>& detail = out.details[j - 1];
        detail.assign(half, 0.0);
        for (std::size_t k = 0; k < half; ++k) {
            for (std::size_t m = 0; m < wavelet.decomposition_lowpass.size(); ++m)
                approx[k] += wavelet.decomposition_lowpass[m] * current[(2 * k + m) % n];
            for (std::size_t m = 0; m < wavelet.decomposition_highpass.size(); ++m)
                detail[k] += wavelet.decomposition_highpass[m] * current[(2 * k + m) % n];
        }
        current = std::move(approx);
    }
    out.averaging = std::move(current);
    return out;
}

std::vector<double> idwt_direct(const CoefficientSet& coeffs, const WaveletSpec& wavelet) {
    std::vector<double> current = coeffs.averaging;
    for (int j = coeffs.level_count(); j >= 1; --j) {
        const std::size_t n = 2 * current.size();
        std::vector<double> next(n, 0.0);
        for (std::size_t k = 0; k < current.size(); ++k) {
            for (std::size_t m = 0; m < wavelet.reconstruction_lowpass.size(); ++m)
                next[(2 * k + m) % n] += current[k] * wavelet.reconstruction_lowpass[m];
            for (std::size_t m = 0; m < wavelet.reconstruction_highpass.size(); ++m)
                next[(2 * k + m) % n] += coeffs.details[j - 1][k] * wavelet.reconstruction_highpass[m];
        }
        current = std::move(next);
    }
    return current;
}

std::vector<std::complex<double>> dft_direct(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::complex<double>> bins(n / 2 + 1);
    for (std::size_t k = 0; k < bins.size(); ++k) {
        std::complex<double> acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) *
                                 static_cast<double>(i) / static_cast<double>(n);
            acc += values[i] * std::complex<double>(std::cos(angle), std::sin(angle));
        }
        bins[k] = acc;
    }
    return bins;
}

std::vector<double> lof_scores_direct(std::span<const std::vector<double>> points, int neighbors_k) {
    const std::size_t n = points.size();
    const auto k = static_cast<std::size_t>(neighbors_k);
    const double inf = std::numeric_limits<double>::infinity();

    const auto dist = [&](std::size_t a, std::size_t b) {
        double sq = 0.0;
        for (std::size_t d = 0; d < points[a].size(); ++d)
            sq += (points[a][d] - points[b][d]) * (points[a][d] - points[b][d]);
        return std::sqrt(sq);
    };

    // k-distance per point from a fully sorted distance list
    std::vector<double> kdist(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> all;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) all.push_back(dist(i, j));
        std::sort(all.begin(), all.end());
        kdist[i] = all[k - 1];
    }
    const auto neighbors = [&](std::size_t i) {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && dist(i, j) <= kdist[i]) out.push_back(j);
        return out;
    };

    std::vector<double> lrd(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        const auto nb = neighbors(i);
        for (const std::size_t j : nb) sum += std::max(kdist[j], dist(i, j));
        lrd[i] = sum > 0.0 ? static_cast<double>(nb.size()) / sum : inf;
    }

    std::vector<double> scores(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto nb = neighbors(i);
        double sum = 0.0;
        for (const std::size_t j : nb) {
            if (std::isinf(lrd[j]) && std::isinf(lrd[i]))
                sum += 1.0;
            else if (std::isinf(lrd[i]))
                sum += 0.0;
            else
                sum += lrd[j] / lrd[i];
        }
        scores[i] = sum / static_cast<double>(nb.size());
    }
    return scores;
}

ActivitySnapshot snapshot_direct(std::span<const SensorSeries> series_set, double window_start,
                                 double window_length_s) {
    const auto on_times = window_on_times(series_set, window_start, window_length_s);
    ActivitySnapshot snap;
    snap.window_start = window_start;
    snap.window_length_s = window_length_s;
    snap.sensor_count = series_set.size();
    snap.on_times_s = on_times;
    if (const auto probabilities = activity_probabilities(on_times)) {
        snap.probabilities = *probabilities;
        std::vector<double> values;
        for (const auto& [id, p] : snap.probabilities) values.push_back(p);
        snap.normalized_entropy = normalized_entropy(values, snap.sensor_count);
    }
    return snap;
}

}  // namespace wtm::reference
