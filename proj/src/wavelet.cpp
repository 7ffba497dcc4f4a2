#include "wtm/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "wtm/common.hpp"

namespace wtm {

namespace {

// Below this output size the OpenMP fork costs more than the loop.
constexpr std::ptrdiff_t kParallelCutoff = 1 << 13;

// out[k] = sum_m f[m] * x[(2k + m) mod n], k = 0 .. n/2-1.
// The interior (no wrap) part runs without modulo arithmetic.
void filter_downsample(std::span<const double> x, std::span<const double> f,
                       std::span<double> out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
    const std::ptrdiff_t half = n / 2;
    const std::ptrdiff_t len = static_cast<std::ptrdiff_t>(f.size());
    const std::ptrdiff_t interior = (n >= len) ? (n - len) / 2 + 1 : 0;

#pragma omp parallel for schedule(static) if (half >= kParallelCutoff)
    for (std::ptrdiff_t k = 0; k < interior; ++k) {
        const double* base = x.data() + 2 * k;
        double acc = 0.0;
        for (std::ptrdiff_t m = 0; m < len; ++m) acc += f[m] * base[m];
        out[k] = acc;
    }
    for (std::ptrdiff_t k = interior; k < half; ++k) {
        double acc = 0.0;
        for (std::ptrdiff_t m = 0; m < len; ++m) acc += f[m] * x[(2 * k + m) % n];
        out[k] = acc;
    }
}

// out[i] += sum_k c[k] * f[(i - 2k) mod n]. Written as a gather over the
// filter taps of matching parity so each output slot has one writer.
void upsample_filter_add(std::span<const double> c, std::span<const double> f,
                         std::span<double> out) {
    const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(c.size());
    const std::ptrdiff_t n = 2 * half;
    const std::ptrdiff_t len = static_cast<std::ptrdiff_t>(f.size());

#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::ptrdiff_t m = i & 1; m < len; m += 2) {
            std::ptrdiff_t k = ((i - m) / 2) % half;
            if (k < 0) k += half;
            acc += f[m] * c[k];
        }
        out[i] += acc;
    }
}

}  // namespace

std::size_t WaveletSpec::filter_length() const {
    return std::max({decomposition_lowpass.size(), decomposition_highpass.size(),
                     reconstruction_lowpass.size(), reconstruction_highpass.size()});
}

bool WaveletSpec::is_orthogonal() const {
    return family_name == "haar" || family_name.starts_with("db");
}

const WaveletSpec& find_wavelet(const std::string& family_name) {
    for (const auto& spec : wavelet_catalog()) {
        if (spec.family_name == family_name) return spec;
    }
    throw ConfigError("unknown wavelet family: " + family_name);
}

int max_decomposition_level(std::size_t n, std::size_t filter_length) {
    if (n < 2) throw InvalidInput("max_decomposition_level: signal length must be >= 2");
    if (filter_length < 2) throw InvalidInput("max_decomposition_level: filter length must be >= 2");
    // largest q with (2^q - 1) * (L - 1) <= n, evaluated in integers
    const std::uint64_t step = filter_length - 1;
    int q = 0;
    while (q < 62 && ((std::uint64_t{2} << q) - 1) * step <= n) ++q;
    return q;
}

CoefficientSet dwt(std::span<const double> signal, const WaveletSpec& wavelet, int levels) {
    const std::size_t n = signal.size();
    if (levels < 1) throw InvalidInput("dwt: levels must be >= 1");
    if (n < 2) throw InvalidInput("dwt: signal too short");
    if (n % (std::size_t{1} << levels) != 0)
        throw InvalidInput("dwt: signal length not divisible by 2^levels");
    if (levels > max_decomposition_level(n, wavelet.filter_length()))
        throw InvalidInput("dwt: levels exceed the maximum decomposition level");

    CoefficientSet out;
    out.original_length = n;
    out.details.resize(levels);

    std::vector<double> current(signal.begin(), signal.end());
    for (int j = 1; j <= levels; ++j) {
        const std::size_t half = current.size() / 2;
        std::vector<double> approx(half);
        out.details[j - 1].resize(half);
        filter_downsample(current, wavelet.decomposition_lowpass, approx);
        filter_downsample(current, wavelet.decomposition_highpass, out.details[j - 1]);
        current = std::move(approx);
    }
    out.averaging = std::move(current);
    return out;
}

std::vector<double> idwt(const CoefficientSet& coeffs, const WaveletSpec& wavelet) {
    const std::size_t n = coeffs.original_length;
    const int levels = coeffs.level_count();
    if (levels < 1) throw InvalidInput("idwt: coefficient set has no levels");
    if (n == 0 || n % (std::size_t{1} << levels) != 0)
        throw InvalidInput("idwt: original_length inconsistent with level count");
    if (coeffs.averaging.size() != n >> levels)
        throw InvalidInput("idwt: averaging vector has the wrong length");
    for (int j = 1; j <= levels; ++j) {
        if (coeffs.details[j - 1].size() != n >> j)
            throw InvalidInput("idwt: detail vector has the wrong length");
    }

    std::vector<double> current = coeffs.averaging;
    for (int j = levels; j >= 1; --j) {
        std::vector<double> next(2 * current.size(), 0.0);
        upsample_filter_add(current, wavelet.reconstruction_lowpass, next);
        upsample_filter_add(coeffs.details[j - 1], wavelet.reconstruction_highpass, next);
        current = std::move(next);
    }
    return current;
}

WaveletSelection select_mother_wavelet(std::span<const std::vector<double>> training_signals,
                                       std::span<const WaveletSpec> candidates, double tau) {
    if (candidates.empty()) throw InvalidInput("select_mother_wavelet: no candidates");
    if (training_signals.empty()) throw InvalidInput("select_mother_wavelet: no training signals");
    if (tau < 0.0) throw InvalidInput("select_mother_wavelet: negative threshold");

    WaveletSelection selection;
    double best = 0.0;
    for (const auto& candidate : candidates) {
        WaveletSelectionEntry entry;
        entry.family_name = candidate.family_name;
        double total = 0.0;
        for (const auto& signal : training_signals) {
            CoefficientSet coeffs = dwt(signal, candidate, 1);
            for (auto& v : coeffs.averaging)
                if (std::abs(v) < tau) v = 0.0;
            for (auto& level : coeffs.details)
                for (auto& v : level)
                    if (std::abs(v) < tau) v = 0.0;
            const std::vector<double> recon = idwt(coeffs, candidate);
            double sq = 0.0;
            for (std::size_t i = 0; i < signal.size(); ++i) {
                const double bit = recon[i] >= 0.5 ? 1.0 : 0.0;
                const double diff = bit - signal[i];
                sq += diff * diff;
            }
            entry.per_signal_rmse.push_back(std::sqrt(sq / static_cast<double>(signal.size())));
            total += entry.per_signal_rmse.back();
        }
        entry.mean_rmse = total / static_cast<double>(training_signals.size());
        if (selection.winner.empty() || entry.mean_rmse < best) {
            best = entry.mean_rmse;
            selection.winner = entry.family_name;
        }
        selection.report.push_back(std::move(entry));
    }
    return selection;
}

Scalogram scalogram(std::span<const double> signal, const WaveletSpec& wavelet, int levels) {
    const CoefficientSet coeffs = dwt(signal, wavelet, levels);
    Scalogram result;
    result.level_mean_energy.resize(levels, 0.0);
    for (int j = 1; j <= levels; ++j) {
        const auto& d = coeffs.details[j - 1];
        double energy = 0.0;
        for (std::size_t k = 0; k < d.size(); ++k) {
            result.rows.push_back({j, k, std::abs(d[k])});
            energy += d[k] * d[k];
        }
        result.level_mean_energy[j - 1] = energy / static_cast<double>(d.size());
    }
    return result;
}

}  // namespace wtm
