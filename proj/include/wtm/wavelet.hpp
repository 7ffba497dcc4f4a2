#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace wtm {

// One analysis/synthesis filter bank. Tap lists may have different lengths;
// filter_length() is the longest one.
struct WaveletSpec {
    std::string family_name;
    std::vector<double> decomposition_lowpass;
    std::vector<double> decomposition_highpass;
    std::vector<double> reconstruction_lowpass;
    std::vector<double> reconstruction_highpass;

    std::size_t filter_length() const;
    bool is_orthogonal() const;  // haar + Daubechies members of the catalog
};

// Multi-level transform output. details[j-1] holds level j (finest j = 1,
// length n/2^j); averaging holds the coarsest band (length n/2^Q).
struct CoefficientSet {
    std::vector<double> averaging;
    std::vector<std::vector<double>> details;
    std::size_t original_length = 0;

    int level_count() const { return static_cast<int>(details.size()); }
};

// Filter bank catalog: haar, db2-db4, bior1.1-bior3.1, rbio1.1-rbio3.1.
const std::vector<WaveletSpec>& wavelet_catalog();

// Throws ConfigError for unknown names.
const WaveletSpec& find_wavelet(const std::string& family_name);

// floor(log2(n/(L-1) + 1)); n >= 2, filter_length >= 2.
int max_decomposition_level(std::size_t n, std::size_t filter_length);

// Periodized multi-level transform. Requires n divisible by 2^levels and
// levels <= max_decomposition_level(n, L).
CoefficientSet dwt(std::span<const double> signal, const WaveletSpec& wavelet, int levels);

// Exact inverse of dwt for an untouched coefficient set.
std::vector<double> idwt(const CoefficientSet& coeffs, const WaveletSpec& wavelet);

struct WaveletSelectionEntry {
    std::string family_name;
    double mean_rmse = 0.0;
    std::vector<double> per_signal_rmse;
};

struct WaveletSelection {
    std::string winner;
    std::vector<WaveletSelectionEntry> report;  // in candidate order
};

// Reconstruction-fidelity criterion: for every candidate, 1-level transform,
// threshold at tau, reconstruct, binarize at 0.5 and score RMSE against the
// original. Lowest mean RMSE wins; ties keep the earlier candidate.
WaveletSelection select_mother_wavelet(std::span<const std::vector<double>> training_signals,
                                       std::span<const WaveletSpec> candidates,
                                       double tau);

struct ScalogramRow {
    int level = 0;
    std::size_t shift = 0;
    double magnitude = 0.0;
};

struct Scalogram {
    std::vector<ScalogramRow> rows;            // detail bands, level-major
    std::vector<double> level_mean_energy;     // index j-1: mean of d_{j,k}^2
};

Scalogram scalogram(std::span<const double> signal, const WaveletSpec& wavelet, int levels);

}  // namespace wtm
