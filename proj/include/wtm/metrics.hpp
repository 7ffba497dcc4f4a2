#pragma once

#include <cstdint>
#include <span>

namespace wtm {

// All fields are percentages; NaN marks a metric that is undefined for the
// given inputs (never silently 0).
struct MetricsReport {
    double precision = 0.0;
    double recall = 0.0;
    double accuracy = 0.0;
    double f1 = 0.0;
    double rmse = 0.0;
    double pearson_correlation = 0.0;
    double explained_variance = 0.0;
};

// Confusion-matrix metrics with positive class = 1.
MetricsReport binary_classification_metrics(std::span<const std::uint8_t> predicted,
                                            std::span<const std::uint8_t> truth);

// RMSE (inputs scaled [0,1] reported on the 0-100 scale), Pearson
// correlation, and explained variance 1 - Var(a-b)/Var(a), as percentages.
MetricsReport similarity_metrics(std::span<const double> series_a,
                                 std::span<const double> series_b);

}  // namespace wtm
