#include "wtm/metrics.hpp"

#include <cmath>
#include <limits>

#include "wtm/common.hpp"

namespace wtm {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

MetricsReport binary_classification_metrics(std::span<const std::uint8_t> predicted,
                                            std::span<const std::uint8_t> truth) {
    if (predicted.size() != truth.size())
        throw InvalidInput("binary_classification_metrics: length mismatch");
    if (predicted.empty()) throw InvalidInput("binary_classification_metrics: empty input");

    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const bool p = predicted[i] != 0, t = truth[i] != 0;
        if (p && t) ++tp;
        else if (p && !t) ++fp;
        else if (!p && t) ++fn;
        else ++tn;
    }

    MetricsReport report;
    report.precision = (tp + fp) ? 100.0 * static_cast<double>(tp) / static_cast<double>(tp + fp) : kNaN;
    report.recall = (tp + fn) ? 100.0 * static_cast<double>(tp) / static_cast<double>(tp + fn) : kNaN;
    report.accuracy = 100.0 * static_cast<double>(tp + tn) / static_cast<double>(predicted.size());
    if (std::isnan(report.precision) || std::isnan(report.recall) ||
        report.precision + report.recall == 0.0) {
        report.f1 = kNaN;
    } else {
        report.f1 = 2.0 * report.precision * report.recall / (report.precision + report.recall);
    }
    report.rmse = kNaN;
    report.pearson_correlation = kNaN;
    report.explained_variance = kNaN;
    return report;
}

MetricsReport similarity_metrics(std::span<const double> series_a,
                                 std::span<const double> series_b) {
    if (series_a.size() != series_b.size())
        throw InvalidInput("similarity_metrics: length mismatch");
    if (series_a.size() < 2) throw InvalidInput("similarity_metrics: needs at least 2 samples");
    const auto n = static_cast<double>(series_a.size());

    double sq = 0.0, mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < series_a.size(); ++i) {
        const double d = series_a[i] - series_b[i];
        sq += d * d;
        mean_a += series_a[i];
        mean_b += series_b[i];
    }
    mean_a /= n;
    mean_b /= n;

    double var_a = 0.0, var_b = 0.0, cov = 0.0, var_diff = 0.0;
    const double mean_diff = mean_a - mean_b;
    for (std::size_t i = 0; i < series_a.size(); ++i) {
        const double da = series_a[i] - mean_a;
        const double db = series_b[i] - mean_b;
        var_a += da * da;
        var_b += db * db;
        cov += da * db;
        const double dd = (series_a[i] - series_b[i]) - mean_diff;
        var_diff += dd * dd;
    }

    MetricsReport report;
    report.precision = kNaN;
    report.recall = kNaN;
    report.accuracy = kNaN;
    report.f1 = kNaN;
    report.rmse = 100.0 * std::sqrt(sq / n);
    report.pearson_correlation =
        (var_a > 0.0 && var_b > 0.0) ? 100.0 * cov / std::sqrt(var_a * var_b) : kNaN;
    report.explained_variance = var_a > 0.0 ? 100.0 * (1.0 - var_diff / var_a) : kNaN;
    return report;
}

}  // namespace wtm
