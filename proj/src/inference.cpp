#include "wtm/inference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include <nlohmann/json.hpp>

#include "wtm/common.hpp"

namespace wtm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// World bits: 0 = IsStatisticalAnomaly, 1 = IsActionAnomaly, 2 = IsAnomaly.
constexpr std::uint8_t kAllWorlds = 0xFF;
constexpr std::uint8_t kStatWorlds = 0xAA;     // bit0 set
constexpr std::uint8_t kActionWorlds = 0xCC;   // bit1 set
constexpr std::uint8_t kNoAnomalyWorlds = 0x0F;

std::uint8_t combine_mask() {
    // (S or A) => Y, evaluated per world.
    std::uint8_t mask = 0;
    for (int w = 0; w < 8; ++w) {
        const bool s = w & 1, a = w & 2, y = w & 4;
        if (!(s || a) || y) mask |= static_cast<std::uint8_t>(1u << w);
    }
    return mask;
}

void add_implication(GroundedNetwork& net, const std::string& id, bool antecedent,
                     std::uint8_t consequent_worlds, double weight) {
    net.groundings.push_back({id, antecedent ? consequent_worlds : kAllWorlds, weight, antecedent});
}

int minute_of_day(double timestamp, int utc_offset_minutes) {
    const long long local = static_cast<long long>(std::floor(timestamp)) +
                            static_cast<long long>(utc_offset_minutes) * 60;
    long long sec = local % 86400;
    if (sec < 0) sec += 86400;
    return static_cast<int>(sec / 60);
}

void check_increasing(std::span<const double> timestamps) {
    for (std::size_t i = 1; i < timestamps.size(); ++i) {
        if (!(timestamps[i] > timestamps[i - 1]))
            throw InvalidInput("timestamps must be strictly increasing");
    }
}

void check_aligned(std::span<const DetectionRun> runs) {
    if (runs.empty()) throw InvalidInput("no detection runs given");
    const auto& first = runs.front();
    for (const auto& run : runs) {
        if (run.timestamps.size() != first.timestamps.size() ||
            !std::equal(run.timestamps.begin(), run.timestamps.end(), first.timestamps.begin()))
            throw InvalidInput("detection runs are not time-aligned");
    }
}

double safe_ratio(double num, double den) {
    if (std::isinf(num) && std::isinf(den)) return 1.0;
    if (std::isinf(den)) return 0.0;
    return num / den;
}

}  // namespace

double RuleConfig::clause_weight(const std::string& id) const {
    const auto it = clause_weights.find(id);
    if (it == clause_weights.end()) throw ConfigError("no weight configured for clause " + id);
    return it->second;
}

void RuleConfig::validate() const {
    if (entropy_threshold < 0.0 || entropy_threshold > 1.0)
        throw ConfigError("entropy_threshold must lie in [0,1]");
    if (!(door_open_max_s > 0.0)) throw ConfigError("door_open_max_s must be positive");
    if (rest_interval.start_minute < 0 || rest_interval.start_minute >= 1440 ||
        rest_interval.end_minute < 0 || rest_interval.end_minute >= 1440)
        throw ConfigError("rest_interval minutes must lie in [0,1440)");
    for (const auto& [id, w] : clause_weights) {
        if (!(w > 0.0)) throw ConfigError("clause weight for " + id + " must be positive");
    }
}

std::size_t DetectionRun::flag_count() const {
    std::size_t n = 0;
    for (const auto f : flags) n += f != 0;
    return n;
}

namespace {

ClockInterval parse_clock_interval(const std::string& text) {
    int h0 = 0, m0 = 0, h1 = 0, m1 = 0;
    if (std::sscanf(text.c_str(), "%d:%d-%d:%d", &h0, &m0, &h1, &m1) != 4 || h0 < 0 || h0 > 23 ||
        h1 < 0 || h1 > 23 || m0 < 0 || m0 > 59 || m1 < 0 || m1 > 59)
        throw ConfigError("rest interval must look like HH:MM-HH:MM, got " + text);
    return {h0 * 60 + m0, h1 * 60 + m1};
}

std::string format_clock_interval(const ClockInterval& interval) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%02d:%02d-%02d:%02d", interval.start_minute / 60,
                  interval.start_minute % 60, interval.end_minute / 60, interval.end_minute % 60);
    return buf;
}

}  // namespace

RuleConfig rule_config_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("rules file is not valid JSON: ") + e.what());
    }
    RuleConfig rules;
    rules.entropy_threshold = doc.value("entropy_threshold", rules.entropy_threshold);
    rules.door_open_max_s = doc.value("door_open_max_s", rules.door_open_max_s);
    if (doc.contains("rest_interval"))
        rules.rest_interval = parse_clock_interval(doc.at("rest_interval").get<std::string>());
    rules.prior_weight = doc.value("prior_weight", rules.prior_weight);
    rules.utc_offset_minutes = doc.value("utc_offset_minutes", rules.utc_offset_minutes);
    if (doc.contains("clause_weights")) {
        for (const auto& [id, w] : doc.at("clause_weights").items()) {
            if (!rules.clause_weights.contains(id))
                throw ConfigError("rules file names an unknown clause: " + id);
            rules.clause_weights[id] = w.get<double>();
        }
    }
    rules.validate();
    return rules;
}

std::string to_json(const RuleConfig& rules) {
    nlohmann::ordered_json doc;
    doc["entropy_threshold"] = rules.entropy_threshold;
    doc["door_open_max_s"] = rules.door_open_max_s;
    doc["rest_interval"] = format_clock_interval(rules.rest_interval);
    nlohmann::ordered_json weights;
    for (const auto& [id, w] : rules.clause_weights) weights[id] = w;
    doc["clause_weights"] = std::move(weights);
    doc["prior_weight"] = rules.prior_weight;
    doc["utc_offset_minutes"] = rules.utc_offset_minutes;
    return doc.dump(2) + "\n";
}

GroundedNetwork ground_network(double timestamp, double entropy_real, double entropy_expected,
                               const SensorEvidence& evidence, const RuleConfig& rules,
                               bool include_expert_rules) {
    if (std::isnan(entropy_real) || std::isnan(entropy_expected))
        throw ConfigError("entropy evidence is missing for the statistical clauses");

    GroundedNetwork net;
    net.timestamp = timestamp;
    net.entropy_real = entropy_real;
    net.entropy_expected = entropy_expected;
    net.evidence = evidence;

    add_implication(net, "stat_high", entropy_real >= rules.entropy_threshold, kStatWorlds,
                    rules.clause_weight("stat_high"));
    add_implication(net, "stat_above_expected", entropy_real > entropy_expected, kStatWorlds,
                    rules.clause_weight("stat_above_expected"));

    if (include_expert_rules) {
        const double door_weight = rules.clause_weight("door_open");
        for (const auto& [id, duration] : evidence.door_open_durations_s) {
            add_implication(net, "door_open(" + id + ")", duration > rules.door_open_max_s,
                            kActionWorlds, door_weight);
        }
        const double rest_weight = rules.clause_weight("rest_motion");
        for (const auto& [id, active] : evidence.motion_active) {
            add_implication(net, "rest_motion(" + id + ")", active && evidence.in_rest_interval,
                            kActionWorlds, rest_weight);
        }
    }

    net.groundings.push_back({"combine", combine_mask(), rules.clause_weight("combine"), false});
    net.groundings.push_back({"prior", kNoAnomalyWorlds, rules.prior_weight, false});
    return net;
}

AnomalyVerdict infer(const GroundedNetwork& network) {
    double log_weight[8] = {};
    for (const auto& g : network.groundings) {
        for (int w = 0; w < 8; ++w) {
            if (g.truth_mask & (1u << w)) log_weight[w] += g.weight;
        }
    }
    const double peak = *std::max_element(log_weight, log_weight + 8);
    double total = 0.0, anomalous = 0.0;
    for (int w = 0; w < 8; ++w) {
        const double weight = std::exp(log_weight[w] - peak);
        total += weight;
        if (w & 4) anomalous += weight;
    }

    AnomalyVerdict verdict;
    verdict.timestamp = network.timestamp;
    verdict.probability_is_anomaly = anomalous / total;
    verdict.flagged = verdict.probability_is_anomaly > 0.5;
    for (const auto& g : network.groundings) {
        if (g.antecedent_true) verdict.triggered_clauses.push_back(g.clause_id);
    }
    return verdict;
}

std::vector<EvidencePoint> build_evidence_stream(std::span<const double> timestamps,
                                                 std::span<const double> entropy_real,
                                                 std::span<const double> entropy_expected,
                                                 std::span<const SensorSeries> contact_series,
                                                 std::span<const SensorSeries> motion_series,
                                                 const RuleConfig& rules) {
    check_increasing(timestamps);
    if (entropy_real.size() != timestamps.size() || entropy_expected.size() != timestamps.size())
        throw InvalidInput("entropy streams are not aligned with the timestamps");

    // Running on-streak in seconds, per contact sensor.
    std::vector<std::vector<double>> streaks(contact_series.size());
    for (std::size_t s = 0; s < contact_series.size(); ++s) {
        const auto& series = contact_series[s];
        const double period = series.sample_period_s();
        streaks[s].resize(series.values.size(), 0.0);
        for (std::size_t i = 0; i < series.values.size(); ++i) {
            if (series.values[i])
                streaks[s][i] = (i > 0 ? streaks[s][i - 1] : 0.0) + period;
        }
    }

    std::vector<EvidencePoint> stream(timestamps.size());
    for (std::size_t i = 0; i < timestamps.size(); ++i) {
        EvidencePoint& point = stream[i];
        point.timestamp = timestamps[i];
        point.entropy_real = entropy_real[i];
        point.entropy_expected = entropy_expected[i];
        point.sensors.in_rest_interval =
            rules.rest_interval.contains(minute_of_day(timestamps[i], rules.utc_offset_minutes));
        for (std::size_t s = 0; s < contact_series.size(); ++s) {
            std::size_t index = 0;
            if (!grid_index(contact_series[s], timestamps[i], &index))
                throw InvalidInput("timestamp off the sampling grid of " +
                                   contact_series[s].sensor_id);
            point.sensors.door_open_durations_s[contact_series[s].sensor_id] = streaks[s][index];
        }
        for (const auto& series : motion_series) {
            std::size_t index = 0;
            if (!grid_index(series, timestamps[i], &index))
                throw InvalidInput("timestamp off the sampling grid of " + series.sensor_id);
            point.sensors.motion_active[series.sensor_id] = series.values[index] != 0;
        }
    }
    return stream;
}

DetectionRun detect_hmln(std::span<const EvidencePoint> evidence, const RuleConfig& rules,
                         bool include_expert_rules) {
    rules.validate();
    const std::size_t n = evidence.size();
    DetectionRun run;
    run.detector_name = include_expert_rules ? "hmln" : "hmln_star";
    run.parameters["entropy_threshold"] = std::to_string(rules.entropy_threshold);
    run.parameters["door_open_max_s"] = std::to_string(rules.door_open_max_s);
    run.parameters["expert_rules"] = include_expert_rules ? "on" : "off";
    run.timestamps.resize(n);
    run.flags.resize(n);
    run.scores.resize(n);
    run.triggered.resize(n);

#pragma omp parallel for schedule(static) if (n >= 4096)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        const auto& point = evidence[i];
        const AnomalyVerdict verdict =
            infer(ground_network(point.timestamp, point.entropy_real, point.entropy_expected,
                                 point.sensors, rules, include_expert_rules));
        run.timestamps[i] = verdict.timestamp;
        run.flags[i] = verdict.flagged ? 1 : 0;
        run.scores[i] = verdict.probability_is_anomaly;
        std::string joined;
        for (const auto& id : verdict.triggered_clauses) {
            if (!joined.empty()) joined += ';';
            joined += id;
        }
        run.triggered[i] = std::move(joined);
    }
    check_increasing(run.timestamps);
    return run;
}

DetectionRun detect_gaussian1d(std::span<const double> timestamps,
                               std::span<const double> values, double z_threshold,
                               double train_fraction) {
    check_increasing(timestamps);
    if (values.size() != timestamps.size()) throw InvalidInput("values not aligned with timestamps");
    if (values.size() < 2) throw InvalidInput("detect_gaussian1d: needs at least 2 samples");
    if (z_threshold < 0.0) throw InvalidInput("detect_gaussian1d: negative z threshold");
    if (!(train_fraction > 0.0) || train_fraction > 1.0)
        throw InvalidInput("detect_gaussian1d: train fraction must lie in (0,1]");

    const std::size_t train_n =
        std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(
                                     train_fraction * static_cast<double>(values.size()))));
    double mean = 0.0;
    for (std::size_t i = 0; i < train_n; ++i) mean += values[i];
    mean /= static_cast<double>(train_n);
    double var = 0.0;
    for (std::size_t i = 0; i < train_n; ++i) var += (values[i] - mean) * (values[i] - mean);
    var /= static_cast<double>(train_n - 1);
    const double sigma = std::sqrt(var);

    DetectionRun run;
    run.detector_name = "gaussian1d";
    run.parameters["z_threshold"] = std::to_string(z_threshold);
    run.parameters["sigma"] = std::to_string(sigma);
    run.timestamps.assign(timestamps.begin(), timestamps.end());
    run.flags.resize(values.size());
    run.scores.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double deviation = std::abs(values[i] - mean);
        if (sigma > 0.0) {
            run.scores[i] = deviation / sigma;
            run.flags[i] = deviation > z_threshold * sigma ? 1 : 0;
        } else {
            // degenerate fit: any departure from the constant is anomalous
            run.scores[i] = deviation;
            run.flags[i] = deviation > 0.0 ? 1 : 0;
        }
    }
    return run;
}

std::vector<double> lof_scores(std::span<const std::vector<double>> points, int neighbors_k) {
    const std::size_t n = points.size();
    if (neighbors_k <= 0) throw InvalidInput("lof: neighbor count must be positive");
    if (n <= static_cast<std::size_t>(neighbors_k))
        throw InvalidInput("lof: needs more points than neighbors");
    const std::size_t k = static_cast<std::size_t>(neighbors_k);

    auto distance = [&](std::size_t a, std::size_t b) {
        double sq = 0.0;
        for (std::size_t d = 0; d < points[a].size(); ++d) {
            const double diff = points[a][d] - points[b][d];
            sq += diff * diff;
        }
        return std::sqrt(sq);
    };

    // k-distance and neighborhood (all points within the k-distance)
    std::vector<double> k_distance(n);
    std::vector<std::vector<std::size_t>> neighborhood(n);
#pragma omp parallel for schedule(static) if (n >= 512)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        std::vector<std::pair<double, std::size_t>> dists;
        dists.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != static_cast<std::size_t>(i)) dists.emplace_back(distance(i, j), j);
        }
        std::nth_element(dists.begin(), dists.begin() + (k - 1), dists.end());
        k_distance[i] = dists[k - 1].first;
        for (const auto& [d, j] : dists) {
            if (d <= k_distance[i]) neighborhood[i].push_back(j);
        }
        std::sort(neighborhood[i].begin(), neighborhood[i].end());
    }

    std::vector<double> lrd(n);
#pragma omp parallel for schedule(static) if (n >= 512)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        double reach_sum = 0.0;
        for (const std::size_t j : neighborhood[i])
            reach_sum += std::max(k_distance[j], distance(i, j));
        lrd[i] = reach_sum > 0.0 ? static_cast<double>(neighborhood[i].size()) / reach_sum : kInf;
    }

    std::vector<double> scores(n);
#pragma omp parallel for schedule(static) if (n >= 512)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        double ratio_sum = 0.0;
        for (const std::size_t j : neighborhood[i]) ratio_sum += safe_ratio(lrd[j], lrd[i]);
        scores[i] = ratio_sum / static_cast<double>(neighborhood[i].size());
    }
    return scores;
}

DetectionRun detect_lof(std::span<const double> timestamps, std::span<const double> values,
                        int neighbors_k, double lof_threshold, LofEmbedding embedding) {
    check_increasing(timestamps);
    if (values.size() != timestamps.size()) throw InvalidInput("values not aligned with timestamps");

    std::vector<std::vector<double>> points(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (embedding == LofEmbedding::value_only) {
            points[i] = {values[i]};
        } else {
            constexpr double radius = 0.5;
            double day_fraction = std::fmod(timestamps[i], 86400.0) / 86400.0;
            if (day_fraction < 0.0) day_fraction += 1.0;
            const double angle = 2.0 * std::numbers::pi * day_fraction;
            points[i] = {values[i], radius * std::sin(angle), radius * std::cos(angle)};
        }
    }
    const std::vector<double> scores = lof_scores(points, neighbors_k);

    DetectionRun run;
    run.detector_name = "lof";
    run.parameters["neighbors_k"] = std::to_string(neighbors_k);
    run.parameters["lof_threshold"] = std::to_string(lof_threshold);
    run.parameters["embedding"] = embedding == LofEmbedding::value_only ? "value" : "value_daily";
    run.timestamps.assign(timestamps.begin(), timestamps.end());
    run.scores = scores;
    run.flags.resize(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) run.flags[i] = scores[i] > lof_threshold ? 1 : 0;
    return run;
}

AgreementMatrix agreement_matrix(std::span<const DetectionRun> runs) {
    check_aligned(runs);
    AgreementMatrix matrix;
    for (const auto& run : runs) matrix.detector_names.push_back(run.detector_name);
    matrix.cells.assign(runs.size(), std::vector<double>(runs.size(), kNaN));
    for (std::size_t r = 0; r < runs.size(); ++r) {
        const std::size_t own = runs[r].flag_count();
        if (own == 0) continue;  // undefined row
        for (std::size_t c = 0; c < runs.size(); ++c) {
            std::size_t shared = 0;
            for (std::size_t i = 0; i < runs[r].flags.size(); ++i)
                shared += runs[r].flags[i] && runs[c].flags[i];
            matrix.cells[r][c] = 100.0 * static_cast<double>(shared) / static_cast<double>(own);
        }
    }
    return matrix;
}

std::vector<DetectorScore> rank_f1_without_ground_truth(std::span<const DetectionRun> runs) {
    if (runs.size() < 3)
        throw InvalidInput("rank_f1_without_ground_truth: needs at least 3 detectors");
    check_aligned(runs);

    const std::size_t steps = runs.front().timestamps.size();
    std::vector<std::uint8_t> reference(steps, 0);
    for (std::size_t i = 0; i < steps; ++i) {
        std::size_t votes = 0;
        for (const auto& run : runs) votes += run.flags[i] != 0;
        reference[i] = 2 * votes > runs.size() ? 1 : 0;
    }

    std::vector<DetectorScore> scores;
    for (const auto& run : runs) {
        std::size_t tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < steps; ++i) {
            if (run.flags[i] && reference[i]) ++tp;
            else if (run.flags[i] && !reference[i]) ++fp;
            else if (!run.flags[i] && reference[i]) ++fn;
        }
        DetectorScore score;
        score.detector_name = run.detector_name;
        score.precision = (tp + fp) ? static_cast<double>(tp) / static_cast<double>(tp + fp) : kNaN;
        score.recall = (tp + fn) ? static_cast<double>(tp) / static_cast<double>(tp + fn) : kNaN;
        score.f1 = (std::isnan(score.precision) || std::isnan(score.recall) ||
                    score.precision + score.recall == 0.0)
                       ? ((tp + fp + fn) ? 0.0 : kNaN)
                       : 2.0 * score.precision * score.recall / (score.precision + score.recall);
        scores.push_back(score);
    }
    return scores;
}

}  // namespace wtm
