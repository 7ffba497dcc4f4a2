#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "wtm/series.hpp"

namespace wtm {

// Daily clock interval in minutes, may wrap midnight (e.g. 23:00-07:00).
struct ClockInterval {
    int start_minute = 0;
    int end_minute = 0;

    bool contains(int minute_of_day) const {
        if (start_minute <= end_minute)
            return minute_of_day >= start_minute && minute_of_day < end_minute;
        return minute_of_day >= start_minute || minute_of_day < end_minute;
    }
};

struct RuleConfig {
    double entropy_threshold = 0.9;           // fires the first statistical clause
    double door_open_max_s = 300.0;           // door-left-open rule bound
    ClockInterval rest_interval{23 * 60, 7 * 60};
    std::map<std::string, double> clause_weights = {
        {"stat_high", 10.0}, {"stat_above_expected", 10.0},
        {"door_open", 10.0}, {"rest_motion", 10.0}, {"combine", 10.0}};
    double prior_weight = 2.0;                // soft prior on no-anomaly
    int utc_offset_minutes = 0;               // local clock for the rest interval

    double clause_weight(const std::string& id) const;
    void validate() const;
};

// Rules file: thresholds, rest interval as "HH:MM-HH:MM", clause weights.
RuleConfig rule_config_from_json(const std::string& text);
std::string to_json(const RuleConfig& rules);

// Crisp sensor conditions observed at one timestep.
struct SensorEvidence {
    std::map<std::string, double> door_open_durations_s;  // running on-streak per contact sensor
    std::map<std::string, bool> motion_active;
    bool in_rest_interval = false;
};

// Worlds are truth assignments to (IsStatisticalAnomaly, IsActionAnomaly,
// IsAnomaly) packed into bits 0/1/2; truth_mask bit w says the grounding is
// satisfied in world w.
struct ClauseGrounding {
    std::string clause_id;
    std::uint8_t truth_mask = 0;
    double weight = 0.0;
    bool antecedent_true = false;
};

struct GroundedNetwork {
    double timestamp = 0.0;
    double entropy_real = 0.0;
    double entropy_expected = 0.0;
    SensorEvidence evidence;
    std::vector<ClauseGrounding> groundings;
};

struct AnomalyVerdict {
    double timestamp = 0.0;
    double probability_is_anomaly = 0.0;
    bool flagged = false;                       // probability > 0.5
    std::vector<std::string> triggered_clauses;  // antecedents that held
};

struct EvidencePoint {
    double timestamp = 0.0;
    double entropy_real = 0.0;
    double entropy_expected = 0.0;
    SensorEvidence sensors;
};

struct DetectionRun {
    std::string detector_name;
    std::vector<double> timestamps;  // strictly increasing
    std::vector<std::uint8_t> flags;
    std::vector<double> scores;                // P(IsAnomaly), |z|, or LOF score
    std::vector<std::string> triggered;        // ';'-joined clause ids (HMLN only)
    std::map<std::string, std::string> parameters;

    std::size_t flag_count() const;
};

// Evaluates the continuous comparisons against the observed evidence and
// grounds every clause over the three query nodes, plus the no-anomaly prior.
GroundedNetwork ground_network(double timestamp, double entropy_real, double entropy_expected,
                               const SensorEvidence& evidence, const RuleConfig& rules,
                               bool include_expert_rules = true);

// Exact inference: world weight = exp(sum of satisfied grounding weights),
// P(IsAnomaly) = weight of worlds with the anomaly bit set over total weight.
AnomalyVerdict infer(const GroundedNetwork& network);

// Computes running door-open streaks, motion activity and rest-interval
// membership per timestep. Timestamps must lie on the series grid.
std::vector<EvidencePoint> build_evidence_stream(std::span<const double> timestamps,
                                                 std::span<const double> entropy_real,
                                                 std::span<const double> entropy_expected,
                                                 std::span<const SensorSeries> contact_series,
                                                 std::span<const SensorSeries> motion_series,
                                                 const RuleConfig& rules);

// include_expert_rules = false is the statistics-only variant.
DetectionRun detect_hmln(std::span<const EvidencePoint> evidence, const RuleConfig& rules,
                         bool include_expert_rules);

// Flags |x - mu| > z_threshold * sigma with mu/sigma frozen on the leading
// train_fraction of the stream. Zero variance degenerates to flagging any
// x != mu.
DetectionRun detect_gaussian1d(std::span<const double> timestamps,
                               std::span<const double> values, double z_threshold,
                               double train_fraction = 1.0);

enum class LofEmbedding {
    value_only,   // 1-D
    value_daily,  // (value, r*sin, r*cos) of the time of day, r = 0.5
};

DetectionRun detect_lof(std::span<const double> timestamps, std::span<const double> values,
                        int neighbors_k, double lof_threshold,
                        LofEmbedding embedding = LofEmbedding::value_daily);

// Standard local outlier factor scores for pre-embedded points.
// Degenerate all-duplicate neighborhoods score exactly 1.
std::vector<double> lof_scores(std::span<const std::vector<double>> points, int neighbors_k);

// cell (r,c) = 100 * |flags_r intersect flags_c| / |flags_r|; NaN rows for
// detectors with no flags.
struct AgreementMatrix {
    std::vector<std::string> detector_names;
    std::vector<std::vector<double>> cells;
};

AgreementMatrix agreement_matrix(std::span<const DetectionRun> runs);

// Majority-vote pseudo-reference scoring. Relative ranking only.
struct DetectorScore {
    std::string detector_name;
    double precision = 0.0;  // NaN when undefined
    double recall = 0.0;
    double f1 = 0.0;
};

std::vector<DetectorScore> rank_f1_without_ground_truth(std::span<const DetectionRun> runs);

}  // namespace wtm
