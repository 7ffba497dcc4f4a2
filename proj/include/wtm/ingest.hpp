#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wtm/series.hpp"

namespace wtm {

enum class ReadingType { motion, contact, humidity, temperature, light, energy };

std::string to_string(ReadingType type);
std::optional<ReadingType> reading_type_from_string(const std::string& name);
bool is_binary(ReadingType type);

struct SensorRecord {
    double timestamp = 0.0;  // POSIX seconds
    std::string sensor_id;
    std::string location;
    ReadingType type = ReadingType::motion;
    double value = 0.0;
};

// JSON field names for one dataset export. Dotted paths descend into nested
// objects (e.g. "ts.$date").
struct FieldMapping {
    std::string timestamp = "ts";
    std::string sensor = "sensor";
    std::string location = "location";
    std::string type = "type";
    std::string value = "value";
    double timestamp_scale = 1.0;  // e.g. 1e-3 for millisecond exports
};

FieldMapping field_mapping_from_json(const std::string& text);

struct LoadReport {
    std::size_t total_lines = 0;
    std::size_t loaded = 0;
    std::size_t skipped = 0;
    std::vector<std::size_t> bad_lines;  // 1-based, capped at 100 entries
};

// One JSON document per line; malformed lines are counted and skipped.
// Fails (DataError) if the file is unreadable or >10% of lines are bad.
std::vector<SensorRecord> load_jsonl(const std::filesystem::path& path,
                                     const FieldMapping& mapping, LoadReport* report = nullptr);

struct GridSpec {
    std::int64_t start = 0;
    double period_s = 30.0;
    std::size_t length = 0;

    double end() const { return static_cast<double>(start) + period_s * static_cast<double>(length); }
};

// OR-aggregation: a grid cell is 1 if any on state overlaps it. Records are
// state changes; a value persists until the next record of that sensor.
SensorSeries resample_binary(std::span<const SensorRecord> records, const GridSpec& grid);

struct SensorMeta {
    std::string sensor_id;
    std::string location;
    ReadingType type = ReadingType::motion;
};

enum class AnomalyKind { night_motion, door_left_open, off_schedule_activity };

std::string to_string(AnomalyKind kind);

struct AnomalyLabel {
    AnomalyKind kind = AnomalyKind::night_motion;
    std::string sensor_id;
    double start = 0.0;
    double end = 0.0;  // half-open [start, end)
};

struct Corpus {
    std::string name;
    GridSpec grid;
    std::vector<SensorMeta> sensors;    // binary sensors only, aligned with series
    std::vector<SensorSeries> series;   // shared grid
    std::vector<AnomalyLabel> labels;   // synthetic corpora only
};

// Contiguous leading folds: [start, training_len_s) and the following
// [.., testing_len_s). Both lengths must be whole grid multiples.
std::pair<Corpus, Corpus> split_folds(const Corpus& corpus, double training_len_s,
                                      double testing_len_s);

// -------------------------------------------------------------- synthetic

struct DailyBlock {
    int start_minute = 0;
    int duration_minutes = 0;
};

struct SyntheticSensor {
    std::string sensor_id;
    std::string location;
    ReadingType type = ReadingType::motion;
    std::vector<DailyBlock> daily_blocks;  // deterministic daily activations
};

struct InjectedAnomaly {
    AnomalyKind kind = AnomalyKind::night_motion;
    std::string sensor_id;
    int day = 0;           // day index from corpus start
    int start_minute = 0;  // local clock minute of that day
    int duration_minutes = 1;
};

struct SyntheticSpec {
    std::string name = "synthetic";
    std::int64_t start_time = 1600000000;  // midnight-aligned for clock rules
    int days = 7;
    double period_s = 30.0;
    std::vector<SyntheticSensor> sensors;
    double noise_rate = 0.0;  // per-sample probability of a spurious activation
    std::vector<InjectedAnomaly> anomalies;
    std::uint64_t seed = 0;
};

// Pure function of (spec, seed): identical inputs give bit-identical corpora.
Corpus generate_synthetic(const SyntheticSpec& spec);

// A small apartment-style corpus: four motion sensors and two contact
// sensors with daily routines plus 1-2 sample activation spikes.
SyntheticSpec default_synthetic_spec(std::uint64_t seed);

// Canonical anomaly trio on the last day of the corpus: nighttime motion at
// 02:00, a door left open at 15:00, and an off-schedule burst across every
// sensor at 22:00.
void inject_default_anomalies(SyntheticSpec& spec);

// ------------------------------------------------- corpus directory format

// manifest.json plus one `<sensor_id>.csv` (timestamp,value) per sensor.
void save_corpus(const Corpus& corpus, const std::filesystem::path& directory);
Corpus load_corpus(const std::filesystem::path& directory);

}  // namespace wtm
