#include "wtm/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wtm/common.hpp"
#include "wtm/io.hpp"

namespace wtm {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string lowercase(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

// Descends dotted paths ("payload.ts.$date").
const nlohmann::json* find_field(const nlohmann::json& doc, const std::string& path) {
    const nlohmann::json* node = &doc;
    std::size_t begin = 0;
    while (begin <= path.size()) {
        const std::size_t dot = path.find('.', begin);
        const std::string key = path.substr(begin, dot == std::string::npos ? dot : dot - begin);
        if (!node->is_object() || !node->contains(key)) return nullptr;
        node = &(*node)[key];
        if (dot == std::string::npos) break;
        begin = dot + 1;
    }
    return node;
}

bool parse_number(const nlohmann::json& node, double* out) {
    if (node.is_number()) {
        *out = node.get<double>();
        return true;
    }
    if (node.is_string()) {
        try {
            std::size_t used = 0;
            const std::string text = node.get<std::string>();
            const double v = std::stod(text, &used);
            if (used != text.size()) return false;
            *out = v;
            return true;
        } catch (...) {
            return false;
        }
    }
    return false;
}

bool parse_value(const nlohmann::json& node, double* out) {
    if (node.is_boolean()) {
        *out = node.get<bool>() ? 1.0 : 0.0;
        return true;
    }
    if (node.is_string()) {
        const std::string text = lowercase(node.get<std::string>());
        if (text == "on" || text == "true" || text == "open") {
            *out = 1.0;
            return true;
        }
        if (text == "off" || text == "false" || text == "closed") {
            *out = 0.0;
            return true;
        }
    }
    return parse_number(node, out);
}

std::string sanitize_filename(const std::string& id) {
    std::string out;
    for (const char c : id)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
    return out;
}

long long span_samples(double span_s, double period_s) {
    const double q = span_s / period_s;
    const double r = std::round(q);
    if (std::abs(q - r) > std::max(1e-9, std::abs(q) * 1e-12)) return -1;
    return static_cast<long long>(r);
}

double uniform01(std::mt19937_64& rng) {
    // fixed mapping instead of std::uniform_real_distribution, which is
    // implementation-defined and would break cross-toolchain reproducibility
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::string to_string(ReadingType type) {
    switch (type) {
        case ReadingType::motion: return "motion";
        case ReadingType::contact: return "contact";
        case ReadingType::humidity: return "humidity";
        case ReadingType::temperature: return "temperature";
        case ReadingType::light: return "light";
        case ReadingType::energy: return "energy";
    }
    return "motion";
}

std::optional<ReadingType> reading_type_from_string(const std::string& name) {
    const std::string key = lowercase(name);
    if (key == "motion" || key == "pir" || key == "presence") return ReadingType::motion;
    if (key == "contact" || key == "binary contact" || key == "door") return ReadingType::contact;
    if (key == "humidity") return ReadingType::humidity;
    if (key == "temperature") return ReadingType::temperature;
    if (key == "light" || key == "luminance") return ReadingType::light;
    if (key == "energy" || key == "energy consumption" || key == "power") return ReadingType::energy;
    return std::nullopt;
}

bool is_binary(ReadingType type) {
    return type == ReadingType::motion || type == ReadingType::contact;
}

std::string to_string(AnomalyKind kind) {
    switch (kind) {
        case AnomalyKind::night_motion: return "night_motion";
        case AnomalyKind::door_left_open: return "door_left_open";
        case AnomalyKind::off_schedule_activity: return "off_schedule_activity";
    }
    return "night_motion";
}

FieldMapping field_mapping_from_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("field mapping is not valid JSON: ") + e.what());
    }
    FieldMapping mapping;
    mapping.timestamp = doc.value("ts", mapping.timestamp);
    mapping.sensor = doc.value("sensor", mapping.sensor);
    mapping.location = doc.value("location", mapping.location);
    mapping.type = doc.value("type", mapping.type);
    mapping.value = doc.value("value", mapping.value);
    mapping.timestamp_scale = doc.value("timestamp_scale", mapping.timestamp_scale);
    return mapping;
}

std::vector<SensorRecord> load_jsonl(const std::filesystem::path& path,
                                     const FieldMapping& mapping, LoadReport* report) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());

    LoadReport local;
    std::vector<SensorRecord> records;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ++local.total_lines;

        const auto reject = [&] {
            ++local.skipped;
            if (local.bad_lines.size() < 100) local.bad_lines.push_back(line_number);
        };

        nlohmann::json doc = nlohmann::json::parse(line, nullptr, false);
        if (doc.is_discarded() || !doc.is_object()) {
            reject();
            continue;
        }
        const auto* ts_node = find_field(doc, mapping.timestamp);
        const auto* sensor_node = find_field(doc, mapping.sensor);
        const auto* type_node = find_field(doc, mapping.type);
        const auto* value_node = find_field(doc, mapping.value);
        if (!ts_node || !sensor_node || !type_node || !value_node || !sensor_node->is_string() ||
            !type_node->is_string()) {
            reject();
            continue;
        }
        SensorRecord record;
        if (!parse_number(*ts_node, &record.timestamp) || !std::isfinite(record.timestamp)) {
            reject();
            continue;
        }
        record.timestamp *= mapping.timestamp_scale;
        const auto type = reading_type_from_string(type_node->get<std::string>());
        if (!type || !parse_value(*value_node, &record.value)) {
            reject();
            continue;
        }
        record.type = *type;
        record.sensor_id = sensor_node->get<std::string>();
        if (const auto* loc = find_field(doc, mapping.location); loc && loc->is_string())
            record.location = loc->get<std::string>();
        records.push_back(std::move(record));
        ++local.loaded;
    }

    if (local.total_lines > 0 &&
        10 * local.skipped > local.total_lines) {
        std::ostringstream msg;
        msg << path.string() << ": " << local.skipped << " of " << local.total_lines
            << " lines malformed (over 10%)";
        if (report) *report = local;
        throw DataError(msg.str());
    }
    if (report) *report = local;
    return records;
}

SensorSeries resample_binary(std::span<const SensorRecord> records, const GridSpec& grid) {
    SensorSeries series;
    series.sampling_frequency_hz = 1.0 / grid.period_s;
    series.time_reference_posix_s = grid.start;
    series.values.assign(grid.length, 0);
    if (records.empty()) return series;

    if (!is_binary(records.front().type))
        throw InvalidInput("resample_binary: sensor " + records.front().sensor_id +
                           " is not a binary reading type");
    series.sensor_id = records.front().sensor_id;
    series.location = records.front().location;

    std::vector<const SensorRecord*> sorted;
    sorted.reserve(records.size());
    for (const auto& r : records) {
        if (r.sensor_id != series.sensor_id)
            throw InvalidInput("resample_binary: records mix several sensors");
        sorted.push_back(&r);
    }
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto* a, const auto* b) { return a->timestamp < b->timestamp; });

    const double grid_start = static_cast<double>(grid.start);
    const double grid_end = grid.end();
    const auto mark_span = [&](double a, double b) {
        // cells with nonzero overlap of [a, b); instantaneous events mark
        // the cell containing a
        a = std::max(a, grid_start);
        b = std::min(b, grid_end);
        if (a >= grid_end || b < grid_start) return;
        auto first = static_cast<long long>(std::floor((a - grid_start) / grid.period_s));
        double upper = (b - grid_start) / grid.period_s;
        auto last = static_cast<long long>(std::ceil(upper)) - 1;
        if (last < first) last = first;  // zero-length event
        first = std::max<long long>(first, 0);
        last = std::min<long long>(last, static_cast<long long>(grid.length) - 1);
        for (long long i = first; i <= last; ++i) series.values[static_cast<std::size_t>(i)] = 1;
    };

    bool on = false;
    double on_since = 0.0;
    for (const auto* record : sorted) {
        const bool active = record->value >= 0.5;
        if (active && !on) {
            on = true;
            on_since = record->timestamp;
        } else if (!active && on) {
            on = false;
            mark_span(on_since, record->timestamp);
        } else if (active && on) {
            // repeated on report keeps the span open
        }
    }
    if (on) mark_span(on_since, grid_end);
    return series;
}

std::pair<Corpus, Corpus> split_folds(const Corpus& corpus, double training_len_s,
                                      double testing_len_s) {
    const long long train_samples = span_samples(training_len_s, corpus.grid.period_s);
    const long long test_samples = span_samples(testing_len_s, corpus.grid.period_s);
    if (train_samples < 1) throw InvalidInput("split_folds: training fold is not a positive grid span");
    if (test_samples < 1) throw InvalidInput("split_folds: testing fold is not a positive grid span");
    if (static_cast<std::size_t>(train_samples + test_samples) > corpus.grid.length)
        throw InvalidInput("split_folds: corpus shorter than the requested folds");

    const auto slice = [&](std::size_t offset, std::size_t count) {
        Corpus part;
        part.name = corpus.name;
        part.sensors = corpus.sensors;
        part.grid.period_s = corpus.grid.period_s;
        part.grid.length = count;
        part.grid.start = corpus.grid.start +
                          static_cast<std::int64_t>(std::llround(
                              static_cast<double>(offset) * corpus.grid.period_s));
        for (const auto& s : corpus.series) {
            SensorSeries cut = s;
            cut.time_reference_posix_s = part.grid.start;
            cut.values.assign(s.values.begin() + static_cast<std::ptrdiff_t>(offset),
                              s.values.begin() + static_cast<std::ptrdiff_t>(offset + count));
            part.series.push_back(std::move(cut));
        }
        const double lo = static_cast<double>(part.grid.start);
        const double hi = part.grid.end();
        for (const auto& label : corpus.labels) {
            if (label.end > lo && label.start < hi) part.labels.push_back(label);
        }
        return part;
    };
    return {slice(0, static_cast<std::size_t>(train_samples)),
            slice(static_cast<std::size_t>(train_samples), static_cast<std::size_t>(test_samples))};
}

Corpus generate_synthetic(const SyntheticSpec& spec) {
    if (spec.days < 1) throw InvalidInput("generate_synthetic: needs at least one day");
    const long long day_span = span_samples(86400.0, spec.period_s);
    if (day_span < 1) throw InvalidInput("generate_synthetic: period does not divide one day");
    const auto per_day = static_cast<std::size_t>(day_span);

    Corpus corpus;
    corpus.name = spec.name;
    corpus.grid.start = spec.start_time;
    corpus.grid.period_s = spec.period_s;
    corpus.grid.length = per_day * static_cast<std::size_t>(spec.days);

    const auto minute_samples = static_cast<std::size_t>(std::llround(60.0 / spec.period_s));
    std::mt19937_64 rng(spec.seed);

    for (const auto& sensor : spec.sensors) {
        SensorSeries series;
        series.sensor_id = sensor.sensor_id;
        series.location = sensor.location;
        series.sampling_frequency_hz = 1.0 / spec.period_s;
        series.time_reference_posix_s = spec.start_time;
        series.values.assign(corpus.grid.length, 0);
        for (int day = 0; day < spec.days; ++day) {
            const std::size_t day_offset = static_cast<std::size_t>(day) * per_day;
            for (const auto& block : sensor.daily_blocks) {
                const std::size_t begin =
                    day_offset + static_cast<std::size_t>(block.start_minute) * minute_samples;
                const std::size_t end =
                    begin + static_cast<std::size_t>(block.duration_minutes) * minute_samples;
                for (std::size_t i = begin; i < end && i < corpus.grid.length; ++i)
                    series.values[i] = 1;
            }
        }
        if (spec.noise_rate > 0.0) {
            for (auto& v : series.values) {
                if (uniform01(rng) < spec.noise_rate) v = 1;
            }
        }
        corpus.sensors.push_back({sensor.sensor_id, sensor.location, sensor.type});
        corpus.series.push_back(std::move(series));
    }

    for (const auto& anomaly : spec.anomalies) {
        const auto found = std::find_if(corpus.series.begin(), corpus.series.end(),
                                        [&](const auto& s) { return s.sensor_id == anomaly.sensor_id; });
        if (found == corpus.series.end())
            throw InvalidInput("generate_synthetic: anomaly names unknown sensor " + anomaly.sensor_id);
        const std::size_t begin = static_cast<std::size_t>(anomaly.day) * per_day +
                                  static_cast<std::size_t>(anomaly.start_minute) * minute_samples;
        const std::size_t end = begin + static_cast<std::size_t>(anomaly.duration_minutes) * minute_samples;
        if (end > corpus.grid.length)
            throw InvalidInput("generate_synthetic: anomaly runs past the corpus end");
        for (std::size_t i = begin; i < end; ++i) found->values[i] = 1;

        AnomalyLabel label;
        label.kind = anomaly.kind;
        label.sensor_id = anomaly.sensor_id;
        label.start = static_cast<double>(spec.start_time) +
                      static_cast<double>(begin) * spec.period_s;
        label.end = static_cast<double>(spec.start_time) + static_cast<double>(end) * spec.period_s;
        corpus.labels.push_back(label);
    }
    return corpus;
}

SyntheticSpec default_synthetic_spec(std::uint64_t seed) {
    SyntheticSpec spec;
    spec.name = "synthetic-apartment";
    spec.start_time = 1599955200;  // a midnight, so clock rules line up
    spec.days = 7;
    spec.seed = seed;
    spec.noise_rate = 0.002;
    spec.sensors = {
        {"entrance_motion", "Entrance", ReadingType::motion,
         {{8 * 60, 10}, {17 * 60 + 30, 10}}},
        {"kitchen_motion", "Kitchen", ReadingType::motion,
         {{7 * 60 + 30, 30}, {12 * 60, 45}, {19 * 60, 30}}},
        {"lounge_motion", "Lounge", ReadingType::motion,
         {{12 * 60 + 45, 45}, {20 * 60, 90}}},
        {"workshop_motion", "Workshop", ReadingType::motion,
         {{9 * 60, 150}, {14 * 60, 150}}},
        {"fridge_door", "Fridge", ReadingType::contact,
         {{7 * 60 + 35, 1}, {12 * 60 + 10, 1}, {19 * 60 + 10, 1}}},
        {"entrance_door", "Entrance", ReadingType::contact,
         {{8 * 60, 1}, {12 * 60 + 55, 1}, {17 * 60 + 30, 1}}},
    };
    return spec;
}

void inject_default_anomalies(SyntheticSpec& spec) {
    // the single-sensor anomalies sit in quiet hours, where one active
    // sensor keeps the entropy at zero and only the expert rules can fire
    const int last_day = spec.days - 1;
    spec.anomalies.push_back({AnomalyKind::night_motion, "lounge_motion", last_day, 2 * 60, 10});
    spec.anomalies.push_back(
        {AnomalyKind::door_left_open, "entrance_door", last_day, 3 * 60 + 30, 10});
    for (const auto& sensor : spec.sensors)
        spec.anomalies.push_back(
            {AnomalyKind::off_schedule_activity, sensor.sensor_id, last_day, 22 * 60, 10});
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& directory) {
    std::filesystem::create_directories(directory);
    ordered_json manifest;
    manifest["format_version"] = 1;
    manifest["name"] = corpus.name;
    manifest["grid"] = {{"start", corpus.grid.start},
                        {"period_s", corpus.grid.period_s},
                        {"length", corpus.grid.length}};
    ordered_json sensors = ordered_json::array();
    for (std::size_t i = 0; i < corpus.sensors.size(); ++i) {
        const auto& meta = corpus.sensors[i];
        const std::string csv = sanitize_filename(meta.sensor_id) + ".csv";
        sensors.push_back({{"id", meta.sensor_id},
                           {"location", meta.location},
                           {"type", to_string(meta.type)},
                           {"csv", csv}});
        std::string body = "timestamp,value\n";
        const auto& series = corpus.series[i];
        for (std::size_t n = 0; n < series.values.size(); ++n) {
            body += format_double(series.timestamp_at(n));
            body += ',';
            body += series.values[n] ? '1' : '0';
            body += '\n';
        }
        write_file_atomic(directory / csv, body);
    }
    manifest["sensors"] = std::move(sensors);
    ordered_json labels = ordered_json::array();
    for (const auto& label : corpus.labels) {
        labels.push_back({{"kind", to_string(label.kind)},
                          {"sensor", label.sensor_id},
                          {"start", label.start},
                          {"end", label.end}});
    }
    manifest["labels"] = std::move(labels);
    write_file_atomic(directory / "manifest.json", manifest.dump(2) + "\n");
}

Corpus load_corpus(const std::filesystem::path& directory) {
    ordered_json manifest;
    try {
        manifest = ordered_json::parse(read_file(directory / "manifest.json"));
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("corpus manifest is not valid JSON: ") + e.what());
    }
    if (manifest.value("format_version", 0) != 1)
        throw DataError("corpus manifest has an unsupported format");

    Corpus corpus;
    try {
        corpus.name = manifest.at("name").get<std::string>();
        corpus.grid.start = manifest.at("grid").at("start").get<std::int64_t>();
        corpus.grid.period_s = manifest.at("grid").at("period_s").get<double>();
        corpus.grid.length = manifest.at("grid").at("length").get<std::size_t>();
        for (const auto& entry : manifest.at("sensors")) {
            SensorMeta meta;
            meta.sensor_id = entry.at("id").get<std::string>();
            meta.location = entry.value("location", "");
            const auto type = reading_type_from_string(entry.at("type").get<std::string>());
            if (!type) throw DataError("corpus manifest names an unknown reading type");
            meta.type = *type;

            SensorSeries series;
            series.sensor_id = meta.sensor_id;
            series.location = meta.location;
            series.sampling_frequency_hz = 1.0 / corpus.grid.period_s;
            series.time_reference_posix_s = corpus.grid.start;
            series.values.reserve(corpus.grid.length);
            std::istringstream csv(read_file(directory / entry.at("csv").get<std::string>()));
            std::string line;
            std::getline(csv, line);  // header
            while (std::getline(csv, line)) {
                const std::size_t comma = line.rfind(',');
                if (comma == std::string::npos) throw DataError("corpus CSV row without a comma");
                series.values.push_back(line[comma + 1] == '1' ? 1 : 0);
            }
            if (series.values.size() != corpus.grid.length)
                throw DataError("corpus CSV " + meta.sensor_id + " does not match the grid length");
            corpus.sensors.push_back(std::move(meta));
            corpus.series.push_back(std::move(series));
        }
        for (const auto& entry : manifest.value("labels", ordered_json::array())) {
            AnomalyLabel label;
            const std::string kind = entry.at("kind").get<std::string>();
            if (kind == "night_motion") label.kind = AnomalyKind::night_motion;
            else if (kind == "door_left_open") label.kind = AnomalyKind::door_left_open;
            else if (kind == "off_schedule_activity") label.kind = AnomalyKind::off_schedule_activity;
            else throw DataError("corpus manifest names an unknown anomaly kind");
            label.sensor_id = entry.at("sensor").get<std::string>();
            label.start = entry.at("start").get<double>();
            label.end = entry.at("end").get<double>();
            corpus.labels.push_back(label);
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("corpus manifest is missing fields: ") + e.what());
    }
    return corpus;
}

}  // namespace wtm
