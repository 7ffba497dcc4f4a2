#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wtm/activity.hpp"
#include "wtm/common.hpp"
#include "wtm/fremen.hpp"
#include "wtm/inference.hpp"
#include "wtm/ingest.hpp"
#include "wtm/io.hpp"
#include "wtm/metrics.hpp"
#include "wtm/model.hpp"
#include "wtm/wavelet.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace wtm::cli {

namespace {

// ------------------------------------------------------------- run output

// Collects artifacts and parameters, then writes the run manifest. The
// manifest carries no clocks or hostnames so reruns stay byte-identical.
class RunWriter {
public:
    RunWriter(std::string command, const std::string& out_dir)
        : command_(std::move(command)), dir_(out_dir) {
        if (out_dir.empty()) throw InvalidInput("--out is required");
        fs::create_directories(dir_);
    }

    const fs::path& dir() const { return dir_; }

    void parameter(const std::string& key, const std::string& value) { parameters_[key] = value; }
    void parameter(const std::string& key, double value) { parameters_[key] = format_double(value); }
    void parameter(const std::string& key, std::int64_t value) {
        parameters_[key] = std::to_string(value);
    }

    void write(const std::string& name, const std::string& content) {
        write_file_atomic(dir_ / name, content);
        artifacts_.push_back(name);
    }

    fs::path subdir(const std::string& name) {
        fs::create_directories(dir_ / name);
        artifacts_.push_back(name + "/");
        return dir_ / name;
    }

    void finish() {
        ordered_json manifest;
        manifest["format_version"] = 1;
        manifest["command"] = command_;
        ordered_json params;
        for (const auto& [k, v] : parameters_) params[k] = v;
        manifest["parameters"] = std::move(params);
        manifest["artifacts"] = artifacts_;
        write_file_atomic(dir_ / "manifest.json", manifest.dump(2) + "\n");
    }

private:
    std::string command_;
    fs::path dir_;
    std::map<std::string, std::string> parameters_;
    std::vector<std::string> artifacts_;
};

// ------------------------------------------------------------- durations

double parse_duration_s(const std::string& text) {
    if (text.empty()) throw InvalidInput("empty duration");
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    const std::string unit = text.substr(used);
    if (unit.empty() || unit == "s") return value;
    if (unit == "m") return value * 60.0;
    if (unit == "h") return value * 3600.0;
    if (unit == "d") return value * 86400.0;
    if (unit == "w") return value * 7.0 * 86400.0;
    throw InvalidInput("unknown duration unit in " + text);
}

struct FoldWindow {
    double from = 0.0;
    double to = 0.0;  // inclusive last sample instant
};

FoldWindow fold_window(const Corpus& corpus, const std::string& train_window,
                       const std::string& test_window, const std::string& fold) {
    const double start = static_cast<double>(corpus.grid.start);
    const double period = corpus.grid.period_s;
    const double whole = period * static_cast<double>(corpus.grid.length);
    const double train_s = train_window.empty() ? whole : parse_duration_s(train_window);
    if (fold == "train") return {start, start + train_s - period};
    if (fold != "test") throw InvalidInput("--fold must be train or test");
    if (test_window.empty()) throw InvalidInput("--test-window is required for the test fold");
    const double test_s = parse_duration_s(test_window);
    if (train_s + test_s > whole + 1e-9)
        throw InvalidInput("folds run past the end of the corpus");
    return {start + train_s, start + train_s + test_s - period};
}

Corpus training_fold(const Corpus& corpus, const std::string& train_window) {
    if (train_window.empty()) return corpus;
    const double train_s = parse_duration_s(train_window);
    const double whole = corpus.grid.period_s * static_cast<double>(corpus.grid.length);
    if (train_s >= whole) return corpus;
    return split_folds(corpus, train_s, whole - train_s).first;
}

// --------------------------------------------------------------- csv io

std::string series_csv(const SensorSeries& series) {
    std::string body = "timestamp,value\n";
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        body += format_double(series.timestamp_at(i));
        body += ',';
        body += series.values[i] ? '1' : '0';
        body += '\n';
    }
    return body;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

Table read_csv(const fs::path& path) {
    std::istringstream in(read_file(path));
    Table table;
    std::string line;
    if (!std::getline(in, line)) throw DataError(path.string() + " is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    table.header = split_csv_line(line);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        table.rows.push_back(split_csv_line(line));
    }
    return table;
}

double csv_number(const std::string& field, const fs::path& path) {
    try {
        return std::stod(field);
    } catch (...) {
        throw DataError(path.string() + ": expected a number, got '" + field + "'");
    }
}

struct EntropyFile {
    std::vector<double> timestamps;
    std::vector<double> real;
    std::vector<double> expected;  // empty when the column is absent
};

// Entropy CSVs carry percentages (0-100); in memory everything is [0,1].
EntropyFile read_entropy_csv(const fs::path& path) {
    const Table table = read_csv(path);
    if (table.header.size() < 2 || table.header[0] != "timestamp")
        throw DataError(path.string() + " is not an entropy stream CSV");
    const bool has_expected = table.header.size() >= 3;
    EntropyFile file;
    for (const auto& row : table.rows) {
        file.timestamps.push_back(csv_number(row.at(0), path));
        file.real.push_back(csv_number(row.at(1), path) / 100.0);
        if (has_expected) file.expected.push_back(csv_number(row.at(2), path) / 100.0);
    }
    return file;
}

std::string detection_csv(const DetectionRun& run) {
    std::string body = "timestamp,flag,probability,triggered_clauses\n";
    for (std::size_t i = 0; i < run.timestamps.size(); ++i) {
        body += format_double(run.timestamps[i]);
        body += ',';
        body += run.flags[i] ? '1' : '0';
        body += ',';
        body += format_double(run.scores[i]);
        body += ',';
        if (!run.triggered.empty()) body += run.triggered[i];
        body += '\n';
    }
    return body;
}

DetectionRun read_detection_csv(const fs::path& path) {
    const Table table = read_csv(path);
    if (table.header.size() < 3 || table.header[0] != "timestamp" || table.header[1] != "flag")
        throw DataError(path.string() + " is not a detection run CSV");
    DetectionRun run;
    std::string name = path.stem().string();
    if (name.starts_with("detection_")) name = name.substr(10);
    run.detector_name = name;
    for (const auto& row : table.rows) {
        run.timestamps.push_back(csv_number(row.at(0), path));
        run.flags.push_back(row.at(1) == "1" ? 1 : 0);
        run.scores.push_back(csv_number(row.at(2), path));
        run.triggered.push_back(row.size() > 3 ? row[3] : "");
    }
    return run;
}

SensorSeries read_series_csv(const fs::path& path) {
    const Table table = read_csv(path);
    if (table.header.size() < 2 || table.header[0] != "timestamp")
        throw DataError(path.string() + " is not a series CSV");
    SensorSeries series;
    series.sensor_id = path.stem().string();
    if (table.rows.size() < 2) throw DataError(path.string() + " holds fewer than 2 samples");
    const double t0 = csv_number(table.rows[0].at(0), path);
    const double t1 = csv_number(table.rows[1].at(0), path);
    series.time_reference_posix_s = static_cast<std::int64_t>(std::llround(t0));
    series.sampling_frequency_hz = 1.0 / (t1 - t0);
    for (const auto& row : table.rows)
        series.values.push_back(row.at(1) == "1" ? 1 : 0);
    return series;
}

// ------------------------------------------------------------- model sets

SensorSeries forecast_series_fremen(const FremenModel& model, double from, double to, double fs) {
    SensorSeries out;
    out.sensor_id = model.sensor_id;
    out.sampling_frequency_hz = fs;
    out.time_reference_posix_s = static_cast<std::int64_t>(std::llround(from));
    const auto count = static_cast<std::size_t>(std::llround((to - from) * fs)) + 1;
    out.values.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = from + static_cast<double>(i) / fs;
        out.values[i] = static_cast<std::uint8_t>(predict_fremen(model, t).value);
    }
    return out;
}

// Forecast one series per binary corpus sensor over [from, to]. Accepts a
// directory of either wavelet or fremen models.
std::vector<SensorSeries> expected_series(const fs::path& models_dir, const Corpus& corpus,
                                          double from, double to) {
    const double rate = 1.0 / corpus.grid.period_s;
    std::map<std::string, WaveletModel> wavelet_by_id;
    std::map<std::string, FremenModel> fremen_by_id;
    for (const auto& entry : fs::directory_iterator(models_dir)) {
        const std::string name = entry.path().filename().string();
        if (name.ends_with(".wmodel.json")) {
            auto model = load_model(entry.path());
            wavelet_by_id.emplace(model.sensor_id, std::move(model));
        } else if (name.ends_with(".fremen.json")) {
            auto model = load_model_fremen(entry.path());
            fremen_by_id.emplace(model.sensor_id, std::move(model));
        }
    }
    std::vector<SensorSeries> out;
    for (const auto& meta : corpus.sensors) {
        if (const auto it = wavelet_by_id.find(meta.sensor_id); it != wavelet_by_id.end()) {
            out.push_back(forecast_window(it->second, from, to));
        } else if (const auto fit = fremen_by_id.find(meta.sensor_id); fit != fremen_by_id.end()) {
            out.push_back(forecast_series_fremen(fit->second, from, to, rate));
        } else {
            throw ConfigError("no model for sensor " + meta.sensor_id + " under " +
                              models_dir.string());
        }
    }
    return out;
}

// Grid-aligned slice of every corpus series covering [window.from, window.to].
std::vector<SensorSeries> fold_slice(const Corpus& corpus, const FoldWindow& window) {
    const double period = corpus.grid.period_s;
    const auto offset = static_cast<std::size_t>(
        std::llround((window.from - static_cast<double>(corpus.grid.start)) / period));
    const auto count =
        static_cast<std::size_t>(std::llround((window.to - window.from) / period)) + 1;
    if (offset + count > corpus.grid.length)
        throw InvalidInput("fold window runs past the end of the corpus");
    std::vector<SensorSeries> out;
    for (const auto& series : corpus.series) {
        SensorSeries cut = series;
        cut.time_reference_posix_s = static_cast<std::int64_t>(std::llround(window.from));
        cut.values.assign(series.values.begin() + static_cast<std::ptrdiff_t>(offset),
                          series.values.begin() + static_cast<std::ptrdiff_t>(offset + count));
        out.push_back(std::move(cut));
    }
    return out;
}

std::string entropy_csv(const std::vector<ActivitySnapshot>& real,
                        const std::vector<ActivitySnapshot>* expected) {
    std::string body = expected ? "timestamp,entropy_real,entropy_expected\n"
                                : "timestamp,entropy_real\n";
    for (std::size_t i = 0; i < real.size(); ++i) {
        body += format_double(real[i].window_start);
        body += ',';
        body += format_double(100.0 * real[i].normalized_entropy);
        if (expected) {
            body += ',';
            body += format_double(100.0 * (*expected)[i].normalized_entropy);
        }
        body += '\n';
    }
    return body;
}

RuleConfig load_rules(const std::string& rules_path, const std::string& weight_overrides) {
    RuleConfig rules;
    if (!rules_path.empty()) rules = rule_config_from_json(read_file(rules_path));
    if (!weight_overrides.empty()) {
        std::istringstream in(weight_overrides);
        std::string item;
        while (std::getline(in, item, ',')) {
            const std::size_t eq = item.find('=');
            if (eq == std::string::npos)
                throw InvalidInput("--weights expects clause=value pairs, got " + item);
            const std::string id = item.substr(0, eq);
            if (id == "prior") {
                rules.prior_weight = std::stod(item.substr(eq + 1));
            } else {
                if (!rules.clause_weights.contains(id))
                    throw InvalidInput("--weights names an unknown clause: " + id);
                rules.clause_weights[id] = std::stod(item.substr(eq + 1));
            }
        }
    }
    rules.validate();
    return rules;
}

std::string metrics_json(const MetricsReport& report, const std::string& kind) {
    const auto field = [](double v) {
        return std::isnan(v) ? ordered_json(nullptr) : ordered_json(v);
    };
    ordered_json doc;
    doc["format_version"] = 1;
    doc["kind"] = kind;
    if (kind == "classification") {
        doc["precision"] = field(report.precision);
        doc["recall"] = field(report.recall);
        doc["accuracy"] = field(report.accuracy);
        doc["f1"] = field(report.f1);
    } else {
        doc["rmse"] = field(report.rmse);
        doc["pearson_correlation"] = field(report.pearson_correlation);
        doc["explained_variance"] = field(report.explained_variance);
    }
    return doc.dump(2) + "\n";
}

}  // namespace

// ---------------------------------------------------------------- ingest

int cmd_ingest(const IngestOptions& options) {
    RunWriter run("ingest", options.out);
    Corpus corpus;
    LoadReport report;
    std::size_t analog_records = 0;

    if (options.synthetic) {
        SyntheticSpec spec = default_synthetic_spec(options.seed);
        spec.name = options.name;
        spec.days = options.days;
        spec.noise_rate = options.noise;
        spec.period_s = options.period_s;
        if (options.inject_anomalies) inject_default_anomalies(spec);
        corpus = generate_synthetic(spec);
        run.parameter("source", std::string("synthetic"));
        run.parameter("seed", static_cast<std::int64_t>(options.seed));
        run.parameter("days", static_cast<std::int64_t>(options.days));
        run.parameter("noise", options.noise);
        run.parameter("inject_anomalies", std::string(options.inject_anomalies ? "yes" : "no"));
    } else {
        if (options.jsonl.empty())
            throw InvalidInput("ingest needs --jsonl FILE or --synthetic");
        FieldMapping mapping;
        if (!options.mapping.empty())
            mapping = field_mapping_from_json(read_file(options.mapping));
        const auto records = load_jsonl(options.jsonl, mapping, &report);
        if (records.empty()) throw DataError(options.jsonl + " holds no usable records");

        double min_ts = records.front().timestamp, max_ts = records.front().timestamp;
        for (const auto& r : records) {
            min_ts = std::min(min_ts, r.timestamp);
            max_ts = std::max(max_ts, r.timestamp);
        }
        GridSpec grid;
        grid.period_s = options.period_s;
        grid.start = static_cast<std::int64_t>(
            std::floor(min_ts / options.period_s) * options.period_s);
        grid.length = static_cast<std::size_t>(
                          std::floor((max_ts - static_cast<double>(grid.start)) / options.period_s)) +
                      1;

        std::map<std::string, std::vector<SensorRecord>> by_sensor;
        std::map<std::string, ReadingType> sensor_type;
        std::map<std::string, std::string> sensor_location;
        for (const auto& r : records) {
            if (!is_binary(r.type)) {
                ++analog_records;  // parsed and counted, excluded from modelling
                continue;
            }
            by_sensor[r.sensor_id].push_back(r);
            sensor_type[r.sensor_id] = r.type;
            sensor_location[r.sensor_id] = r.location;
        }
        if (by_sensor.empty()) throw DataError(options.jsonl + " holds no binary sensors");

        corpus.name = fs::path(options.jsonl).stem().string();
        corpus.grid = grid;
        for (const auto& [id, sensor_records] : by_sensor) {
            corpus.sensors.push_back({id, sensor_location[id], sensor_type[id]});
            corpus.series.push_back(resample_binary(sensor_records, grid));
        }
        run.parameter("source", options.jsonl);
        run.parameter("mapping", options.mapping.empty() ? "default" : options.mapping);
    }
    run.parameter("period_s", options.period_s);
    run.parameter("name", corpus.name);

    save_corpus(corpus, run.dir() / "corpus");

    ordered_json summary;
    summary["format_version"] = 1;
    summary["sensors"] = corpus.sensors.size();
    summary["samples_per_sensor"] = corpus.grid.length;
    summary["labels"] = corpus.labels.size();
    summary["lines_total"] = report.total_lines;
    summary["lines_skipped"] = report.skipped;
    summary["bad_lines"] = report.bad_lines;
    summary["analog_records_excluded"] = analog_records;
    run.write("ingest_report.json", summary.dump(2) + "\n");
    run.finish();
    return 0;
}

// ----------------------------------------------------------------- train

int cmd_train(const TrainOptions& options) {
    RunWriter run("train", options.out);
    const Corpus corpus = load_corpus(options.corpus);
    const Corpus fold = training_fold(corpus, options.train_window);
    run.parameter("corpus", options.corpus);
    run.parameter("kind", options.kind);
    run.parameter("train_window", options.train_window.empty() ? "all" : options.train_window);

    const fs::path models_dir = run.subdir("models");
    ordered_json sensor_report = ordered_json::array();

    if (options.kind == "wavelet") {
        std::string wavelet_name = options.wavelet;
        if (wavelet_name == "auto") {
            std::vector<std::vector<double>> signals;
            for (const auto& series : fold.series) {
                std::vector<double> x(series.values.begin(), series.values.end());
                if (x.size() % 2 != 0) x.push_back(0.0);
                signals.push_back(std::move(x));
            }
            const double probe_tau = options.tau == "lossless" ? 0.54 : std::stod(options.tau);
            const auto selection =
                select_mother_wavelet(signals, wavelet_catalog(), probe_tau);
            wavelet_name = selection.winner;
            std::string csv = "family,mean_rmse\n";
            for (const auto& entry : selection.report) {
                csv += entry.family_name;
                csv += ',';
                csv += format_double(entry.mean_rmse);
                csv += '\n';
            }
            run.write("selection_report.csv", csv);
        }
        run.parameter("wavelet", wavelet_name);
        run.parameter("levels", static_cast<std::int64_t>(options.levels));
        run.parameter("tau", options.tau);

        for (const auto& series : fold.series) {
            const double tau = options.tau == "lossless"
                                   ? find_lossless_tau(series, wavelet_name, options.levels)
                                   : std::stod(options.tau);
            const WaveletModel model = build_model(series, wavelet_name, options.levels, tau);
            save_model(model, models_dir / (model.sensor_id + ".wmodel.json"));
            sensor_report.push_back({{"sensor", model.sensor_id},
                                     {"tau", model.threshold},
                                     {"kept_count", model.kept_count},
                                     {"total_coefficients", model.padded_samples},
                                     {"training_rmse", model.training_rmse}});
        }
    } else if (options.kind == "fremen") {
        run.parameter("components", static_cast<std::int64_t>(options.components));
        for (const auto& series : fold.series) {
            const FremenModel model = fit_fremen(series, options.components);
            save_model(model, models_dir / (model.sensor_id + ".fremen.json"));
            sensor_report.push_back({{"sensor", model.sensor_id},
                                     {"mean_activation", model.mean_activation},
                                     {"components", model.components.size()}});
        }
    } else {
        throw InvalidInput("--kind must be wavelet or fremen");
    }

    ordered_json report;
    report["format_version"] = 1;
    report["kind"] = options.kind;
    report["sensors"] = std::move(sensor_report);
    run.write("train_report.json", report.dump(2) + "\n");
    run.finish();
    return 0;
}

// -------------------------------------------------------------- forecast

int cmd_forecast(const ForecastOptions& options) {
    RunWriter run("forecast", options.out);
    double from = options.from, to = options.to;
    double fs = 0.0;
    if (!options.corpus.empty()) {
        const Corpus corpus = load_corpus(options.corpus);
        const FoldWindow window =
            fold_window(corpus, options.train_window, options.test_window, options.fold);
        from = window.from;
        to = window.to;
        fs = 1.0 / corpus.grid.period_s;
        run.parameter("fold", options.fold);
    } else if (!(to > from)) {
        throw InvalidInput("forecast needs --corpus with fold windows, or --from/--to");
    }
    run.parameter("models", options.models);
    run.parameter("from", from);
    run.parameter("to", to);

    run.subdir("forecast");
    bool wrote = false;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(options.models)) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
        const std::string name = file.filename().string();
        if (name.ends_with(".wmodel.json")) {
            const WaveletModel model = load_model(file);
            const auto series = forecast_window(model, from, to);
            run.write("forecast/" + model.sensor_id + ".csv", series_csv(series));
            wrote = true;
        } else if (name.ends_with(".fremen.json")) {
            const FremenModel model = load_model_fremen(file);
            const double rate = fs > 0.0 ? fs : 1.0 / 30.0;
            const auto series = forecast_series_fremen(model, from, to, rate);
            run.write("forecast/" + model.sensor_id + ".csv", series_csv(series));
            wrote = true;
        }
    }
    if (!wrote) throw DataError("no model files under " + options.models);
    run.finish();
    return 0;
}

// --------------------------------------------------------------- entropy

int cmd_entropy(const EntropyOptions& options) {
    RunWriter run("entropy", options.out);
    const Corpus corpus = load_corpus(options.corpus);
    const FoldWindow window =
        fold_window(corpus, options.train_window, options.test_window, options.fold);
    const std::vector<SensorSeries> fold_series = fold_slice(corpus, window);

    const double window_s =
        options.window.empty() ? corpus.grid.period_s : parse_duration_s(options.window);
    const double stride_s =
        options.stride.empty() ? corpus.grid.period_s : parse_duration_s(options.stride);
    run.parameter("corpus", options.corpus);
    run.parameter("fold", options.fold);
    run.parameter("window_s", window_s);
    run.parameter("stride_s", stride_s);

    const auto real_stream = entropy_stream(fold_series, window_s, stride_s);

    if (!options.models.empty()) {
        const auto forecasts =
            expected_series(options.models, corpus, window.from, window.to);
        const auto expected_stream = entropy_stream(forecasts, window_s, stride_s);
        if (expected_stream.size() != real_stream.size())
            throw DataError("forecast stream does not align with the real stream");
        run.parameter("models", options.models);
        run.write("entropy.csv", entropy_csv(real_stream, &expected_stream));
    } else {
        run.write("entropy.csv", entropy_csv(real_stream, nullptr));
    }
    run.finish();
    return 0;
}

// ---------------------------------------------------------------- detect

int cmd_detect(const DetectOptions& options) {
    if (options.detector != "hmln" && options.detector != "hmln_star" &&
        options.detector != "gaussian1d" && options.detector != "lof")
        throw InvalidInput("--detector must be hmln, hmln_star, gaussian1d or lof");
    RunWriter run("detect", options.out);
    const EntropyFile entropy = read_entropy_csv(options.entropy);
    run.parameter("detector", options.detector);
    run.parameter("entropy", options.entropy);

    DetectionRun result;
    if (options.detector == "hmln" || options.detector == "hmln_star") {
        if (options.corpus.empty())
            throw InvalidInput("the hmln detectors need --corpus for sensor evidence");
        if (entropy.expected.empty())
            throw ConfigError(options.entropy +
                              " lacks the entropy_expected column the hmln detectors require");
        const Corpus corpus = load_corpus(options.corpus);
        std::vector<SensorSeries> contacts, motions;
        for (std::size_t i = 0; i < corpus.sensors.size(); ++i) {
            if (corpus.sensors[i].type == ReadingType::contact)
                contacts.push_back(corpus.series[i]);
            else if (corpus.sensors[i].type == ReadingType::motion)
                motions.push_back(corpus.series[i]);
        }
        const RuleConfig rules = load_rules(options.rules, options.weights);
        const auto evidence = build_evidence_stream(entropy.timestamps, entropy.real,
                                                    entropy.expected, contacts, motions, rules);
        result = detect_hmln(evidence, rules, options.detector == "hmln");
        run.parameter("rules", options.rules.empty() ? "defaults" : options.rules);
    } else if (options.detector == "gaussian1d") {
        result = detect_gaussian1d(entropy.timestamps, entropy.real, options.z_threshold);
        run.parameter("z_threshold", options.z_threshold);
    } else if (options.detector == "lof") {
        const LofEmbedding embedding = options.embedding == "value"
                                           ? LofEmbedding::value_only
                                           : LofEmbedding::value_daily;
        result = detect_lof(entropy.timestamps, entropy.real, options.neighbors,
                            options.lof_threshold, embedding);
        run.parameter("neighbors", static_cast<std::int64_t>(options.neighbors));
        run.parameter("lof_threshold", options.lof_threshold);
        run.parameter("embedding", options.embedding);
    }

    run.write("detection_" + result.detector_name + ".csv", detection_csv(result));
    ordered_json summary;
    summary["format_version"] = 1;
    summary["detector"] = result.detector_name;
    summary["steps"] = result.timestamps.size();
    summary["flags"] = result.flag_count();
    run.write("detect_report.json", summary.dump(2) + "\n");
    run.finish();
    return 0;
}

// -------------------------------------------------------------- evaluate

int cmd_evaluate(const EvaluateOptions& options) {
    RunWriter run("evaluate", options.out);
    run.parameter("predicted", options.predicted);
    run.parameter("truth", options.truth);
    run.parameter("kind", options.kind);

    MetricsReport report;
    if (options.kind == "classification") {
        const SensorSeries predicted = read_series_csv(options.predicted);
        SensorSeries truth = read_series_csv(options.truth);
        // align on timestamps: the prediction may cover a sub-window of the truth
        std::size_t offset = 0;
        if (!grid_index(truth, static_cast<double>(predicted.time_reference_posix_s), &offset))
            throw DataError("predicted series does not start on the truth series grid");
        if (offset + predicted.values.size() > truth.values.size())
            throw DataError("predicted series runs past the end of the truth series");
        const std::vector<std::uint8_t> window(
            truth.values.begin() + static_cast<std::ptrdiff_t>(offset),
            truth.values.begin() + static_cast<std::ptrdiff_t>(offset + predicted.values.size()));
        report = binary_classification_metrics(predicted.values, window);
    } else if (options.kind == "similarity") {
        const EntropyFile a = read_entropy_csv(options.predicted);
        const EntropyFile b = read_entropy_csv(options.truth);
        report = similarity_metrics(a.real, b.real);
    } else {
        throw InvalidInput("--kind must be classification or similarity");
    }
    run.write("evaluation.json", metrics_json(report, options.kind));
    run.finish();
    return 0;
}

// --------------------------------------------------------------- compare

int cmd_compare(const CompareOptions& options) {
    RunWriter run("compare", options.out);
    if (options.runs.size() < 2) throw InvalidInput("compare needs at least two --runs files");
    std::vector<DetectionRun> runs;
    for (const auto& file : options.runs) {
        runs.push_back(read_detection_csv(file));
        run.parameter("run_" + runs.back().detector_name, file);
    }

    const AgreementMatrix matrix = agreement_matrix(runs);
    std::string csv = "detector";
    for (const auto& name : matrix.detector_names) csv += "," + name;
    csv += '\n';
    for (std::size_t r = 0; r < matrix.detector_names.size(); ++r) {
        csv += matrix.detector_names[r];
        for (const double cell : matrix.cells[r]) {
            csv += ',';
            csv += format_percent(cell);
        }
        csv += '\n';
    }
    run.write("agreement.csv", csv);

    if (runs.size() >= 3) {
        auto scores = rank_f1_without_ground_truth(runs);
        std::stable_sort(scores.begin(), scores.end(), [](const auto& a, const auto& b) {
            const double fa = std::isnan(a.f1) ? -1.0 : a.f1;
            const double fb = std::isnan(b.f1) ? -1.0 : b.f1;
            return fa > fb;
        });
        std::string ranking = "detector,precision,recall,f1\n";
        for (const auto& score : scores) {
            ranking += score.detector_name;
            ranking += ',';
            ranking += std::isnan(score.precision) ? "NA" : format_double(score.precision);
            ranking += ',';
            ranking += std::isnan(score.recall) ? "NA" : format_double(score.recall);
            ranking += ',';
            ranking += std::isnan(score.f1) ? "NA" : format_double(score.f1);
            ranking += '\n';
        }
        run.write("f1_ranking.csv", ranking);
    }
    run.finish();
    return 0;
}

// ------------------------------------------------------------- scalogram

int cmd_scalogram(const ScalogramOptions& options) {
    RunWriter run("scalogram", options.out);
    const Corpus corpus = load_corpus(options.corpus);
    const auto series = std::find_if(corpus.series.begin(), corpus.series.end(),
                                     [&](const auto& s) { return s.sensor_id == options.sensor; });
    if (series == corpus.series.end())
        throw DataError("corpus has no sensor named " + options.sensor);
    run.parameter("corpus", options.corpus);
    run.parameter("sensor", options.sensor);
    run.parameter("wavelet", options.wavelet);
    run.parameter("levels", static_cast<std::int64_t>(options.levels));

    const WaveletSpec& wavelet = find_wavelet(options.wavelet);
    std::vector<double> signal(series->values.begin(), series->values.end());
    const std::size_t block = std::size_t{1} << options.levels;
    while (signal.size() % block != 0) signal.push_back(0.0);

    const Scalogram result = scalogram(signal, wavelet, options.levels);
    std::string csv = "level,shift,magnitude\n";
    for (const auto& row : result.rows) {
        csv += std::to_string(row.level);
        csv += ',';
        csv += std::to_string(row.shift);
        csv += ',';
        csv += format_double(row.magnitude);
        csv += '\n';
    }
    run.write("scalogram.csv", csv);

    std::string energy = "level,mean_energy\n";
    for (std::size_t j = 1; j <= result.level_mean_energy.size(); ++j) {
        energy += std::to_string(j);
        energy += ',';
        energy += format_double(result.level_mean_energy[j - 1]);
        energy += '\n';
    }
    run.write("scalogram_energy.csv", energy);
    run.finish();
    return 0;
}

}  // namespace wtm::cli
