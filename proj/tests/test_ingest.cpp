#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "wtm/common.hpp"
#include "wtm/ingest.hpp"

using namespace wtm;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path, std::ios::trunc);
    out << content;
    return path;
}

SensorRecord record_at(double ts, double value, const std::string& id = "pir1",
                       ReadingType type = ReadingType::motion) {
    SensorRecord r;
    r.timestamp = ts;
    r.sensor_id = id;
    r.location = "Kitchen";
    r.type = type;
    r.value = value;
    return r;
}

}  // namespace

TEST_SUITE_BEGIN("ingest");

TEST_CASE("empty file loads an empty stream") {
    const auto path = write_temp("wtm_empty.jsonl", "");
    LoadReport report;
    const auto records = load_jsonl(path, FieldMapping{}, &report);
    std::filesystem::remove(path);
    CHECK(records.empty());
    CHECK(report.total_lines == 0);
    CHECK(report.skipped == 0);
}

TEST_CASE("one well-formed document becomes one record") {
    const auto path = write_temp(
        "wtm_single.jsonl",
        R"({"ts": 1510012800, "sensor": "pir1", "location": "Kitchen", "type": "motion", "value": 1})"
        "\n");
    LoadReport report;
    const auto records = load_jsonl(path, FieldMapping{}, &report);
    std::filesystem::remove(path);
    REQUIRE(records.size() == 1);
    CHECK(records[0].timestamp == 1510012800.0);
    CHECK(records[0].sensor_id == "pir1");
    CHECK(records[0].location == "Kitchen");
    CHECK(records[0].type == ReadingType::motion);
    CHECK(records[0].value == 1.0);
    CHECK(report.loaded == 1);
}

TEST_CASE("corrupted lines are skipped and reported") {
    std::string body;
    for (int i = 0; i < 100; ++i) {
        if (i == 10 || i == 50 || i == 93) {
            body += "{this is not json\n";
        } else {
            body += R"({"ts": )" + std::to_string(1510012800 + 30 * i) +
                    R"(, "sensor": "pir1", "location": "A", "type": "motion", "value": 0})" "\n";
        }
    }
    const auto path = write_temp("wtm_corrupt.jsonl", body);
    LoadReport report;
    const auto records = load_jsonl(path, FieldMapping{}, &report);
    std::filesystem::remove(path);
    CHECK(records.size() == 97);
    CHECK(report.skipped == 3);
    CHECK(report.bad_lines == std::vector<std::size_t>{11, 51, 94});
}

TEST_CASE("too many malformed lines is fatal") {
    std::string body;
    for (int i = 0; i < 10; ++i) {
        body += i < 8 ? "oops\n"
                      : R"({"ts": 0, "sensor": "s", "location": "", "type": "motion", "value": 1})" "\n";
    }
    const auto path = write_temp("wtm_broken.jsonl", body);
    CHECK_THROWS_AS(load_jsonl(path, FieldMapping{}, nullptr), DataError);
    std::filesystem::remove(path);
}

TEST_CASE("unreadable files are fatal") {
    CHECK_THROWS_AS(load_jsonl("/nonexistent/nowhere.jsonl", FieldMapping{}, nullptr), DataError);
}

TEST_CASE("field mapping descends dotted paths and rescales timestamps") {
    const auto path = write_temp(
        "wtm_mapped.jsonl",
        R"({"when": {"$date": 1510012800000}, "dev": "door1", "room": "Entrance", "kind": "contact", "state": "open"})"
        "\n");
    FieldMapping mapping;
    mapping.timestamp = "when.$date";
    mapping.sensor = "dev";
    mapping.location = "room";
    mapping.type = "kind";
    mapping.value = "state";
    mapping.timestamp_scale = 1e-3;
    const auto records = load_jsonl(path, mapping, nullptr);
    std::filesystem::remove(path);
    REQUIRE(records.size() == 1);
    CHECK(records[0].timestamp == 1510012800.0);
    CHECK(records[0].type == ReadingType::contact);
    CHECK(records[0].value == 1.0);
}

TEST_CASE("resampling an empty record set gives zeros") {
    const GridSpec grid{1599955200, 30.0, 10};
    const auto series = resample_binary({}, grid);
    CHECK(series.values == std::vector<std::uint8_t>(10, 0));
}

TEST_CASE("a single on event marks only its cell") {
    const GridSpec grid{1599955200, 30.0, 10};
    const std::vector<SensorRecord> records = {record_at(1599955200.0 + 5 * 30.0 + 3.0, 1),
                                               record_at(1599955200.0 + 5 * 30.0 + 3.0, 0)};
    const auto series = resample_binary(records, grid);
    for (std::size_t i = 0; i < 10; ++i) CHECK(series.values[i] == (i == 5 ? 1 : 0));
}

TEST_CASE("an on span across a cell boundary marks both cells") {
    const GridSpec grid{1599955200, 30.0, 10};
    // on from cell-3 midpoint to cell-4 midpoint
    const std::vector<SensorRecord> records = {record_at(1599955200.0 + 3 * 30.0 + 15.0, 1),
                                               record_at(1599955200.0 + 4 * 30.0 + 15.0, 0)};
    const auto series = resample_binary(records, grid);
    for (std::size_t i = 0; i < 10; ++i) CHECK(series.values[i] == ((i == 3 || i == 4) ? 1 : 0));
}

TEST_CASE("a span ending exactly on a boundary stays out of the next cell") {
    const GridSpec grid{1599955200, 30.0, 10};
    const std::vector<SensorRecord> records = {record_at(1599955200.0 + 2 * 30.0, 1),
                                               record_at(1599955200.0 + 3 * 30.0, 0)};
    const auto series = resample_binary(records, grid);
    for (std::size_t i = 0; i < 10; ++i) CHECK(series.values[i] == (i == 2 ? 1 : 0));
}

TEST_CASE("a trailing on state persists to the grid end") {
    const GridSpec grid{1599955200, 30.0, 6};
    const std::vector<SensorRecord> records = {record_at(1599955200.0 + 4 * 30.0, 1)};
    const auto series = resample_binary(records, grid);
    CHECK(series.values == std::vector<std::uint8_t>{0, 0, 0, 0, 1, 1});
}

TEST_CASE("resampling a grid-aligned series is idempotent") {
    const GridSpec grid{1599955200, 30.0, 12};
    const std::vector<std::uint8_t> pattern = {0, 1, 1, 0, 0, 0, 1, 0, 1, 1, 1, 0};
    std::vector<SensorRecord> records;
    for (std::size_t i = 0; i < pattern.size(); ++i)
        records.push_back(record_at(1599955200.0 + static_cast<double>(i) * 30.0, pattern[i]));
    const auto series = resample_binary(records, grid);
    CHECK(series.values == pattern);
}

TEST_CASE("non-binary sensors are rejected by the resampler") {
    const GridSpec grid{1599955200, 30.0, 4};
    const std::vector<SensorRecord> records = {record_at(1599955200.0, 21.5, "temp1",
                                                         ReadingType::temperature)};
    CHECK_THROWS_AS(resample_binary(records, grid), InvalidInput);
}

TEST_CASE("fold split produces contiguous disjoint folds") {
    SyntheticSpec spec = default_synthetic_spec(1);
    spec.days = 4;
    const auto corpus = generate_synthetic(spec);
    const auto [train, test] = split_folds(corpus, 3 * 86400.0, 86400.0);
    CHECK(train.grid.length == 3 * 2880);
    CHECK(test.grid.length == 2880);
    CHECK(test.grid.start == train.grid.start + 3 * 86400);
    // boundary sample belongs to exactly one fold
    CHECK(train.series[0].values.size() + test.series[0].values.size() ==
          corpus.series[0].values.size());
    for (std::size_t i = 0; i < train.grid.length; ++i)
        CHECK(train.series[0].values[i] == corpus.series[0].values[i]);
    for (std::size_t i = 0; i < test.grid.length; ++i)
        CHECK(test.series[0].values[i] == corpus.series[0].values[train.grid.length + i]);
}

TEST_CASE("degenerate folds are rejected") {
    SyntheticSpec spec = default_synthetic_spec(1);
    spec.days = 2;
    const auto corpus = generate_synthetic(spec);
    CHECK_THROWS_AS(split_folds(corpus, 86400.0, 0.0), InvalidInput);
    CHECK_THROWS_AS(split_folds(corpus, 0.0, 86400.0), InvalidInput);
    CHECK_THROWS_AS(split_folds(corpus, 3 * 86400.0, 86400.0), InvalidInput);
}

TEST_CASE("noise-free synthetic corpora are exactly daily periodic") {
    SyntheticSpec spec = default_synthetic_spec(9);
    spec.noise_rate = 0.0;
    spec.days = 3;
    const auto corpus = generate_synthetic(spec);
    const std::size_t day = 2880;
    for (const auto& series : corpus.series) {
        for (std::size_t i = 0; i + day < series.values.size(); ++i)
            CHECK(series.values[i] == series.values[i + day]);
    }
    CHECK(corpus.labels.empty());
}

TEST_CASE("synthetic generation is a pure function of spec and seed") {
    const auto a = generate_synthetic(default_synthetic_spec(42));
    const auto b = generate_synthetic(default_synthetic_spec(42));
    const auto c = generate_synthetic(default_synthetic_spec(43));
    REQUIRE(a.series.size() == b.series.size());
    bool all_equal = true, any_diff = false;
    for (std::size_t s = 0; s < a.series.size(); ++s) {
        all_equal = all_equal && a.series[s].values == b.series[s].values;
        any_diff = any_diff || a.series[s].values != c.series[s].values;
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("injected anomalies carry labels at the right time") {
    SyntheticSpec spec = default_synthetic_spec(5);
    spec.days = 2;
    spec.anomalies = {{AnomalyKind::night_motion, "lounge_motion", 1, 2 * 60, 10}};
    const auto corpus = generate_synthetic(spec);
    REQUIRE(corpus.labels.size() == 1);
    const auto& label = corpus.labels[0];
    CHECK(label.kind == AnomalyKind::night_motion);
    CHECK(label.start == static_cast<double>(spec.start_time) + 86400.0 + 2 * 3600.0);
    CHECK(label.end == label.start + 600.0);

    const auto& lounge = *std::find_if(corpus.series.begin(), corpus.series.end(),
                                       [](const auto& s) { return s.sensor_id == "lounge_motion"; });
    const std::size_t begin = 2880 + 2 * 120;
    for (std::size_t i = begin; i < begin + 20; ++i) CHECK(lounge.values[i] == 1);
}

TEST_CASE("corpus directory round trip") {
    SyntheticSpec spec = default_synthetic_spec(77);
    spec.days = 2;
    spec.anomalies = {{AnomalyKind::door_left_open, "entrance_door", 1, 15 * 60, 10}};
    const auto corpus = generate_synthetic(spec);

    const auto dir = std::filesystem::temp_directory_path() / "wtm_corpus_roundtrip";
    std::filesystem::remove_all(dir);
    save_corpus(corpus, dir);
    const auto loaded = load_corpus(dir);
    std::filesystem::remove_all(dir);

    CHECK(loaded.name == corpus.name);
    CHECK(loaded.grid.start == corpus.grid.start);
    CHECK(loaded.grid.length == corpus.grid.length);
    REQUIRE(loaded.series.size() == corpus.series.size());
    for (std::size_t s = 0; s < corpus.series.size(); ++s) {
        CHECK(loaded.series[s].sensor_id == corpus.series[s].sensor_id);
        CHECK(loaded.series[s].values == corpus.series[s].values);
        CHECK(loaded.sensors[s].type == corpus.sensors[s].type);
    }
    REQUIRE(loaded.labels.size() == 1);
    CHECK(loaded.labels[0].sensor_id == "entrance_door");
}

TEST_SUITE_END();
