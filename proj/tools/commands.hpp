#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wtm::cli {

struct IngestOptions {
    std::string out;
    std::string jsonl;
    std::string mapping;
    bool synthetic = false;
    std::string name = "synthetic-apartment";
    std::uint64_t seed = 0;
    int days = 7;
    double noise = 0.002;
    bool inject_anomalies = false;
    double period_s = 30.0;
};

struct TrainOptions {
    std::string out;
    std::string corpus;
    std::string kind = "wavelet";  // wavelet | fremen
    std::string wavelet = "rbio3.1";  // family name or "auto"
    int levels = 1;
    std::string tau = "lossless";  // number or "lossless"
    int components = 3;
    std::string train_window;  // duration; empty = whole corpus
};

struct ForecastOptions {
    std::string out;
    std::string models;
    std::string corpus;        // optional, for fold-based windows
    std::string train_window;
    std::string test_window;
    std::string fold = "test";  // train | test, when corpus given
    double from = 0.0;          // absolute window, when corpus not given
    double to = 0.0;
};

struct EntropyOptions {
    std::string out;
    std::string corpus;
    std::string models;  // optional: adds the expected column
    std::string train_window;
    std::string test_window;
    std::string fold = "test";
    std::string window;  // duration; empty = one sample
    std::string stride;
};

struct DetectOptions {
    std::string out;
    std::string detector = "hmln";  // hmln | hmln_star | gaussian1d | lof
    std::string entropy;            // entropy CSV from cmd_entropy
    std::string corpus;             // evidence for the hmln variants
    std::string rules;              // rules JSON
    std::string weights;            // "clause=weight,..." overrides
    double z_threshold = 3.0;
    int neighbors = 20;
    double lof_threshold = 1.5;
    std::string embedding = "value_daily";
};

struct EvaluateOptions {
    std::string out;
    std::string predicted;
    std::string truth;
    std::string kind = "classification";  // classification | similarity
};

struct CompareOptions {
    std::string out;
    std::vector<std::string> runs;
};

struct ScalogramOptions {
    std::string out;
    std::string corpus;
    std::string sensor;
    std::string wavelet = "rbio3.1";
    int levels = 1;
};

int cmd_ingest(const IngestOptions& options);
int cmd_train(const TrainOptions& options);
int cmd_forecast(const ForecastOptions& options);
int cmd_entropy(const EntropyOptions& options);
int cmd_detect(const DetectOptions& options);
int cmd_evaluate(const EvaluateOptions& options);
int cmd_compare(const CompareOptions& options);
int cmd_scalogram(const ScalogramOptions& options);

}  // namespace wtm::cli
