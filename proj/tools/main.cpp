#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "commands.hpp"
#include "wtm/common.hpp"

// Exit codes: 0 success, 1 usage, 2 data error, 3 numerical failure.

int main(int argc, char** argv) {
    CLI::App app{"Wavelet temporal models for smart-home binary sensors"};
    app.require_subcommand(1);
    app.set_config("--config")->description("Config file mirroring the flags ([subcommand] sections)");

    wtm::cli::IngestOptions ingest;
    auto* cmd_ingest = app.add_subcommand("ingest", "Build a corpus from JSONL or synthetically");
    cmd_ingest->add_option("--out", ingest.out, "Run directory")->required();
    cmd_ingest->add_option("--jsonl", ingest.jsonl, "JSON-lines sensor export");
    cmd_ingest->add_option("--mapping", ingest.mapping, "Field mapping JSON");
    cmd_ingest->add_flag("--synthetic", ingest.synthetic, "Generate a synthetic corpus");
    cmd_ingest->add_option("--name", ingest.name, "Corpus name (synthetic)");
    cmd_ingest->add_option("--seed", ingest.seed, "Generator seed (synthetic)");
    cmd_ingest->add_option("--days", ingest.days, "Corpus length in days (synthetic)");
    cmd_ingest->add_option("--noise", ingest.noise, "Spurious activation rate (synthetic)");
    cmd_ingest->add_flag("--inject-anomalies", ingest.inject_anomalies,
                         "Add the canonical last-day anomalies (synthetic)");
    cmd_ingest->add_option("--period", ingest.period_s, "Sampling period in seconds");

    wtm::cli::TrainOptions train;
    auto* cmd_train = app.add_subcommand("train", "Fit sensor models on a corpus fold");
    cmd_train->add_option("--out", train.out, "Run directory")->required();
    cmd_train->add_option("--corpus", train.corpus, "Corpus directory")->required();
    cmd_train->add_option("--kind", train.kind, "Model kind: wavelet | fremen");
    cmd_train->add_option("--wavelet", train.wavelet, "Wavelet family or 'auto'");
    cmd_train->add_option("--levels", train.levels, "Decomposition levels");
    cmd_train->add_option("--tau", train.tau, "Coefficient threshold or 'lossless'");
    cmd_train->add_option("--components", train.components, "Harmonic count (fremen)");
    cmd_train->add_option("--train-window", train.train_window, "Training fold length (e.g. 6d)");

    wtm::cli::ForecastOptions forecast;
    auto* cmd_forecast = app.add_subcommand("forecast", "Predict sensor signals from models");
    cmd_forecast->add_option("--out", forecast.out, "Run directory")->required();
    cmd_forecast->add_option("--models", forecast.models, "Directory of model files")->required();
    cmd_forecast->add_option("--corpus", forecast.corpus, "Corpus directory (fold windows)");
    cmd_forecast->add_option("--train-window", forecast.train_window, "Training fold length");
    cmd_forecast->add_option("--test-window", forecast.test_window, "Testing fold length");
    cmd_forecast->add_option("--fold", forecast.fold, "Which fold to forecast: train | test");
    cmd_forecast->add_option("--from", forecast.from, "Window start (POSIX seconds)");
    cmd_forecast->add_option("--to", forecast.to, "Window end (POSIX seconds)");

    wtm::cli::EntropyOptions entropy;
    auto* cmd_entropy = app.add_subcommand("entropy", "Compute activity entropy streams");
    cmd_entropy->add_option("--out", entropy.out, "Run directory")->required();
    cmd_entropy->add_option("--corpus", entropy.corpus, "Corpus directory")->required();
    cmd_entropy->add_option("--models", entropy.models, "Model directory (adds expected column)");
    cmd_entropy->add_option("--train-window", entropy.train_window, "Training fold length");
    cmd_entropy->add_option("--test-window", entropy.test_window, "Testing fold length");
    cmd_entropy->add_option("--fold", entropy.fold, "Which fold to stream: train | test");
    cmd_entropy->add_option("--window", entropy.window, "Entropy window (default one sample)");
    cmd_entropy->add_option("--stride", entropy.stride, "Stride (default one sample)");

    wtm::cli::DetectOptions detect;
    auto* cmd_detect = app.add_subcommand("detect", "Run an anomaly detector");
    cmd_detect->add_option("--out", detect.out, "Run directory")->required();
    cmd_detect->add_option("--detector", detect.detector,
                           "hmln | hmln_star | gaussian1d | lof");
    cmd_detect->add_option("--entropy", detect.entropy, "Entropy stream CSV")->required();
    cmd_detect->add_option("--corpus", detect.corpus, "Corpus directory (hmln evidence)");
    cmd_detect->add_option("--rules", detect.rules, "Rules JSON file");
    cmd_detect->add_option("--weights", detect.weights, "Clause weight overrides (id=w,...)");
    cmd_detect->add_option("--z", detect.z_threshold, "Gaussian z threshold");
    cmd_detect->add_option("--neighbors", detect.neighbors, "LOF neighbor count");
    cmd_detect->add_option("--lof-threshold", detect.lof_threshold, "LOF flag threshold");
    cmd_detect->add_option("--embedding", detect.embedding, "LOF embedding: value | value_daily");

    wtm::cli::EvaluateOptions evaluate;
    auto* cmd_evaluate = app.add_subcommand("evaluate", "Score predictions against truth");
    cmd_evaluate->add_option("--out", evaluate.out, "Run directory")->required();
    cmd_evaluate->add_option("--pred", evaluate.predicted, "Predicted CSV")->required();
    cmd_evaluate->add_option("--truth", evaluate.truth, "Ground truth CSV")->required();
    cmd_evaluate->add_option("--kind", evaluate.kind, "classification | similarity");

    wtm::cli::CompareOptions compare;
    auto* cmd_compare = app.add_subcommand("compare", "Cross-detector agreement and ranking");
    cmd_compare->add_option("--out", compare.out, "Run directory")->required();
    cmd_compare->add_option("--runs", compare.runs, "Detection run CSVs")->required()
        ->expected(-2);

    wtm::cli::ScalogramOptions scalogram;
    auto* cmd_scalogram = app.add_subcommand("scalogram", "Export a scale/time energy table");
    cmd_scalogram->add_option("--out", scalogram.out, "Run directory")->required();
    cmd_scalogram->add_option("--corpus", scalogram.corpus, "Corpus directory")->required();
    cmd_scalogram->add_option("--sensor", scalogram.sensor, "Sensor id")->required();
    cmd_scalogram->add_option("--wavelet", scalogram.wavelet, "Wavelet family");
    cmd_scalogram->add_option("--levels", scalogram.levels, "Decomposition levels");

    for (auto* sub : app.get_subcommands(nullptr)) sub->configurable(true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (cmd_ingest->parsed()) return wtm::cli::cmd_ingest(ingest);
        if (cmd_train->parsed()) return wtm::cli::cmd_train(train);
        if (cmd_forecast->parsed()) return wtm::cli::cmd_forecast(forecast);
        if (cmd_entropy->parsed()) return wtm::cli::cmd_entropy(entropy);
        if (cmd_detect->parsed()) return wtm::cli::cmd_detect(detect);
        if (cmd_evaluate->parsed()) return wtm::cli::cmd_evaluate(evaluate);
        if (cmd_compare->parsed()) return wtm::cli::cmd_compare(compare);
        if (cmd_scalogram->parsed()) return wtm::cli::cmd_scalogram(scalogram);
    } catch (const wtm::InvalidInput& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const wtm::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const wtm::DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 3;
    }
    return 1;
}
