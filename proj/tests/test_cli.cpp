#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "wtm/io.hpp"

namespace fs = std::filesystem;

#ifndef WTM_CLI_PATH
#define WTM_CLI_PATH ""
#endif

namespace {

int run_cli(const fs::path& cwd, const std::string& args) {
    const std::string command =
        "cd " + cwd.string() + " && " + WTM_CLI_PATH + " " + args + " > /dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("pipeline smoke: lossless training fold forecast reproduces the corpus") {
    REQUIRE(fs::exists(WTM_CLI_PATH));
    const fs::path root = fs::temp_directory_path() / "wtm_cli_suite";
    fs::remove_all(root);
    fs::create_directories(root);

    REQUIRE(run_cli(root, "ingest --out ri --synthetic --seed 21 --days 2 --noise 0") == 0);
    REQUIRE(run_cli(root, "train --out rt --corpus ri/corpus --kind wavelet "
                          "--train-window 1d --tau lossless") == 0);
    REQUIRE(run_cli(root, "forecast --out rf --models rt/models --corpus ri/corpus "
                          "--train-window 1d --fold train") == 0);

    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(root / "rf" / "forecast")) {
        const auto name = entry.path().filename();
        const std::string forecast_csv = wtm::read_file(entry.path());
        const std::string corpus_csv = wtm::read_file(root / "ri" / "corpus" / name);
        // the forecast covers the one-day training fold: a prefix of the corpus
        CHECK(corpus_csv.substr(0, forecast_csv.size()) == forecast_csv);
        ++compared;
    }
    CHECK(compared == 6);

    SUBCASE("evaluate scores the forecast against the corpus") {
        REQUIRE(run_cli(root, "evaluate --out re --pred rf/forecast/kitchen_motion.csv "
                              "--truth ri/corpus/kitchen_motion.csv") == 0);
        const std::string evaluation = wtm::read_file(root / "re" / "evaluation.json");
        CHECK(evaluation.find("\"accuracy\": 100.0") != std::string::npos);
    }
    fs::remove_all(root);
}

TEST_CASE("usage errors exit with code 1") {
    const fs::path root = fs::temp_directory_path();
    CHECK(run_cli(root, "train") == 1);                      // missing required flags
    CHECK(run_cli(root, "detect --out x --entropy y --detector nonsense") == 1);
    CHECK(run_cli(root, "nonsense") == 1);
}

TEST_CASE("data errors exit with code 2") {
    const fs::path root = fs::temp_directory_path() / "wtm_cli_errors";
    fs::remove_all(root);
    fs::create_directories(root);
    CHECK(run_cli(root, "ingest --out ri --jsonl /nonexistent.jsonl") == 2);
    CHECK(run_cli(root, "train --out rt --corpus /nonexistent/corpus") == 2);
    fs::remove_all(root);
}

TEST_SUITE_END();
