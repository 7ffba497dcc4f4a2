#include <doctest.h>

#include <cmath>
#include <random>

#include "reference.hpp"
#include "wtm/common.hpp"
#include "wtm/wavelet.hpp"

using namespace wtm;

namespace {

std::vector<double> random_binary(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> x(n);
    for (auto& v : x) v = (rng() & 1) ? 1.0 : 0.0;
    return x;
}

std::vector<double> random_real(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> x(n);
    for (auto& v : x) v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return x;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

double energy(std::span<const double> x) {
    double sum = 0.0;
    for (const double v : x) sum += v * v;
    return sum;
}

}  // namespace

TEST_SUITE_BEGIN("wavelet");

TEST_CASE("catalog holds the four families") {
    CHECK_NOTHROW(find_wavelet("haar"));
    CHECK_NOTHROW(find_wavelet("db2"));
    CHECK_NOTHROW(find_wavelet("db4"));
    CHECK_NOTHROW(find_wavelet("bior1.1"));
    CHECK_NOTHROW(find_wavelet("bior3.1"));
    CHECK_NOTHROW(find_wavelet("rbio1.1"));
    CHECK_NOTHROW(find_wavelet("rbio3.1"));
    CHECK_THROWS_AS(find_wavelet("sym4"), ConfigError);
    CHECK(wavelet_catalog().size() == 20);
}

TEST_CASE("orthogonal highpass taps are the quadrature mirror of the lowpass") {
    for (const auto& spec : wavelet_catalog()) {
        if (!spec.is_orthogonal()) continue;
        const auto& lo = spec.decomposition_lowpass;
        const auto& hi = spec.decomposition_highpass;
        REQUIRE(lo.size() == hi.size());
        const std::size_t L = lo.size();
        for (std::size_t m = 0; m < L; ++m) {
            const double expected = (m % 2 == 0 ? 1.0 : -1.0) * lo[L - 1 - m];
            CHECK(std::abs(hi[m] - expected) < 1e-12);
        }
    }
}

TEST_CASE("haar transform of [4, 2]") {
    const auto coeffs = dwt(std::vector<double>{4.0, 2.0}, find_wavelet("haar"), 1);
    REQUIRE(coeffs.averaging.size() == 1);
    REQUIRE(coeffs.details.size() == 1);
    CHECK(coeffs.averaging[0] == doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(coeffs.details[0][0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    const auto back = idwt(coeffs, find_wavelet("haar"));
    CHECK(back[0] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(back[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("constant signal has no detail content") {
    const double c = 0.75;
    const std::vector<double> x(8, c);
    const auto coeffs = dwt(x, find_wavelet("haar"), 3);
    for (const auto& level : coeffs.details)
        for (const double d : level) CHECK(std::abs(d) < 1e-12);
    REQUIRE(coeffs.averaging.size() == 1);
    CHECK(coeffs.averaging[0] == doctest::Approx(c * std::pow(2.0, 1.5)).epsilon(1e-12));
}

TEST_CASE("inverse of explicit haar coefficients") {
    CoefficientSet coeffs;
    coeffs.original_length = 2;
    coeffs.averaging = {3.0 * std::sqrt(2.0)};
    coeffs.details = {{std::sqrt(2.0)}};
    const auto x = idwt(coeffs, find_wavelet("haar"));
    CHECK(x[0] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("round trip for binary length-64 vectors under rbio3.1") {
    const auto& rbio = find_wavelet("rbio3.1");
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const auto x = random_binary(rng, 64);
        const auto back = idwt(dwt(x, rbio, 1), rbio);
        CHECK(max_abs_diff(x, back) < 1e-8);
    }
}

TEST_CASE("round trip for x = [1,0,0,1,1,1,0,0] under haar") {
    const std::vector<double> x = {1, 0, 0, 1, 1, 1, 0, 0};
    const auto back = idwt(dwt(x, find_wavelet("haar"), 1), find_wavelet("haar"));
    CHECK(max_abs_diff(x, back) < 1e-12);
}

TEST_CASE("dwt rejects bad inputs") {
    const auto& haar = find_wavelet("haar");
    CHECK_THROWS_AS(dwt(std::vector<double>{1, 2, 3}, haar, 1), InvalidInput);   // odd length
    CHECK_THROWS_AS(dwt(std::vector<double>{1, 2, 3, 4}, haar, 3), InvalidInput);  // not divisible
    CHECK_THROWS_AS(dwt(std::vector<double>(8, 0.0), haar, 0), InvalidInput);
    // levels above the maximum for db4 (L = 8): max level of n=16 is 1
    CHECK_THROWS_AS(dwt(std::vector<double>(16, 0.0), find_wavelet("db4"), 2), InvalidInput);
}

TEST_CASE("idwt rejects inconsistent layouts") {
    CoefficientSet broken;
    broken.original_length = 8;
    broken.averaging = {1.0, 2.0};           // wrong length for Q=1
    broken.details = {{1.0, 2.0, 3.0, 4.0}};
    CHECK_THROWS_AS(idwt(broken, find_wavelet("haar")), InvalidInput);
}

TEST_CASE("max decomposition level formula") {
    CHECK(max_decomposition_level(8, 2) == 3);
    CHECK(max_decomposition_level(4, 2) == 2);
    CHECK(max_decomposition_level(2, 2) == 1);
    CHECK_THROWS_AS(max_decomposition_level(1, 2), InvalidInput);
    CHECK_THROWS_AS(max_decomposition_level(8, 1), InvalidInput);
}

TEST_CASE("max decomposition level is monotone in n and antitone in L") {
    for (std::size_t n = 2; n <= 512; n *= 2) {
        for (std::size_t L : {2, 4, 6, 8, 10}) {
            const int here = max_decomposition_level(n, L);
            CHECK(max_decomposition_level(2 * n, L) >= here);
            CHECK(max_decomposition_level(n, L + 2) <= here);
        }
    }
}

TEST_CASE("round trip across the whole catalog") {
    std::mt19937_64 rng(7);
    for (const auto& spec : wavelet_catalog()) {
        for (const std::size_t n : {32u, 256u}) {
            const int top = std::min(max_decomposition_level(n, spec.filter_length()),
                                     max_decomposition_level(n, 2));
            const auto x = random_real(rng, n);
            for (int levels = 1; levels <= top; ++levels) {
                if (n % (std::size_t{1} << levels) != 0) break;
                const auto back = idwt(dwt(x, spec, levels), spec);
                INFO(spec.family_name, " n=", n, " levels=", levels);
                CHECK(max_abs_diff(x, back) < 1e-8);
            }
        }
    }
}

TEST_CASE("transform matches the serial reference") {
    std::mt19937_64 rng(99);
    for (const auto& name : {"haar", "db3", "bior2.2", "rbio3.1"}) {
        const auto& spec = find_wavelet(name);
        const auto x = random_real(rng, 128);
        const auto fast = dwt(x, spec, 2);
        const auto direct = reference::dwt_direct(x, spec, 2);
        CHECK(max_abs_diff(fast.averaging, direct.averaging) < 1e-12);
        for (int j = 0; j < 2; ++j)
            CHECK(max_abs_diff(fast.details[j], direct.details[j]) < 1e-12);
        CHECK(max_abs_diff(idwt(fast, spec), reference::idwt_direct(direct, spec)) < 1e-12);
    }
}

TEST_CASE("linearity of the transform") {
    std::mt19937_64 rng(11);
    const auto& spec = find_wavelet("db2");
    const auto x = random_real(rng, 64);
    const auto y = random_real(rng, 64);
    const double a = 2.5, b = -1.25;
    std::vector<double> combo(64);
    for (std::size_t i = 0; i < 64; ++i) combo[i] = a * x[i] + b * y[i];

    const auto cx = dwt(x, spec, 2);
    const auto cy = dwt(y, spec, 2);
    const auto cc = dwt(combo, spec, 2);
    for (std::size_t k = 0; k < cc.averaging.size(); ++k)
        CHECK(std::abs(cc.averaging[k] - (a * cx.averaging[k] + b * cy.averaging[k])) < 1e-9);
    for (int j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < cc.details[j].size(); ++k)
            CHECK(std::abs(cc.details[j][k] - (a * cx.details[j][k] + b * cy.details[j][k])) < 1e-9);
}

TEST_CASE("energy preservation for orthogonal families") {
    std::mt19937_64 rng(5);
    for (const auto& name : {"haar", "db2", "db3", "db4"}) {
        const auto& spec = find_wavelet(name);
        const auto x = random_real(rng, 256);
        const int levels = max_decomposition_level(256, spec.filter_length());
        const auto coeffs = dwt(x, spec, std::min(levels, 3));
        double total = energy(coeffs.averaging);
        for (const auto& level : coeffs.details) total += energy(level);
        CHECK(std::abs(total - energy(x)) < 1e-9);
    }
}

TEST_CASE("selection with a single candidate is trivial") {
    std::mt19937_64 rng(3);
    const std::vector<std::vector<double>> signals = {random_binary(rng, 64)};
    const std::vector<WaveletSpec> candidates = {find_wavelet("haar")};
    const auto selection = select_mother_wavelet(signals, candidates, 0.1);
    CHECK(selection.winner == "haar");
    REQUIRE(selection.report.size() == 1);
}

TEST_CASE("selection rejects empty inputs") {
    const std::vector<std::vector<double>> signals = {{1.0, 0.0}};
    CHECK_THROWS_AS(select_mother_wavelet(signals, {}, 0.1), InvalidInput);
}

TEST_CASE("selection report matches the reference transform") {
    // square-wave corpus; recompute every candidate RMSE with the naive
    // transform and compare
    std::vector<std::vector<double>> signals;
    for (int period : {8, 16, 32}) {
        std::vector<double> x(128);
        for (int i = 0; i < 128; ++i) x[i] = (i / period) % 2 ? 1.0 : 0.0;
        signals.push_back(std::move(x));
    }
    const double tau = 0.4;
    std::vector<WaveletSpec> candidates;
    for (const auto& name : {"haar", "db2", "bior3.1", "rbio3.1"})
        candidates.push_back(find_wavelet(name));

    const auto selection = select_mother_wavelet(signals, candidates, tau);
    REQUIRE(selection.report.size() == candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        double total = 0.0;
        for (const auto& signal : signals) {
            auto coeffs = reference::dwt_direct(signal, candidates[c], 1);
            for (auto& v : coeffs.averaging)
                if (std::abs(v) < tau) v = 0.0;
            for (auto& v : coeffs.details[0])
                if (std::abs(v) < tau) v = 0.0;
            const auto recon = reference::idwt_direct(coeffs, candidates[c]);
            double sq = 0.0;
            for (std::size_t i = 0; i < signal.size(); ++i) {
                const double bit = recon[i] >= 0.5 ? 1.0 : 0.0;
                sq += (bit - signal[i]) * (bit - signal[i]);
            }
            total += std::sqrt(sq / static_cast<double>(signal.size()));
        }
        const double expected = total / static_cast<double>(signals.size());
        CHECK(std::abs(selection.report[c].mean_rmse - expected) < 1e-6);
    }
}

TEST_CASE("scalogram of a constant signal is all zero") {
    const std::vector<double> x(16, 1.0);
    const auto result = scalogram(x, find_wavelet("haar"), 2);
    for (const auto& row : result.rows) CHECK(row.magnitude < 1e-12);
    for (const double e : result.level_mean_energy) CHECK(e < 1e-24);
}

TEST_CASE("scalogram of an impulse under haar is local") {
    std::vector<double> x(16, 0.0);
    x[0] = 1.0;
    const auto result = scalogram(x, find_wavelet("haar"), 1);
    std::size_t nonzero = 0;
    for (const auto& row : result.rows) {
        if (row.magnitude > 1e-12) {
            ++nonzero;
            CHECK(row.shift == 0);
        }
    }
    CHECK(nonzero == 1);
}

TEST_CASE("scalogram energy column matches the coefficients") {
    std::mt19937_64 rng(17);
    const auto x = random_real(rng, 64);
    const auto& spec = find_wavelet("db2");
    const auto result = scalogram(x, spec, 2);
    const auto coeffs = dwt(x, spec, 2);
    for (int j = 1; j <= 2; ++j) {
        double expected = 0.0;
        for (const double d : coeffs.details[j - 1]) expected += d * d;
        expected /= static_cast<double>(coeffs.details[j - 1].size());
        CHECK(std::abs(result.level_mean_energy[j - 1] - expected) < 1e-12);
    }
}

TEST_SUITE_END();
