#include "krboot/random_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "json.hpp"
#include "krboot/engine.hpp"
#include "krboot/errors.hpp"
#include "krboot/extremal_search.hpp"
#include "krboot/graph.hpp"

using namespace krboot;

TEST_CASE("critical exponents come out reduced") {
    struct Expect {
        int r;
        long long num, den;
    };
    for (Expect ex : {Expect{3, 1, 1}, Expect{4, 2, 1}, Expect{5, 8, 3},
                      Expect{6, 13, 4}, Expect{7, 19, 5}, Expect{10, 43, 8}}) {
        Rational lambda = threshold_exponent(ex.r);
        CAPTURE(ex.r);
        CHECK(lambda.num == ex.num);
        CHECK(lambda.den == ex.den);
    }
    CHECK_THROWS_AS(threshold_exponent(2), InputError);
}

TEST_CASE("threshold samples are reproducible and scheduling-independent") {
    ProcessParams r4{4};
    double a = sample_threshold(8, r4, 7777, 3);
    double b = sample_threshold(8, r4, 7777, 3);
    CHECK(a == b);
    CHECK(a > 0.0);
    CHECK(a < 1.0);
    CHECK(sample_threshold(8, r4, 7777, 4) != a);
    CHECK(sample_threshold(8, r4, 7778, 3) != a);

    std::vector<double> serial = sample_thresholds(8, r4, 40, 7777, 1);
    std::vector<double> parallel = sample_thresholds(8, r4, 40, 7777, 4);
    CHECK(serial == parallel);
    CHECK(serial[3] == a);
}

TEST_CASE("empirical percolation probability sits on the exact curve") {
    ProcessParams r4{4};
    const int n = 5;
    const int trials = 20000;
    std::vector<double> samples = sample_thresholds(n, r4, trials, 555888, 1);
    for (double p : {0.3, 0.5, 0.7}) {
        double exact = exact_percolation_probability(n, r4, p);
        double mc = percolation_probability(samples, p);
        double se = std::sqrt(exact * (1.0 - exact) / trials);
        CAPTURE(p);
        CHECK(std::abs(mc - exact) <= 3.0 * se + 1e-12);
    }
}

TEST_CASE("exact percolation probability against a direct sum") {
    ProcessParams r4{4};
    // Independent reimplementation: sum over all graphs on four vertices,
    // weighting each mask by p^edges (1-p)^missing.
    auto brute = [&](double p) {
        double total = 0.0;
        for (std::uint64_t mask = 0; mask < 64; ++mask) {
            int edges = __builtin_popcountll(mask);
            if (!small_close(4, mask, 4).percolates) continue;
            total += std::pow(p, edges) * std::pow(1.0 - p, 6 - edges);
        }
        return total;
    };
    for (double p : {0.1, 0.4, 0.8}) {
        CHECK(exact_percolation_probability(4, r4, p) ==
              doctest::Approx(brute(p)).epsilon(1e-12));
    }
    CHECK(exact_percolation_probability(4, r4, 1.0) == doctest::Approx(1.0));
    CHECK(exact_percolation_probability(4, r4, 0.0) == doctest::Approx(0.0));

    // Monotone in p.
    double prev = 0.0;
    for (double p = 0.0; p <= 1.0001; p += 0.1) {
        double cur = exact_percolation_probability(5, r4, std::min(p, 1.0));
        CHECK(cur >= prev - 1e-12);
        prev = cur;
    }
    CHECK_THROWS_AS(exact_percolation_probability(9, r4, 0.5), BudgetError);
}

TEST_CASE("quantiles interpolate the sorted samples") {
    ProcessParams r4{4};
    const int trials = 5;
    ThresholdEstimate est = estimate_threshold(6, r4, trials, 31337, 1);
    std::vector<double> samples = sample_thresholds(6, r4, trials, 31337, 1);
    std::sort(samples.begin(), samples.end());

    auto type7 = [&](double q) {
        double pos = q * (trials - 1);
        std::size_t lo = static_cast<std::size_t>(pos);
        if (lo + 1 >= samples.size()) return samples.back();
        double frac = pos - static_cast<double>(lo);
        return samples[lo] * (1.0 - frac) + samples[lo + 1] * frac;
    };
    REQUIRE(est.quantiles.size() == 5);
    double grid[] = {0.1, 0.25, 0.5, 0.75, 0.9};
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(est.quantiles[i].first == grid[i]);
        CHECK(est.quantiles[i].second == doctest::Approx(type7(grid[i])));
    }
    CHECK(est.median == doctest::Approx(type7(0.5)));

    Rational lambda = threshold_exponent(4);
    double scale = std::pow(6.0, static_cast<double>(lambda.den) /
                                     static_cast<double>(lambda.num));
    CHECK(est.scaled_median == doctest::Approx(est.median * scale));
}

TEST_CASE("estimate serialization") {
    ProcessParams r4{4};
    ThresholdEstimate est = estimate_threshold(6, r4, 50, 90210, 1);

    SUBCASE("csv") {
        std::string csv = estimate_to_csv(est);
        CHECK(csv.substr(0, 4) == "q,p\n");
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);  // header + 5
        CHECK(csv.find("0.5,") != std::string::npos);
    }
    SUBCASE("json parses and echoes the inputs") {
        nlohmann::json doc = nlohmann::json::parse(estimate_to_json(est));
        CHECK(doc["n"] == 6);
        CHECK(doc["r"] == 4);
        CHECK(doc["trials"] == 50);
        CHECK(doc["seed"] == 90210);
        CHECK(doc["quantiles"].size() == 5);
        CHECK(doc.contains("median"));
        CHECK(doc.contains("scaled_median"));
    }
    SUBCASE("byte-identical across worker counts") {
        ThresholdEstimate wide = estimate_threshold(6, r4, 50, 90210, 4);
        CHECK(estimate_to_json(est) == estimate_to_json(wide));
        CHECK(estimate_to_csv(est) == estimate_to_csv(wide));
    }
}

TEST_CASE("estimate input guards") {
    ProcessParams r4{4};
    CHECK_THROWS_AS(estimate_threshold(6, r4, 0, 1, 1), InputError);
    CHECK_THROWS_AS(sample_thresholds(2, r4, 5, 1, 1), InputError);
}
