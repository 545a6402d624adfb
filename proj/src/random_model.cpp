#include "krboot/random_model.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <thread>

#include "krboot/errors.hpp"
#include "krboot/extremal_search.hpp"

namespace krboot {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// splitmix64 stream; cheap to seed, so every trial gets its own.
struct SplitMix {
    std::uint64_t state;
    explicit SplitMix(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += kGolden;
        return mix(state);
    }
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
};

std::string format6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

double quantile_of(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

}  // namespace

Rational threshold_exponent(int r) {
    ProcessParams params{r};
    check_params(params);
    long long num = static_cast<long long>(r) * (r - 1) / 2 - 2;
    long long den = r - 2;
    long long g = std::gcd(num, den);
    return Rational{num / g, den / g};
}

double sample_threshold(int n, const ProcessParams& params,
                        std::uint64_t master_seed, std::uint64_t trial) {
    check_params(params);
    if (n < params.r) {
        throw InputError("threshold sampling needs n >= r");
    }
    const int m = n * (n - 1) / 2;
    SplitMix rng(mix(master_seed + (trial + 1) * kGolden));
    std::vector<double> weight(m);
    for (int i = 0; i < m; ++i) {
        weight[i] = rng.uniform();
    }
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (weight[a] != weight[b]) return weight[a] < weight[b];
        return a < b;
    });

    // Adding edges never removes anything from the closure, so percolation
    // of the k-edge prefix is monotone in k and the first percolating
    // prefix can be found by bisection. The full prefix is the complete
    // graph, which is trivially percolated.
    const bool small = n <= 11;
    std::vector<Edge> pair_of(m);
    {
        int idx = 0;
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v, ++idx) {
                pair_of[idx] = {u, v};
            }
        }
    }
    auto prefix_percolates = [&](int k) {
        if (small) {
            std::uint64_t mask = 0;
            for (int i = 0; i < k; ++i) {
                mask |= std::uint64_t{1} << order[i];
            }
            return small_close(n, mask, params.r).percolates;
        }
        std::vector<Edge> edges;
        edges.reserve(k);
        for (int i = 0; i < k; ++i) {
            edges.push_back(pair_of[order[i]]);
        }
        return percolates(build_graph(n, edges), params);
    };
    int lo = 1;
    int hi = m;
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (prefix_percolates(mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return weight[order[lo - 1]];
}

std::vector<double> sample_thresholds(int n, const ProcessParams& params,
                                      int trials, std::uint64_t master_seed,
                                      int workers) {
    check_params(params);
    if (trials < 1) {
        throw InputError("need at least one trial");
    }
    std::vector<double> samples(trials);
    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers < 1) workers = 1;
    }
    workers = std::min(workers, trials);
    if (workers <= 1) {
        for (int i = 0; i < trials; ++i) {
            samples[i] = sample_threshold(n, params, master_seed,
                                          static_cast<std::uint64_t>(i));
        }
        return samples;
    }
    std::atomic<int> next{0};
    auto work = [&]() {
        for (int i = next.fetch_add(1); i < trials; i = next.fetch_add(1)) {
            samples[i] = sample_threshold(n, params, master_seed,
                                          static_cast<std::uint64_t>(i));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
    return samples;
}

double percolation_probability(const std::vector<double>& samples, double p) {
    if (samples.empty()) {
        throw InputError("no samples");
    }
    std::size_t hits = 0;
    for (double s : samples) {
        if (s <= p) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(samples.size());
}

double exact_percolation_probability(int n, const ProcessParams& params,
                                     double p) {
    check_params(params);
    if (n < 1) {
        throw InputError("need n >= 1");
    }
    if (n > 8) {
        throw BudgetError("exact percolation probability sums over 2^C(n,2) "
                          "graphs and is limited to n <= 8");
    }
    if (p < 0.0 || p > 1.0) {
        throw InputError("probability must lie in [0, 1]");
    }
    const int m = n * (n - 1) / 2;
    const std::uint64_t total = std::uint64_t{1} << m;
    double sum = 0.0;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        if (!small_close(n, mask, params.r).percolates) continue;
        const int e = std::popcount(mask);
        sum += std::pow(p, e) * std::pow(1.0 - p, m - e);
    }
    return sum;
}

ThresholdEstimate estimate_threshold(int n, const ProcessParams& params,
                                     int trials, std::uint64_t seed,
                                     int workers) {
    std::vector<double> samples =
        sample_thresholds(n, params, trials, seed, workers);
    std::sort(samples.begin(), samples.end());
    ThresholdEstimate est;
    est.n = n;
    est.r = params.r;
    est.trials = trials;
    est.seed = seed;
    est.median = quantile_of(samples, 0.5);
    for (double q : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        est.quantiles.push_back({q, quantile_of(samples, q)});
    }
    Rational lam = threshold_exponent(params.r);
    est.scaled_median =
        est.median * std::pow(static_cast<double>(n),
                              static_cast<double>(lam.den) /
                                  static_cast<double>(lam.num));
    return est;
}

std::string estimate_to_json(const ThresholdEstimate& est) {
    // Hand-rolled so probabilities keep an exact %.6g rendering.
    Rational lam = threshold_exponent(est.r);
    std::ostringstream out;
    out << "{\n";
    out << "  \"exponent\": {\"den\": " << lam.den << ", \"num\": " << lam.num
        << "},\n";
    out << "  \"median\": " << format6(est.median) << ",\n";
    out << "  \"n\": " << est.n << ",\n";
    out << "  \"quantiles\": [";
    for (std::size_t i = 0; i < est.quantiles.size(); ++i) {
        if (i) out << ", ";
        out << "[" << format6(est.quantiles[i].first) << ", "
            << format6(est.quantiles[i].second) << "]";
    }
    out << "],\n";
    out << "  \"r\": " << est.r << ",\n";
    out << "  \"scaled_median\": " << format6(est.scaled_median) << ",\n";
    out << "  \"seed\": " << est.seed << ",\n";
    out << "  \"trials\": " << est.trials << "\n";
    out << "}\n";
    return out.str();
}

std::string estimate_to_csv(const ThresholdEstimate& est) {
    std::ostringstream out;
    out << "q,p\n";
    for (const auto& [q, p] : est.quantiles) {
        out << format6(q) << "," << format6(p) << "\n";
    }
    return out.str();
}

}  // namespace krboot
