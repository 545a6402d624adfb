#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "krboot/engine.hpp"

namespace krboot {

// The critical-window exponent (C(r,2) - 2) / (r - 2) as a reduced fraction;
// the percolation threshold of the random graph scales as n^{-1/value}.
struct Rational {
    long long num = 0;
    long long den = 1;
};
Rational threshold_exponent(int r);

// One trial of the weighted-coupling sweep: every pair of the complete graph
// on n vertices gets an independent uniform weight, and the sample is the
// smallest weight w such that the subgraph of edges with weight <= w
// percolates. A trial's substream depends only on (master_seed, trial), so
// any subset of trials can be recomputed independently and the set of
// samples does not depend on scheduling.
double sample_threshold(int n, const ProcessParams& params,
                        std::uint64_t master_seed, std::uint64_t trial);

// All trial samples in trial order.
std::vector<double> sample_thresholds(int n, const ProcessParams& params,
                                      int trials, std::uint64_t master_seed,
                                      int workers = 1);

// Fraction of samples at most p: the empirical probability that the
// binomial random graph with edge probability p percolates. One sample set
// serves every p at once.
double percolation_probability(const std::vector<double>& samples, double p);

// Exact percolation probability by summing over all labeled graphs on n
// vertices; exponential cost, guarded at n <= 8.
double exact_percolation_probability(int n, const ProcessParams& params,
                                     double p);

struct ThresholdEstimate {
    int n = 0;
    int r = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    double median = 0.0;
    std::vector<std::pair<double, double>> quantiles;  // (q, threshold)
    double scaled_median = 0.0;  // median * n^{1/exponent}
};

ThresholdEstimate estimate_threshold(int n, const ProcessParams& params,
                                     int trials, std::uint64_t seed,
                                     int workers = 1);

std::string estimate_to_json(const ThresholdEstimate& est);
std::string estimate_to_csv(const ThresholdEstimate& est);

}  // namespace krboot
