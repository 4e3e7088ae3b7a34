#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linthresh/census.hpp"
#include "linthresh/ehrhart.hpp"
#include "linthresh/structure.hpp"
#include "linthresh/system.hpp"

namespace linthresh {

// Binomial random subset of {1..n}: element i included iff its Philox draw
// keyed by (seed, trial) falls below round(p * 2^32). Sorted ascending.
std::vector<int64_t> sample_set(long n, long double p, uint64_t seed, uint64_t trial);

uint64_t bernoulli_threshold(long double p);

// p = C * n^{-1/c(M)} evaluated in extended precision from the exact c(M).
long double probability_from_c(const Rational& c_value, long n, const Rational& C);

struct MuResult {
    Rational mu;               // Vol(P_M)/sigma(M) * C^m
    Rational mu_coefficient;   // Vol(P_M)/sigma(M)
    bool strictly_balanced = false;
    bool balance_known = false;
    std::vector<std::string> warnings;
};

MuResult mu_of(const LinearSystem& s, const Rational& c_const, const StructureCaps& caps = {});

struct ExperimentConfig {
    long n = 0;
    std::optional<Rational> constant_c;   // Poisson experiments
    std::optional<double> exponent;       // sweeps: p = n^e
    long trials = 1;
    uint64_t master_seed = 0;
    int cap_t = 64;
    int threads = 0;  // 0 = hardware concurrency
    uint64_t census_node_budget = 1'000'000'000;
};

struct EmpiricalDistribution {
    std::vector<uint64_t> counts;  // index t in [0, cap_t]
    uint64_t overflow = 0;
    uint64_t trials = 0;   // completed
    uint64_t aborted = 0;  // census budget exhausted; reported, not dropped
    Rational mean;
    Rational variance;  // population variance, exact
};

struct PoissonComparison {
    Rational mu;
    double tv_distance = 0;
    double mean_ratio = 0;  // empirical mean / mu
    double p_zero_empirical = 0;
    double p_zero_predicted = 0;  // e^{-mu}
    double chi_square = 0;        // secondary diagnostic, bins with expectation >= 5
    int chi_square_bins = 0;
    bool theorem_backed = false;  // strictly balanced systems only
};

struct PoissonExperimentResult {
    EmpiricalDistribution distribution;
    PoissonComparison comparison;
    long double p_used = 0;
    std::vector<long> aborted_trials;
    std::vector<std::string> warnings;
};

PoissonExperimentResult run_poisson_experiment(const LinearSystem& s, const ExperimentConfig& cfg,
                                               const StructureCaps& caps = {});

struct SweepPoint {
    double exponent = 0;
    long double p = 0;
    long trials = 0;
    long hits = 0;
    long aborted = 0;
    double hit_fraction = 0;
};

std::vector<SweepPoint> run_threshold_sweep(const LinearSystem& s, long n,
                                            const std::vector<double>& exponents, long trials,
                                            uint64_t master_seed, int threads = 0,
                                            uint64_t census_node_budget = 1'000'000'000);

}  // namespace linthresh
