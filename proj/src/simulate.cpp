#include "linthresh/simulate.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "linthresh/simd/kernels.hpp"

namespace linthresh {

uint64_t bernoulli_threshold(long double p) {
    if (!(p >= 0.0L) || p > 1.0L) throw std::invalid_argument("probability must be in [0, 1]");
    if (p >= 1.0L) return uint64_t{1} << 32;
    const long double scaled = p * 4294967296.0L;
    auto t = static_cast<uint64_t>(llroundl(scaled));
    return t > (uint64_t{1} << 32) ? (uint64_t{1} << 32) : t;
}

std::vector<int64_t> sample_set(long n, long double p, uint64_t seed, uint64_t trial) {
    if (n < 0 || n > INT32_MAX) throw std::invalid_argument("sample_set: bad n");
    std::vector<int64_t> out;
    out.reserve(static_cast<size_t>(std::min<long double>(static_cast<long double>(n), p * n * 1.2L + 16)));
    simd::bernoulli_select(seed, trial, static_cast<uint32_t>(n), bernoulli_threshold(p), out);
    return out;
}

long double probability_from_c(const Rational& c_value, long n, const Rational& C) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (c_value <= 0) throw std::invalid_argument("c must be positive");
    const long double e = -static_cast<long double>(c_value.get_den().get_d()) /
                          static_cast<long double>(c_value.get_num().get_d());
    return static_cast<long double>(to_double(C)) * powl(static_cast<long double>(n), e);
}

MuResult mu_of(const LinearSystem& s, const Rational& c_const, const StructureCaps& caps) {
    if (!s.is_admissible()) throw std::invalid_argument("mu_of requires an admissible system");
    if (c_const <= 0) throw std::invalid_argument("mu_of requires C > 0");
    MuResult res;

    const SymmetryGroup g = symmetry_group(s, caps);
    if (g.provenance == SymmetryGroup::Provenance::kLibraryConstant &&
        s.family().kind == FamilyTag::kKcube) {
        // The published table's volume and symmetry constants for k-cubes
        // only pair with each other; use them together.
        res.mu_coefficient = kcube_volume_library(s.family().p1) / Rational(g.sigma);
        res.warnings.push_back("k-cube volume/symmetry pair taken from the published table");
    } else {
        const VolumeResult vol = volume(s, g.sigma);
        res.mu_coefficient = *vol.mu_coefficient;
        for (const auto& w : vol.warnings) res.warnings.push_back(w);
    }
    res.mu = res.mu_coefficient * pow_rat(c_const, static_cast<unsigned long>(s.cols()));

    if (s.cols() <= caps.max_partition_cols) {
        res.balance_known = true;
        res.strictly_balanced =
            balance_check(s, caps).verdict == BalanceReport::Verdict::kStrictlyBalanced;
        if (!res.strictly_balanced)
            res.warnings.push_back(
                "system is not strictly balanced: the Poisson limit does not hold at the "
                "threshold, comparison is not theorem-backed");
    } else {
        res.warnings.push_back("balance verdict above enumeration cap; Poisson backing unknown");
    }
    return res;
}

namespace {

struct TrialOutcome {
    int32_t x = -1;  // -1 = aborted
};

// Deterministic parallel map over trial indices; results land in a
// vector indexed by trial, so scheduling cannot affect the outcome.
template <class Fn>
void parallel_trials(long trials, int threads, const Fn& run_one) {
    int t = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (t < 1) t = 1;
    if (t == 1 || trials < 2) {
        for (long i = 0; i < trials; ++i) run_one(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (int k = 0; k < t; ++k)
        pool.emplace_back([&]() {
            for (;;) {
                const long i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= trials) return;
                run_one(i);
            }
        });
    for (auto& th : pool) th.join();
}

long double poisson_pmf_accumulate(double mu, int cap, std::vector<long double>& pmf) {
    pmf.assign(cap + 1, 0.0L);
    long double p = expl(-static_cast<long double>(mu));
    long double cum = 0.0L;
    for (int t = 0; t <= cap; ++t) {
        pmf[t] = p;
        cum += p;
        p = p * mu / (t + 1);
    }
    return 1.0L - cum;  // tail mass beyond cap
}

}  // namespace

PoissonExperimentResult run_poisson_experiment(const LinearSystem& s, const ExperimentConfig& cfg,
                                               const StructureCaps& caps) {
    if (!cfg.constant_c) throw std::invalid_argument("poisson experiment needs a C constant");
    if (cfg.trials < 1 || cfg.n < 1 || cfg.cap_t < 1) throw std::invalid_argument("bad experiment config");

    const ExponentReport er = c_exponent(s);
    const MuResult mu = mu_of(s, *cfg.constant_c, caps);
    const long double p = probability_from_c(er.c_value, cfg.n, *cfg.constant_c);
    if (p > 1.0L) throw std::invalid_argument("p = C n^{-1/c} exceeds 1 at this n");
    const uint64_t threshold = bernoulli_threshold(p);

    const SymmetryGroup g = symmetry_group(s, caps);
    const TrivialityOracle oracle(s);

    std::vector<TrialOutcome> outcome(cfg.trials);
    parallel_trials(cfg.trials, cfg.threads, [&](long trial) {
        std::vector<int64_t> a;
        simd::bernoulli_select(cfg.master_seed, static_cast<uint64_t>(trial),
                               static_cast<uint32_t>(cfg.n), threshold, a);
        CensusOptions opts;
        opts.node_budget = cfg.census_node_budget;
        try {
            const SolutionCensus c = census(s, a, g, opts, &oracle);
            outcome[trial].x = static_cast<int32_t>(c.nontrivial_orbits);
        } catch (const ResourceExceeded&) {
            outcome[trial].x = -1;
        }
    });

    PoissonExperimentResult res;
    res.p_used = p;
    res.warnings = mu.warnings;
    auto& dist = res.distribution;
    dist.counts.assign(cfg.cap_t + 1, 0);

    Integer sum = 0, sumsq = 0;
    for (long i = 0; i < cfg.trials; ++i) {
        const int32_t x = outcome[i].x;
        if (x < 0) {
            ++dist.aborted;
            res.aborted_trials.push_back(i);
            continue;
        }
        ++dist.trials;
        sum += x;
        sumsq += static_cast<long>(x) * x;
        if (x <= cfg.cap_t)
            ++dist.counts[x];
        else
            ++dist.overflow;
    }
    if (dist.trials == 0) throw ResourceExceeded("all trials aborted");
    const Integer nt(static_cast<unsigned long>(dist.trials));
    dist.mean = rat(sum, nt);
    dist.variance = rat(sumsq, nt) - dist.mean * dist.mean;

    auto& cmp = res.comparison;
    cmp.mu = mu.mu;
    cmp.theorem_backed = mu.balance_known && mu.strictly_balanced;
    const double mu_d = to_double(mu.mu);
    std::vector<long double> pmf;
    const long double tail = poisson_pmf_accumulate(mu_d, cfg.cap_t, pmf);
    long double tv = 0.0L;
    for (int t = 0; t <= cfg.cap_t; ++t) {
        const long double emp = static_cast<long double>(dist.counts[t]) / dist.trials;
        tv += fabsl(emp - pmf[t]);
    }
    tv += fabsl(static_cast<long double>(dist.overflow) / dist.trials - tail);
    cmp.tv_distance = static_cast<double>(tv / 2.0L);
    cmp.mean_ratio = to_double(dist.mean) / mu_d;
    cmp.p_zero_empirical = static_cast<double>(static_cast<long double>(dist.counts[0]) / dist.trials);
    cmp.p_zero_predicted = static_cast<double>(expl(-static_cast<long double>(mu_d)));

    // Chi-square over bins with expected count >= 5, remainder merged.
    long double chi = 0.0L;
    int bins = 0;
    long double tail_exp = 0.0L, tail_obs = 0.0L;
    for (int t = 0; t <= cfg.cap_t; ++t) {
        const long double expd = pmf[t] * dist.trials;
        if (expd >= 5.0L) {
            const long double d = dist.counts[t] - expd;
            chi += d * d / expd;
            ++bins;
        } else {
            tail_exp += expd;
            tail_obs += dist.counts[t];
        }
    }
    tail_exp += tail * dist.trials;
    tail_obs += dist.overflow;
    if (tail_exp > 0) {
        const long double d = tail_obs - tail_exp;
        chi += d * d / tail_exp;
        ++bins;
    }
    cmp.chi_square = static_cast<double>(chi);
    cmp.chi_square_bins = bins;
    return res;
}

std::vector<SweepPoint> run_threshold_sweep(const LinearSystem& s, long n,
                                            const std::vector<double>& exponents, long trials,
                                            uint64_t master_seed, int threads,
                                            uint64_t census_node_budget) {
    if (!s.is_admissible()) throw std::invalid_argument("sweep requires an admissible system");
    if (n < 1 || trials < 1) throw std::invalid_argument("bad sweep config");
    for (double e : exponents)
        if (!(e < 0)) throw std::invalid_argument("sweep exponents must be negative");

    const SymmetryGroup g = symmetry_group(s);
    const TrivialityOracle oracle(s);

    std::vector<SweepPoint> out;
    for (size_t ei = 0; ei < exponents.size(); ++ei) {
        SweepPoint pt;
        pt.exponent = exponents[ei];
        pt.p = powl(static_cast<long double>(n), static_cast<long double>(exponents[ei]));
        pt.trials = trials;
        const uint64_t threshold = bernoulli_threshold(pt.p);

        std::vector<int8_t> hit(trials, 0);
        // Distinct exponents spend distinct trial-index ranges of the seed's
        // stream so points are independent.
        const uint64_t trial_base = static_cast<uint64_t>(ei) << 32;
        parallel_trials(trials, threads, [&](long trial) {
            std::vector<int64_t> a;
            simd::bernoulli_select(master_seed, trial_base + static_cast<uint64_t>(trial),
                                   static_cast<uint32_t>(n), threshold, a);
            CensusOptions opts;
            opts.node_budget = census_node_budget;
            opts.stop_at_first_nontrivial = true;
            try {
                const SolutionCensus c = census(s, a, g, opts, &oracle);
                hit[trial] = c.nontrivial_orbits > 0 ? 1 : 0;
            } catch (const ResourceExceeded&) {
                hit[trial] = -1;
            }
        });
        for (long i = 0; i < trials; ++i) {
            if (hit[i] < 0)
                ++pt.aborted;
            else
                pt.hits += hit[i];
        }
        const long completed = trials - pt.aborted;
        pt.hit_fraction = completed > 0 ? static_cast<double>(pt.hits) / completed : 0.0;
        out.push_back(pt);
    }
    return out;
}

}  // namespace linthresh
