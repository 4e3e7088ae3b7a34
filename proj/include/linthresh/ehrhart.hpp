#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linthresh/system.hpp"

namespace linthresh {

struct ResourceExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FitFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CountRange { kZeroToN, kOneToN };

struct CountOptions {
    bool force_generic = false;          // disable family fast paths
    uint64_t node_budget = 1'000'000'000;
};

// Exact number of x with M x = 0 and every coordinate in {0..n} or {1..n}.
// Generic route: backtracking over a free column set with exact interval
// propagation and a stride-counted innermost level. B_h[g] systems take a
// block-sum convolution fast path unless force_generic is set.
Integer lattice_count(const LinearSystem& s, long n, CountRange range, const CountOptions& opts = {});

struct EhrhartFit {
    int degree = 0;                    // m - r
    long period = 1;
    std::vector<Rational> coefficients;  // residue-0 class: constant .. leading
    Rational leading;
    std::vector<long> verified_at;
};

// Finds the smallest period T <= period_max whose degree-(m-r) interpolation
// through n = 0, T, .., dT reproduces `verify_samples` further multiples
// exactly; the leading coefficient is Vol(P_M).
EhrhartFit fit_pseudopolynomial(const LinearSystem& s, long period_max = 24, int verify_samples = 3,
                                const CountOptions& opts = {});

struct VolumeResult {
    enum class Source { kInterpolation, kClosedFormKap, kClosedFormBhg, kClosedFormBh1, kLibraryConstant };
    Rational volume;
    std::optional<Rational> mu_coefficient;  // volume / sigma(M) when sigma given
    Source source = Source::kInterpolation;
    std::optional<EhrhartFit> fit;
    std::vector<std::string> cross_checks;  // agreements verified exactly
    std::vector<std::string> warnings;
};

// Volume with every applicable closed form cross-checked against the fit.
VolumeResult volume(const LinearSystem& s, const std::optional<Integer>& sigma = std::nullopt,
                    long period_max = 24, int verify_samples = 3, const CountOptions& opts = {});

// Number of k-term APs (trivial included) with elements in {0..n}, counted
// as (a, d >= 0) pairs.
Integer kap_closed_form(int k, long n);

// #, via inclusion-exclusion, of x in {0..n}^h with x_1 + .. + x_h = k.
Integer bhg_representation_count(int h, long n, long k);

// f_{h,g}(n) = 1 + sum over k of falling factorials of the representation
// counts; a polynomial whose leading coefficient is Vol(P_{B_h[g]}).
Integer bhg_f(int h, int g, long n);

// Vandermonde fit of f_{h,g}; exact leading coefficient.
Rational bhg_volume_closed_form(int h, int g);

Rational bh1_volume_closed_form(int h);

// Table constant for Hilbert k-cubes (not derived here).
Rational kcube_volume_library(int k);

}  // namespace linthresh
