#pragma once

// Shared machinery for exact solution enumeration: every solution of an
// admissible system is determined by its values on a free column set whose
// complement columns form an invertible square block.

#include <cstdint>
#include <numeric>
#include <vector>

#include "linthresh/system.hpp"

namespace linthresh::detail {

struct FreeBound {
    std::vector<int> bound_cols;  // lexicographically first rank-r column basis
    std::vector<int> free_cols;   // complement, ascending
    Integer den;                  // > 0
    // x_bound = (num * x_free) / den, exact integer matrix, r x f.
    std::vector<std::vector<Integer>> num;
};

FreeBound free_bound_split(const LinearSystem& s);

// int64 rendering of FreeBound plus per-level suffix bounds for interval
// propagation; build() refuses when magnitudes could overflow.
struct Int64Tables {
    int r = 0, f = 0;
    int64_t den = 1;
    std::vector<std::vector<int64_t>> num;                // r x f
    std::vector<std::vector<int64_t>> suf_min, suf_max;   // (f+1) x r, level f = 0

    bool build(const FreeBound& fb, int64_t lo, int64_t hi);
};

constexpr int64_t floor_div(int64_t a, int64_t b) {
    int64_t q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

constexpr int64_t ceil_div(int64_t a, int64_t b) { return -floor_div(-a, b); }

// Valid value window for the free variable at `level`, given the partial
// bound-row sums of the assigned prefix. Returns false when no value can
// satisfy every bound row. lo/hi bound both the variable and the bound
// coordinates.
inline bool level_window(const Int64Tables& t, int level, const int64_t* partial, int64_t lo,
                         int64_t hi, int64_t& wlo, int64_t& whi) {
    wlo = lo;
    whi = hi;
    for (int i = 0; i < t.r; ++i) {
        const int64_t c = t.num[i][level];
        const int64_t a = t.den * lo - partial[i] - t.suf_max[level + 1][i];
        const int64_t b = t.den * hi - partial[i] - t.suf_min[level + 1][i];
        if (c == 0) {
            if (a > 0 || b < 0) return false;
        } else if (c > 0) {
            wlo = std::max(wlo, ceil_div(a, c));
            whi = std::min(whi, floor_div(b, c));
        } else {
            wlo = std::max(wlo, ceil_div(b, c));
            whi = std::min(whi, floor_div(a, c));
        }
        if (wlo > whi) return false;
    }
    return true;
}

}  // namespace linthresh::detail
