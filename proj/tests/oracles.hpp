#pragma once

// Test-only oracles, kept independent of the library's computation paths:
// rank via minor expansion, solution sets via full cartesian scans, symmetry
// via the solution-space definition.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "linthresh/census.hpp"
#include "linthresh/linalg.hpp"
#include "linthresh/structure.hpp"
#include "linthresh/system.hpp"

namespace oracles {

using namespace linthresh;

inline Rational det_laplace(const RationalMatrix& m) {
    const int n = m.rows();
    if (n == 0) return rat(1);
    if (n == 1) return m.at(0, 0);
    Rational acc = rat(0);
    for (int j = 0; j < n; ++j) {
        if (m.at(0, j) == 0) continue;
        RationalMatrix sub(n - 1, n - 1);
        for (int i = 1; i < n; ++i) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                sub.at(i - 1, cc++) = m.at(i, c);
            }
        }
        const Rational term = m.at(0, j) * det_laplace(sub);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

// Largest k with a non-vanishing k x k minor.
inline int minor_rank(const RationalMatrix& m) {
    const int rmax = std::min(m.rows(), m.cols());
    for (int k = rmax; k >= 1; --k) {
        std::vector<int> rows(k), cols(k);
        std::vector<int> rsel(m.rows()), csel(m.cols());
        std::iota(rsel.begin(), rsel.end(), 0);
        std::iota(csel.begin(), csel.end(), 0);
        std::vector<bool> rmask(m.rows(), false), cmask(m.cols(), false);
        std::fill(rmask.begin(), rmask.begin() + k, true);
        do {
            std::fill(cmask.begin(), cmask.end(), false);
            std::fill(cmask.begin(), cmask.begin() + k, true);
            do {
                RationalMatrix sub(k, k);
                int ri = 0;
                for (int i = 0; i < m.rows(); ++i) {
                    if (!rmask[i]) continue;
                    int ci = 0;
                    for (int j = 0; j < m.cols(); ++j) {
                        if (!cmask[j]) continue;
                        sub.at(ri, ci++) = m.at(i, j);
                    }
                    ++ri;
                }
                if (det_laplace(sub) != 0) return k;
            } while (std::prev_permutation(cmask.begin(), cmask.end()));
        } while (std::prev_permutation(rmask.begin(), rmask.end()));
    }
    return 0;
}

inline bool is_solution(const RationalMatrix& m, const std::vector<int64_t>& x) {
    for (int i = 0; i < m.rows(); ++i) {
        Integer acc = 0;
        for (int j = 0; j < m.cols(); ++j) acc += m.at(i, j).get_num() * x[j];
        if (acc != 0) return false;
    }
    return true;
}

// All x in A^m with M x = 0, by full scan.
inline std::vector<std::vector<int64_t>> naive_solutions(const RationalMatrix& m,
                                                         const std::vector<int64_t>& a) {
    std::vector<std::vector<int64_t>> out;
    const int cols = m.cols();
    std::vector<size_t> idx(cols, 0);
    if (a.empty()) return out;
    std::vector<int64_t> x(cols);
    for (;;) {
        for (int j = 0; j < cols; ++j) x[j] = a[idx[j]];
        if (is_solution(m, x)) out.push_back(x);
        int j = cols - 1;
        while (j >= 0 && ++idx[j] == a.size()) idx[j--] = 0;
        if (j < 0) break;
    }
    return out;
}

// sigma via Definition 4.1 applied to a kernel basis: pi qualifies iff
// permuting every kernel vector stays in the kernel.
inline long sigma_by_solution_space(const LinearSystem& s) {
    const auto basis = kernel_basis(s.matrix());
    std::vector<int> perm(s.cols());
    std::iota(perm.begin(), perm.end(), 0);
    long count = 0;
    do {
        bool ok = true;
        for (const auto& v : basis) {
            RationalVector vp(v.size());
            for (size_t i = 0; i < v.size(); ++i) vp[i] = v[perm[i]];
            const RationalVector y = matvec(s.matrix(), vp);
            for (const auto& q : y)
                if (q != 0) {
                    ok = false;
                    break;
                }
            if (!ok) break;
        }
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

// Brute-force census on A^m: classification straight from the definitions.
struct NaiveCensus {
    uint64_t raw = 0, trivial = 0, proper = 0;
    long nontrivial_orbits = 0, proper_orbits = 0;
};

inline NaiveCensus naive_census(const LinearSystem& s, const std::vector<int64_t>& a,
                                const SymmetryGroup& g) {
    NaiveCensus out;
    std::set<std::vector<int64_t>> canon;
    std::set<std::vector<int64_t>> canon_proper;
    for (const auto& x : naive_solutions(s.matrix(), a)) {
        ++out.raw;
        if (is_trivial(s, x)) {
            ++out.trivial;
            continue;
        }
        const bool proper = SetPartition::of_vector(std::span<const int64_t>(x)).is_discrete();
        if (proper) ++out.proper;
        auto c = canonicalize(x, g);
        canon.insert(c);
        if (proper) canon_proper.insert(std::move(c));
    }
    out.nontrivial_orbits = static_cast<long>(canon.size());
    out.proper_orbits = static_cast<long>(canon_proper.size());
    return out;
}

// Partitions of non-trivial solutions found with coordinates in {1..hi}.
inline std::set<SetPartition> naive_nontrivial_partitions(const LinearSystem& s, int64_t hi) {
    std::vector<int64_t> a(hi);
    std::iota(a.begin(), a.end(), 1);
    std::set<SetPartition> out;
    for (const auto& x : naive_solutions(s.matrix(), a))
        if (!is_trivial(s, x)) out.insert(SetPartition::of_vector(std::span<const int64_t>(x)));
    return out;
}

}  // namespace oracles
