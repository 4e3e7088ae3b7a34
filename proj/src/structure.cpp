#include "linthresh/structure.hpp"

#include <algorithm>
#include <numeric>

#include "linthresh/feasibility.hpp"

namespace linthresh {

namespace {

std::vector<int> mask_to_indices(uint64_t mask, int m) {
    std::vector<int> idx;
    for (int i = 0; i < m; ++i)
        if (mask & (uint64_t{1} << i)) idx.push_back(i);
    return idx;
}

std::vector<int> complement_indices(const std::vector<int>& q, int m) {
    std::vector<bool> in(m, false);
    for (int i : q) {
        if (i < 0 || i >= m) throw std::out_of_range("column index out of range");
        in[i] = true;
    }
    std::vector<int> out;
    for (int i = 0; i < m; ++i)
        if (!in[i]) out.push_back(i);
    return out;
}

// For equal-size index sets (ascending), lexicographic order on the index
// sequences coincides with: the set containing the lowest differing index
// is smaller.
bool mask_lex_less(uint64_t a, uint64_t b) {
    if (a == b) return false;
    const uint64_t diff = a ^ b;
    const uint64_t low = diff & (~diff + 1);
    return (a & low) != 0;
}

}  // namespace

int r_of(const LinearSystem& s, const std::vector<int>& q) {
    if (q.empty()) throw std::invalid_argument("r_of: Q must be nonempty");
    const auto qbar = complement_indices(q, s.cols());
    if (qbar.empty()) return s.rows();  // rk(M^empty) = 0
    return s.rows() - rank(select_columns(s.matrix(), qbar));
}

ExponentReport c_exponent(const LinearSystem& s) {
    if (!s.is_admissible()) throw std::invalid_argument("c_exponent requires an admissible system");
    const int m = s.cols(), r = s.rows();
    const uint64_t full = (m == 64) ? ~uint64_t{0} : ((uint64_t{1} << m) - 1);

    struct Best {
        long num = 0, den = 1;  // ratio num/den
        int qsize = 0;
        uint64_t qmask = 0;
        bool set = false;
    } best;

    // Enumerate S = complement of Q; rank(M^S) gives r_Q = r - rank(S).
    for_each_column_subset_rank(s.matrix(), [&](uint64_t smask, int srank) {
        if (smask == full) return;  // Q empty
        const uint64_t qmask = full & ~smask;
        const int qsize = __builtin_popcountll(qmask);
        const int rq = r - srank;
        const long den = qsize - rq;
        if (den <= 0)
            throw std::logic_error("admissible system with |Q| <= r_Q; structural error");
        const long num = qsize;
        // Compare num/den > best (cross-multiplied; denominators positive),
        // tie-broken by smaller |Q| then lexicographically smaller Q.
        bool better = false;
        if (!best.set) {
            better = true;
        } else {
            const long lhs = num * best.den, rhs = best.num * den;
            if (lhs != rhs)
                better = lhs > rhs;
            else if (qsize != best.qsize)
                better = qsize < best.qsize;
            else
                better = mask_lex_less(qmask, best.qmask);
        }
        if (better) best = Best{num, den, qsize, qmask, true};
    });

    ExponentReport rep;
    rep.c_value = rat(best.num, best.den);
    rep.argmax_q = mask_to_indices(best.qmask, m);
    rep.threshold_exponent = rat(-best.den, best.num);
    return rep;
}

RationalMatrix induced_submatrix(const RationalMatrix& m, const std::vector<int>& q) {
    if (q.empty()) throw std::invalid_argument("induced submatrix: Q must be nonempty");
    const auto qbar = complement_indices(q, m.cols());
    // rref of (M^Qbar | M^Q): rows whose pivot lands in the Q block have a
    // zero Qbar part; restricted to Q they are exactly the canonical M[Q].
    std::vector<int> order = qbar;
    order.insert(order.end(), q.begin(), q.end());
    const RowEchelon e = echelon_form(select_columns(m, order));
    const int split = static_cast<int>(qbar.size());
    std::vector<int> rows;
    for (int i = 0; i < e.rank(); ++i)
        if (e.pivot_cols[i] >= split) rows.push_back(i);
    if (rows.empty())
        throw std::invalid_argument("induced submatrix requires r_Q > 0");
    RationalMatrix out(static_cast<int>(rows.size()), static_cast<int>(q.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < q.size(); ++j)
            out.at(static_cast<int>(i), static_cast<int>(j)) = e.mat.at(rows[i], split + static_cast<int>(j));
    return out;
}

RationalMatrix induced_submatrix(const LinearSystem& s, const std::vector<int>& q) {
    return induced_submatrix(s.matrix(), q);
}

RationalMatrix derived_system(const RationalMatrix& m, const SetPartition& p) {
    if (p.ground_size() != m.cols())
        throw std::invalid_argument("derived_system: partition ground set mismatch");
    RationalMatrix out(m.rows(), p.size());
    for (int b = 0; b < p.size(); ++b)
        for (int j : p.blocks()[b])
            for (int i = 0; i < m.rows(); ++i) out.at(i, b) += m.at(i, j);
    return out;
}

bool is_trivial(const LinearSystem& s, std::span<const int64_t> x) {
    if (static_cast<int>(x.size()) != s.cols()) throw std::invalid_argument("is_trivial: size mismatch");
    for (int i = 0; i < s.rows(); ++i) {
        Integer acc = 0;
        for (int j = 0; j < s.cols(); ++j) acc += s.matrix().at(i, j).get_num() * x[j];
        if (acc != 0) throw std::invalid_argument("is_trivial: x is not a solution");
    }
    const SetPartition p = SetPartition::of_vector(x);
    return rank(derived_system(s.matrix(), p)) < s.rows();
}

std::vector<SetPartition> nontrivial_partitions(const LinearSystem& s, const StructureCaps& caps) {
    if (!s.is_admissible())
        throw std::invalid_argument("nontrivial_partitions requires an admissible system");
    if (s.cols() > caps.max_partition_cols)
        throw CapExceeded("partition enumeration cap exceeded (m = " + std::to_string(s.cols()) + ")");
    std::vector<SetPartition> out;
    const int r = s.rows();
    for_each_partition(s.cols(), [&](const SetPartition& p) {
        const RationalMatrix mp = derived_system(s.matrix(), p);
        if (rank(mp) != r) return;
        if (irredundancy_failure(mp).has_value()) return;
        if (!positive_solution_exists(mp)) return;
        out.push_back(p);
    });
    return out;
}

namespace {

// Fraction-free integer row basis for repeated row-space membership tests.
// Falls back to the rational echelon when entries are too large.
struct I64RowBasis {
    std::vector<std::vector<int64_t>> rows;
    std::vector<int> pivots;
    bool valid = false;

    static I64RowBasis build(const RationalMatrix& m) {
        I64RowBasis b;
        if (!m.integer_entries()) return b;
        int64_t maxabs = 0;
        std::vector<std::vector<int64_t>> raw(m.rows(), std::vector<int64_t>(m.cols()));
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                if (!m.at(i, j).get_num().fits_slong_p()) return b;
                raw[i][j] = m.at(i, j).get_num().get_si();
                maxabs = std::max(maxabs, std::abs(raw[i][j]));
            }
        // Same growth bound as the subset scan: each reduction squares and
        // doubles; r reductions must stay below 2^62.
        __int128 c = maxabs > 1 ? maxabs : 1;
        for (int k = 0; k < m.rows() + 1; ++k) {
            c = 2 * c * c;
            if (c > ((__int128)1 << 62)) return b;
        }
        for (auto& v : raw) {
            if (!b.reduce(v)) b.insert(std::move(v));
        }
        b.valid = true;
        return b;
    }

    // Reduces v in place against the basis; returns true iff v ends up zero.
    bool reduce(std::vector<int64_t>& v) const {
        for (size_t k = 0; k < rows.size(); ++k) {
            const int p = pivots[k];
            if (v[p] == 0) continue;
            const int64_t vp = v[p], bp = rows[k][p];
            for (size_t i = 0; i < v.size(); ++i)
                v[i] = static_cast<int64_t>((__int128)v[i] * bp - (__int128)rows[k][i] * vp);
        }
        for (int64_t x : v)
            if (x != 0) return false;
        return true;
    }

    void insert(std::vector<int64_t> v) {
        int p = -1;
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) {
                p = static_cast<int>(i);
                break;
            }
        if (p < 0) return;
        // Keep pivot order ascending so reduce() sweeps left to right.
        size_t pos = 0;
        while (pos < pivots.size() && pivots[pos] < p) ++pos;
        pivots.insert(pivots.begin() + pos, p);
        rows.insert(rows.begin() + pos, std::move(v));
    }
};

}  // namespace

std::optional<Integer> library_sigma(const FamilyTag& tag) {
    switch (tag.kind) {
        case FamilyTag::kKap:
        case FamilyTag::kSumFree:
        case FamilyTag::kKSumFree:
            return Integer(2);
        case FamilyTag::kSidon:
            return Integer(8);
        case FamilyTag::kBhg: {
            const int h = tag.p1, g = tag.p2;
            return factorial(g + 1) * pow_int(factorial(h), g + 1);
        }
        case FamilyTag::kKcube:
            return pow_int(Integer(2), (1u << tag.p1) - 1);
        case FamilyTag::kKBarycentric:
            return factorial(tag.p1);
        default:
            return std::nullopt;
    }
}

SymmetryGroup symmetry_group(const LinearSystem& s, const StructureCaps& caps) {
    const int m = s.cols();
    if (m > caps.max_permutation_cols) {
        if (auto sig = library_sigma(s.family())) {
            SymmetryGroup g;
            g.provenance = SymmetryGroup::Provenance::kLibraryConstant;
            g.sigma = *sig;
            return g;
        }
        throw CapExceeded("permutation enumeration cap exceeded (m = " + std::to_string(m) +
                          ") and no library constant available");
    }

    const RationalMatrix& mat = s.matrix();
    const int r = mat.rows();
    const I64RowBasis fast = I64RowBasis::build(mat);
    const RowEchelon ech = echelon_form(mat);

    std::vector<std::vector<int64_t>> irows;
    if (fast.valid) {
        irows.assign(r, std::vector<int64_t>(m));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < m; ++j) irows[i][j] = mat.at(i, j).get_num().get_si();
    }

    SymmetryGroup g;
    g.provenance = SymmetryGroup::Provenance::kEnumerated;
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int64_t> scratch(m);
    RationalVector rscratch(m);
    do {
        // M_pi has columns permuted: (M_pi)_{i,j} = M_{i, pi(j)}. Row spaces
        // agree iff every permuted row stays in the row space of M.
        bool ok = true;
        for (int i = 0; i < r && ok; ++i) {
            if (fast.valid) {
                for (int j = 0; j < m; ++j) scratch[j] = irows[i][perm[j]];
                ok = fast.reduce(scratch);
            } else {
                for (int j = 0; j < m; ++j) rscratch[j] = mat.at(i, perm[j]);
                ok = in_row_space(ech, rscratch);
            }
        }
        if (ok) g.perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    g.sigma = Integer(static_cast<unsigned long>(g.perms.size()));
    return g;
}

std::vector<int64_t> canonicalize(std::span<const int64_t> x, const SymmetryGroup& g) {
    if (!g.has_elements())
        throw std::invalid_argument("canonicalize requires an enumerated symmetry group");
    const int m = static_cast<int>(x.size());
    std::vector<int64_t> best(x.begin(), x.end());
    std::vector<int64_t> cur(m);
    for (const auto& perm : g.perms) {
        for (int i = 0; i < m; ++i) cur[i] = x[perm[i]];
        if (cur < best) best = cur;
    }
    return best;
}

BalanceReport balance_check(const LinearSystem& s, const StructureCaps& caps,
                            const std::vector<SetPartition>* precomputed_pm) {
    if (!s.is_admissible()) throw std::invalid_argument("balance_check requires an admissible system");
    const int m = s.cols(), r = s.rows();
    std::vector<SetPartition> pm_storage;
    const std::vector<SetPartition>* pm = precomputed_pm;
    if (!pm) {
        pm_storage = nontrivial_partitions(s, caps);
        pm = &pm_storage;
    }

    BalanceReport rep;
    rep.verdict = BalanceReport::Verdict::kStrictlyBalanced;
    bool have_tie = false;

    for (const SetPartition& p : *pm) {
        const RationalMatrix mp = derived_system(s.matrix(), p);
        const int pm_cols = mp.cols();
        const uint64_t full = (uint64_t{1} << pm_cols) - 1;
        bool violated = false;
        for_each_column_subset_rank(mp, [&](uint64_t smask, int srank) {
            if (violated) return;
            const int ssize = __builtin_popcountll(smask);
            const int qsize = pm_cols - ssize;
            if (qsize < 2 || qsize >= pm_cols) return;
            const int rq = r - srank;  // rk(M_p[Q])
            if (rq <= 0) return;       // ratio <= 1, never tight
            // Compare |Q|/(|Q|-rq) with m/(m-r).
            const long lhs = static_cast<long>(qsize) * (m - r);
            const long rhs = static_cast<long>(m) * (qsize - rq);
            if (lhs > rhs) {
                rep.verdict = BalanceReport::Verdict::kUnbalanced;
                rep.witness_partition = p;
                rep.witness_q = mask_to_indices(full & ~smask, pm_cols);
                rep.witness_ratio = rat(qsize, qsize - rq);
                violated = true;
            } else if (lhs == rhs && !have_tie) {
                have_tie = true;
                rep.witness_partition = p;
                rep.witness_q = mask_to_indices(full & ~smask, pm_cols);
                rep.witness_ratio = rat(qsize, qsize - rq);
            }
        });
        if (violated) return rep;
    }
    if (have_tie) rep.verdict = BalanceReport::Verdict::kBalancedNotStrictly;
    return rep;
}

}  // namespace linthresh
