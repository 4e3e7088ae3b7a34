#include "linthresh/linalg.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <stdexcept>

namespace linthresh {

RowEchelon echelon_form(const RationalMatrix& m) {
    RationalMatrix a = m;
    const int rows = a.rows(), cols = a.cols();
    std::vector<int> pivots;
    int pr = 0;
    for (int pc = 0; pc < cols && pr < rows; ++pc) {
        int sel = -1;
        for (int i = pr; i < rows; ++i) {
            if (a.at(i, pc) != 0) {
                sel = i;
                break;
            }
        }
        if (sel < 0) continue;
        if (sel != pr)
            for (int j = 0; j < cols; ++j) std::swap(a.at(sel, j), a.at(pr, j));
        const Rational inv = a.at(pr, pc);
        for (int j = pc; j < cols; ++j) a.at(pr, j) /= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == pr || a.at(i, pc) == 0) continue;
            const Rational f = a.at(i, pc);
            for (int j = pc; j < cols; ++j) a.at(i, j) -= f * a.at(pr, j);
        }
        pivots.push_back(pc);
        ++pr;
    }
    RationalMatrix out(pr, cols);
    for (int i = 0; i < pr; ++i)
        for (int j = 0; j < cols; ++j) out.at(i, j) = a.at(i, j);
    return RowEchelon{std::move(out), std::move(pivots)};
}

RationalMatrix rref(const RationalMatrix& m) { return echelon_form(m).mat; }

int rank(const RationalMatrix& m) { return echelon_form(m).rank(); }

std::vector<RationalVector> kernel_basis(const RationalMatrix& m) {
    const RowEchelon e = echelon_form(m);
    const int cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (int p : e.pivot_cols) is_pivot[p] = true;

    std::vector<RationalVector> basis;
    basis.reserve(cols - e.rank());
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(cols, rat(0));
        v[f] = rat(1);
        for (int i = 0; i < e.rank(); ++i) v[e.pivot_cols[i]] = -e.mat.at(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RationalVector> solve_square(const RationalMatrix& a, const RationalVector& b) {
    const int n = a.rows();
    if (a.cols() != n || static_cast<int>(b.size()) != n)
        throw std::invalid_argument("solve_square: dimension mismatch");

    RationalMatrix aug(n, n + 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n) = b[i];
    }
    const RowEchelon e = echelon_form(aug);
    // Singular iff fewer than n pivots among the first n columns.
    if (e.rank() < n || (e.rank() > 0 && e.pivot_cols.back() == n)) return std::nullopt;
    RationalVector x(n);
    for (int i = 0; i < n; ++i) x[e.pivot_cols[i]] = e.mat.at(i, n);
    return x;
}

RationalMatrix select_columns(const RationalMatrix& m, const std::vector<int>& cols) {
    RationalMatrix out(m.rows(), static_cast<int>(cols.size()));
    for (size_t k = 0; k < cols.size(); ++k) {
        const int j = cols[k];
        if (j < 0 || j >= m.cols()) throw std::out_of_range("select_columns: index out of range");
        for (int i = 0; i < m.rows(); ++i) out.at(i, static_cast<int>(k)) = m.at(i, j);
    }
    return out;
}

bool in_row_space(const RowEchelon& e, const RationalVector& row) {
    if (static_cast<int>(row.size()) != e.mat.cols())
        throw std::invalid_argument("in_row_space: dimension mismatch");
    RationalVector v = row;
    for (int i = 0; i < e.rank(); ++i) {
        const int p = e.pivot_cols[i];
        if (v[p] == 0) continue;
        const Rational f = v[p];
        for (int j = p; j < e.mat.cols(); ++j) v[j] -= f * e.mat.at(i, j);
    }
    for (const auto& q : v)
        if (q != 0) return false;
    return true;
}

RationalVector matvec(const RationalMatrix& m, const RationalVector& x) {
    if (static_cast<int>(x.size()) != m.cols())
        throw std::invalid_argument("matvec: dimension mismatch");
    RationalVector y(m.rows(), rat(0));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0 && x[j] != 0) y[i] += m.at(i, j) * x[j];
    return y;
}

namespace {

// Fraction-free incremental column elimination over int64 with overflow
// checks; falls back to rationals when entries are too large. The subset
// scan dominates the balance check, where entries stay tiny.
struct Int64Overflow {};

class I64ColumnEchelon {
  public:
    explicit I64ColumnEchelon(int dim) : dim_(dim) {}

    // Returns true when v enlarges the span (and keeps it); basis rows are
    // never touched, so undo is a plain pop.
    bool insert(std::vector<int64_t> v) {
        for (size_t k = 0; k < basis_.size(); ++k) {
            const int p = pivots_[k];
            if (v[p] == 0) continue;
            const int64_t vp = v[p], bp = basis_[k][p];
            for (int i = 0; i < dim_; ++i) {
                __int128 t = (__int128)v[i] * bp - (__int128)basis_[k][i] * vp;
                if (t > kLimit || t < -kLimit) throw Int64Overflow{};
                v[i] = static_cast<int64_t>(t);
            }
        }
        int p = -1;
        for (int i = 0; i < dim_; ++i)
            if (v[i] != 0) {
                p = i;
                break;
            }
        if (p < 0) return false;
        pivots_.push_back(p);
        basis_.push_back(std::move(v));
        return true;
    }

    void pop() {
        pivots_.pop_back();
        basis_.pop_back();
    }

    int rank() const { return static_cast<int>(basis_.size()); }

  private:
    static constexpr __int128 kLimit = (__int128)1 << 62;
    int dim_;
    std::vector<std::vector<int64_t>> basis_;
    std::vector<int> pivots_;
};

class RatColumnEchelon {
  public:
    explicit RatColumnEchelon(int dim) : dim_(dim) {}

    bool insert(RationalVector v) {
        for (size_t k = 0; k < basis_.size(); ++k) {
            const int p = pivots_[k];
            if (v[p] == 0) continue;
            const Rational f = v[p] / basis_[k][p];
            for (int i = 0; i < dim_; ++i) v[i] -= f * basis_[k][i];
        }
        int p = -1;
        for (int i = 0; i < dim_; ++i)
            if (v[i] != 0) {
                p = i;
                break;
            }
        if (p < 0) return false;
        pivots_.push_back(p);
        basis_.push_back(std::move(v));
        return true;
    }

    void pop() {
        pivots_.pop_back();
        basis_.pop_back();
    }

    int rank() const { return static_cast<int>(basis_.size()); }

  private:
    int dim_;
    std::vector<RationalVector> basis_;
    std::vector<int> pivots_;
};

template <class Echelon, class Col>
void subset_dfs(int idx, int cols, uint64_t mask, Echelon& ech, const std::vector<Col>& column,
                const std::function<void(uint64_t, int)>& visit) {
    if (idx == cols) {
        visit(mask, ech.rank());
        return;
    }
    subset_dfs(idx + 1, cols, mask, ech, column, visit);
    const bool grew = ech.insert(column[idx]);
    subset_dfs(idx + 1, cols, mask | (uint64_t{1} << idx), ech, column, visit);
    if (grew) ech.pop();
}

// Worst-case fraction-free growth: one reduction step maps magnitudes
// (v, b) <= C to 2*C^2, and an insertion reduces at most rank times.
bool int64_growth_safe(int64_t maxabs, int max_reductions) {
    __int128 c = maxabs > 1 ? maxabs : 1;
    const __int128 limit = (__int128)1 << 62;
    for (int k = 0; k < max_reductions; ++k) {
        c = 2 * c * c;
        if (c > limit) return false;
    }
    return true;
}

bool try_int64_scan(const RationalMatrix& m, const std::function<void(uint64_t, int)>& visit) {
    if (!m.integer_entries()) return false;
    std::vector<std::vector<int64_t>> colv(m.cols(), std::vector<int64_t>(m.rows()));
    int64_t maxabs = 0;
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i) {
            const Integer& z = m.at(i, j).get_num();
            if (!z.fits_slong_p()) return false;
            colv[j][i] = z.get_si();
            maxabs = std::max(maxabs, std::abs(colv[j][i]));
        }
    if (!int64_growth_safe(maxabs, m.rows())) return false;
    I64ColumnEchelon ech(m.rows());
    try {
        subset_dfs(0, m.cols(), 0, ech, colv, visit);
    } catch (const Int64Overflow&) {
        throw std::logic_error("int64 subset scan overflowed despite growth precheck");
    }
    return true;
}

}  // namespace

void for_each_column_subset_rank(const RationalMatrix& m,
                                 const std::function<void(uint64_t mask, int rank)>& visit) {
    if (m.cols() > 62) throw std::invalid_argument("column subset scan: too many columns");
    if (try_int64_scan(m, visit)) return;
    std::vector<RationalVector> colv(m.cols());
    for (int j = 0; j < m.cols(); ++j) colv[j] = m.col(j);
    RatColumnEchelon ech(m.rows());
    subset_dfs(0, m.cols(), 0, ech, colv, visit);
}

}  // namespace linthresh
