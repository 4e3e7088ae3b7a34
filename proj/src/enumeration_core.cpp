#include "enumeration_core.hpp"

#include "linthresh/linalg.hpp"

namespace linthresh::detail {

FreeBound free_bound_split(const LinearSystem& s) {
    if (!s.is_admissible()) throw std::invalid_argument("enumeration requires an admissible system");
    const RationalMatrix& m = s.matrix();
    const int r = m.rows(), cols = m.cols();

    FreeBound fb;
    {
        // Greedy left-to-right basis of the column space.
        RationalMatrix probe(r, 0);
        std::vector<RationalVector> basis;
        std::vector<int> pivots;
        for (int j = 0; j < cols && static_cast<int>(fb.bound_cols.size()) < r; ++j) {
            RationalVector v = m.col(j);
            for (size_t k = 0; k < basis.size(); ++k) {
                if (v[pivots[k]] == 0) continue;
                const Rational fct = v[pivots[k]] / basis[k][pivots[k]];
                for (int i = 0; i < r; ++i) v[i] -= fct * basis[k][i];
            }
            int p = -1;
            for (int i = 0; i < r; ++i)
                if (v[i] != 0) {
                    p = i;
                    break;
                }
            if (p < 0) continue;
            basis.push_back(std::move(v));
            pivots.push_back(p);
            fb.bound_cols.push_back(j);
        }
        if (static_cast<int>(fb.bound_cols.size()) != r)
            throw std::logic_error("full-rank system without an invertible column basis");
    }
    {
        std::vector<bool> is_bound(cols, false);
        for (int j : fb.bound_cols) is_bound[j] = true;
        for (int j = 0; j < cols; ++j)
            if (!is_bound[j]) fb.free_cols.push_back(j);
    }

    // rref([B | F]) = [I | B^{-1} F]; then x_B = -(B^{-1} F) x_F.
    std::vector<int> order = fb.bound_cols;
    order.insert(order.end(), fb.free_cols.begin(), fb.free_cols.end());
    const RowEchelon e = echelon_form(select_columns(m, order));
    const int f = cols - r;

    Integer den(1);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < f; ++j) {
            Integer d = e.mat.at(i, r + j).get_den();
            den = den / gcd(den, d) * d;  // lcm
        }
    fb.den = den;
    fb.num.assign(r, std::vector<Integer>(f));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < f; ++j) {
            const Rational& q = e.mat.at(i, r + j);
            fb.num[i][j] = -(q.get_num() * (den / q.get_den()));
        }
    return fb;
}

bool Int64Tables::build(const FreeBound& fb, int64_t lo, int64_t hi) {
    r = static_cast<int>(fb.num.size());
    f = static_cast<int>(fb.free_cols.size());
    if (!fb.den.fits_slong_p()) return false;
    den = fb.den.get_si();
    num.assign(r, std::vector<int64_t>(f));

    const int64_t limit = int64_t{1} << 60;
    const int64_t span = std::max(std::llabs(lo), std::llabs(hi));
    __int128 worst = 0;
    for (int i = 0; i < r; ++i) {
        __int128 row_abs = 0;
        for (int j = 0; j < f; ++j) {
            if (!fb.num[i][j].fits_slong_p()) return false;
            num[i][j] = fb.num[i][j].get_si();
            row_abs += (__int128)std::llabs(num[i][j]) * span;
        }
        worst = std::max(worst, row_abs);
    }
    if (worst > limit || (__int128)den * span > limit || (__int128)den * span + worst > limit)
        return false;

    suf_min.assign(f + 1, std::vector<int64_t>(r, 0));
    suf_max.assign(f + 1, std::vector<int64_t>(r, 0));
    for (int l = f - 1; l >= 0; --l)
        for (int i = 0; i < r; ++i) {
            const int64_t c = num[i][l];
            const int64_t a = std::min(c * lo, c * hi), b = std::max(c * lo, c * hi);
            suf_min[l][i] = suf_min[l + 1][i] + a;
            suf_max[l][i] = suf_max[l + 1][i] + b;
        }
    return true;
}

}  // namespace linthresh::detail
