#include "linthresh/feasibility.hpp"

#include <stdexcept>
#include <vector>

namespace linthresh {

// Substituting x = 1 + s turns the question into feasibility of
// {A s = b, s >= 0} with b = -A*1. Phase-1: minimize the sum of one
// artificial variable per row; feasible iff the optimum is zero.
bool positive_solution_exists(const RationalMatrix& m) {
    const int r = m.rows(), n = m.cols();
    if (r == 0) return true;  // no constraints, x = 1 works

    // Tableau: r constraint rows + objective row; columns: n structural,
    // r artificial, 1 rhs.
    const int cols = n + r + 1;
    std::vector<RationalVector> t(r + 1, RationalVector(cols, rat(0)));
    for (int i = 0; i < r; ++i) {
        Rational b = rat(0);
        for (int j = 0; j < n; ++j) b -= m.at(i, j);
        const bool flip = b < 0;
        for (int j = 0; j < n; ++j) t[i][j] = flip ? -m.at(i, j) : m.at(i, j);
        t[i][n + i] = rat(1);
        t[i][cols - 1] = flip ? -b : b;
    }
    // Objective = sum of artificials; express in terms of non-basic columns.
    for (int j = 0; j < cols; ++j) {
        if (j >= n && j < n + r) continue;
        Rational s = rat(0);
        for (int i = 0; i < r; ++i) s += t[i][j];
        t[r][j] = -s;
    }

    std::vector<int> basis(r);
    for (int i = 0; i < r; ++i) basis[i] = n + i;

    for (;;) {
        // Bland: entering column = lowest index with negative reduced cost.
        int enter = -1;
        for (int j = 0; j < cols - 1; ++j) {
            if (t[r][j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter < 0) break;

        int leave = -1;
        Rational best;
        for (int i = 0; i < r; ++i) {
            if (t[i][enter] <= 0) continue;
            Rational ratio = t[i][cols - 1] / t[i][enter];
            if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave < 0) throw std::logic_error("phase-1 objective unbounded");

        const Rational piv = t[leave][enter];
        for (int j = 0; j < cols; ++j) t[leave][j] /= piv;
        for (int i = 0; i <= r; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            const Rational f = t[i][enter];
            for (int j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }

    // Optimum value is -t[r][rhs]; feasible iff it is zero.
    return t[r][cols - 1] == 0;
}

}  // namespace linthresh
