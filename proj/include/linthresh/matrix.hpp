#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "linthresh/rational.hpp"

namespace linthresh {

using RationalVector = std::vector<Rational>;

// Dense row-major matrix of exact rationals. Zero rows and/or zero columns
// are legal; rank conventions for those live in linalg.hpp.
class RationalMatrix {
  public:
    RationalMatrix() = default;
    RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }

    static RationalMatrix from_rows(const std::vector<std::vector<long>>& rows) {
        int r = static_cast<int>(rows.size());
        int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
        RationalMatrix m(r, c);
        for (int i = 0; i < r; ++i) {
            if (static_cast<int>(rows[i].size()) != c)
                throw std::invalid_argument("ragged rows");
            for (int j = 0; j < c; ++j) m.at(i, j) = rat(rows[i][j]);
        }
        return m;
    }

    static RationalMatrix identity(int n) {
        RationalMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = rat(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Rational& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    RationalVector row(int i) const {
        RationalVector v(cols_);
        for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
        return v;
    }

    RationalVector col(int j) const {
        RationalVector v(rows_);
        for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
        return v;
    }

    bool integer_entries() const {
        for (const auto& q : a_)
            if (!is_integer(q)) return false;
        return true;
    }

    bool is_zero() const {
        for (const auto& q : a_)
            if (q != 0) return false;
        return true;
    }

    friend bool operator==(const RationalMatrix& x, const RationalMatrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

}  // namespace linthresh
