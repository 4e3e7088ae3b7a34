#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "linthresh/matrix.hpp"

namespace linthresh {

// Reduced row echelon form with pivot bookkeeping. `mat` has no zero rows;
// pivots are 1 with zeros above and below, so two matrices have equal row
// spaces iff their echelons compare equal.
struct RowEchelon {
    RationalMatrix mat;
    std::vector<int> pivot_cols;  // ascending, one per row of mat
    int rank() const { return mat.rows(); }
};

RowEchelon echelon_form(const RationalMatrix& m);

// Canonical rref with zero rows dropped.
RationalMatrix rref(const RationalMatrix& m);

int rank(const RationalMatrix& m);

// Basis of {x : M x = 0}; exactly cols - rank vectors.
std::vector<RationalVector> kernel_basis(const RationalMatrix& m);

// Unique solution of A x = b for square A, or nullopt when A is singular.
// Dimension mismatches throw.
std::optional<RationalVector> solve_square(const RationalMatrix& a, const RationalVector& b);

// Keeps the columns listed in `cols` (0-based), in the given order.
RationalMatrix select_columns(const RationalMatrix& m, const std::vector<int>& cols);

// Reduces `row` against the echelon; returns true iff it lies in the row space.
bool in_row_space(const RowEchelon& e, const RationalVector& row);

// Visits every subset of the columns of `m` (as a bitmask over 0..cols-1,
// including the empty set) together with the rank of the selected columns.
// Uses a DFS with incremental elimination; overall O(2^cols * rank^2) field ops.
void for_each_column_subset_rank(const RationalMatrix& m,
                                 const std::function<void(uint64_t mask, int rank)>& visit);

RationalVector matvec(const RationalMatrix& m, const RationalVector& x);

}  // namespace linthresh
