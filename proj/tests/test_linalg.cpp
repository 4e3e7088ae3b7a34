#include <doctest.h>

#include <random>

#include "linthresh/linalg.hpp"
#include "oracles.hpp"

using namespace linthresh;

TEST_SUITE_BEGIN("linalg");

namespace {

RationalMatrix b32_matrix() {
    return RationalMatrix::from_rows({{1, 1, 1, -1, -1, -1, 0, 0, 0}, {0, 0, 0, 1, 1, 1, -1, -1, -1}});
}

RationalMatrix random_small(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dim(0, 5), entry(-4, 4);
    const int r = dim(rng), c = dim(rng);
    RationalMatrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = rat(entry(rng));
    return m;
}

}  // namespace

TEST_CASE("rank basics") {
    CHECK(rank(b32_matrix()) == 2);
    CHECK(rank(RationalMatrix(0, 0)) == 0);
    CHECK(rank(RationalMatrix(0, 3)) == 0);
    CHECK(rank(RationalMatrix(3, 0)) == 0);
    CHECK(rank(RationalMatrix::from_rows({{1, 1, -1, -1}})) == 1);
}

TEST_CASE("rref canonical form") {
    CHECK(rref(RationalMatrix::from_rows({{2, 2, -2, -2}})) ==
          RationalMatrix::from_rows({{1, 1, -1, -1}}));
    const auto id = RationalMatrix::identity(4);
    CHECK(rref(id) == id);
    CHECK(rref(RationalMatrix::from_rows({{1, -2, 1, 0}, {2, -4, 2, 0}})) ==
          RationalMatrix::from_rows({{1, -2, 1, 0}}));
}

TEST_CASE("kernel basis") {
    const auto sidon = RationalMatrix::from_rows({{1, 1, -1, -1}});
    const auto kb = kernel_basis(sidon);
    CHECK(kb.size() == 3);
    for (const auto& v : kb)
        for (const auto& y : matvec(sidon, v)) CHECK(y == 0);

    CHECK(kernel_basis(RationalMatrix::identity(3)).empty());

    const auto ap = RationalMatrix::from_rows({{1, -2, 1}});
    const auto kap = kernel_basis(ap);
    REQUIRE(kap.size() == 2);
    for (const auto& v : kap)
        for (const auto& y : matvec(ap, v)) CHECK(y == 0);
    // The two vectors really span the solution plane.
    RationalMatrix span(2, 3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) span.at(i, j) = kap[i][j];
    CHECK(rank(span) == 2);
}

TEST_CASE("solve_square") {
    const auto id = RationalMatrix::identity(3);
    const RationalVector b{rat(3), rat(-1), rat(7)};
    auto x = solve_square(id, b);
    REQUIRE(x.has_value());
    CHECK(*x == b);

    const auto sing = RationalMatrix::from_rows({{1, 2}, {2, 4}});
    CHECK(!solve_square(sing, {rat(1), rat(1)}).has_value());

    const auto one = RationalMatrix::from_rows({{2}});
    auto y = solve_square(one, {rat(3)});
    REQUIRE(y.has_value());
    CHECK((*y)[0] == rat(3, 2));

    CHECK_THROWS_AS((void)solve_square(one, {rat(1), rat(2)}), std::invalid_argument);
}

TEST_CASE("select_columns") {
    const auto sidon = RationalMatrix::from_rows({{1, 1, -1, -1}});
    CHECK(select_columns(sidon, {0, 1}) == RationalMatrix::from_rows({{1, 1}}));
    CHECK(select_columns(sidon, {0, 1, 2, 3}) == sidon);
    const auto m1 = RationalMatrix::from_rows({{1, 1, -1, -1, 0, 0, 0, 0, 0},
                                               {1, 1, 1, 1, 1, 1, 1, 1, -6}});
    CHECK(select_columns(m1, {4, 5, 6, 7, 8}) ==
          RationalMatrix::from_rows({{0, 0, 0, 0, 0}, {1, 1, 1, 1, -6}}));
    CHECK(select_columns(m1, {}) == RationalMatrix(2, 0));
    CHECK_THROWS_AS((void)select_columns(sidon, {4}), std::out_of_range);
}

TEST_CASE("exact arithmetic properties on random matrices") {
    std::mt19937_64 rng(20240817);
    for (int iter = 0; iter < 200; ++iter) {
        const auto m = random_small(rng);
        const auto e = echelon_form(m);
        const int rk = e.rank();
        CHECK(rk == oracles::minor_rank(m));
        CHECK(rk == rref(m).rows());
        CHECK(rref(rref(m)) == rref(m));
        const auto kb = kernel_basis(m);
        CHECK(static_cast<int>(kb.size()) == m.cols() - rk);
        for (const auto& v : kb)
            for (const auto& y : matvec(m, v)) CHECK(y == 0);
    }
}

TEST_CASE("row space membership") {
    const auto m = RationalMatrix::from_rows({{1, 1, -1, -1}, {0, 2, 0, -2}});
    const auto e = echelon_form(m);
    CHECK(in_row_space(e, {rat(1), rat(3), rat(-1), rat(-3)}));
    CHECK(in_row_space(e, {rat(0), rat(0), rat(0), rat(0)}));
    CHECK(!in_row_space(e, {rat(1), rat(0), rat(0), rat(0)}));
}

TEST_CASE("column subset rank scan agrees with direct ranks") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 25; ++iter) {
        std::uniform_int_distribution<int> dim(1, 4), cdim(1, 6), entry(-3, 3);
        const int r = dim(rng), c = cdim(rng);
        RationalMatrix m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.at(i, j) = rat(entry(rng));
        int visits = 0;
        for_each_column_subset_rank(m, [&](uint64_t mask, int rk) {
            ++visits;
            std::vector<int> cols;
            for (int j = 0; j < c; ++j)
                if (mask & (uint64_t{1} << j)) cols.push_back(j);
            CHECK(rk == rank(select_columns(m, cols)));
        });
        CHECK(visits == (1 << c));
    }
}

TEST_CASE("column subset rank scan with large entries uses the exact fallback") {
    RationalMatrix m(2, 3);
    m.at(0, 0) = rat(Integer("123456789123456789"), Integer(1));
    m.at(0, 1) = rat(1);
    m.at(0, 2) = rat(-1);
    m.at(1, 0) = rat(0);
    m.at(1, 1) = rat(Integer("987654321987654321"), Integer(1));
    m.at(1, 2) = rat(-1);
    for_each_column_subset_rank(m, [&](uint64_t mask, int rk) {
        std::vector<int> cols;
        for (int j = 0; j < 3; ++j)
            if (mask & (uint64_t{1} << j)) cols.push_back(j);
        CHECK(rk == rank(select_columns(m, cols)));
    });
}

TEST_SUITE_END();
