#include <doctest.h>

#include "linthresh/structure.hpp"
#include "linthresh/system.hpp"
#include "oracles.hpp"

using namespace linthresh;

TEST_SUITE_BEGIN("system");

TEST_CASE("positivity") {
    CHECK(check_positivity(make_sidon().matrix()));
    CHECK(!check_positivity(RationalMatrix::from_rows({{1, 1}})));
    CHECK(check_positivity(make_kap(3).matrix()));
    // x1 forced to zero.
    CHECK(!check_positivity(RationalMatrix::from_rows({{1, 0}})));
}

TEST_CASE("irredundancy") {
    CHECK(!irredundancy_failure(make_sidon().matrix()).has_value());
    const auto fail = irredundancy_failure(RationalMatrix::from_rows({{1, -1}}));
    REQUIRE(fail.has_value());
    CHECK(*fail == std::make_pair(0, 1));
    // The derived system (M_{B_3[2]})_{p1}: rank drops and block variables
    // are forced equal, so its partition is excluded.
    const auto b32 = make_bhg(3, 2).matrix();
    const auto p1 = SetPartition::from_blocks({{0, 3}, {1, 4}, {2, 5}, {6}, {7}, {8}});
    const auto mp1 = derived_system(b32, p1);
    CHECK(mp1 == RationalMatrix::from_rows({{0, 0, 0, 0, 0, 0}, {1, 1, 1, -1, -1, -1}}));
    CHECK(irredundancy_failure(mp1).has_value());
}

TEST_CASE("nondegeneracy") {
    CHECK(check_nondegeneracy(make_m2().matrix()));
    CHECK(rank(make_m2().matrix()) == 3);
    CHECK(!check_nondegeneracy(RationalMatrix::from_rows({{1, -2, 1}, {1, -2, 1}})));
    CHECK(check_nondegeneracy(make_bhg(3, 2).matrix()));
    CHECK(rank(make_bhg(3, 2).matrix()) == 2);
}

TEST_CASE("named family shapes") {
    const auto b32 = make_bhg(3, 2);
    CHECK(b32.matrix() == RationalMatrix::from_rows({{1, 1, 1, -1, -1, -1, 0, 0, 0},
                                                     {0, 0, 0, 1, 1, 1, -1, -1, -1}}));
    CHECK(make_kap(3).matrix() == RationalMatrix::from_rows({{1, -2, 1}}));
    CHECK(make_ksumfree(3).matrix() == RationalMatrix::from_rows({{1, 1, -3}}));
    CHECK(make_sumfree().matrix() == RationalMatrix::from_rows({{1, 1, -1}}));
    CHECK(make_kbarycentric(4).matrix() == RationalMatrix::from_rows({{1, 1, 1, 1, -4}}));
    CHECK(make_sidon().matrix() == RationalMatrix::from_rows({{1, 1, -1, -1}}));

    SUBCASE("table dimensions") {
        for (int k = 3; k <= 8; ++k) {
            CHECK(make_kap(k).rows() == k - 2);
            CHECK(make_kap(k).cols() == k);
        }
        for (int h = 2; h <= 4; ++h)
            for (int g = 1; g <= 3; ++g) {
                CHECK(make_bhg(h, g).rows() == g);
                CHECK(make_bhg(h, g).cols() == h * (g + 1));
            }
        for (int k = 2; k <= 4; ++k) {
            CHECK(make_kcube(k).rows() == (1 << k) - k - 1);
            CHECK(make_kcube(k).cols() == (1 << k));
        }
    }

    SUBCASE("parameter validation") {
        CHECK_THROWS_AS((void)make_kap(2), std::invalid_argument);
        CHECK_THROWS_AS((void)make_bhg(1, 1), std::invalid_argument);
        CHECK_THROWS_AS((void)make_bhg(2, 0), std::invalid_argument);
        CHECK_THROWS_AS((void)make_ksumfree(0), std::invalid_argument);
        CHECK_THROWS_AS((void)make_kbarycentric(1), std::invalid_argument);
    }
}

TEST_CASE("every named family is admissible") {
    std::vector<LinearSystem> systems;
    for (int k = 3; k <= 8; ++k) systems.push_back(make_kap(k));
    systems.push_back(make_sidon());
    for (int h = 2; h <= 3; ++h)
        for (int g = 1; g <= 2; ++g) systems.push_back(make_bhg(h, g));
    for (int k = 2; k <= 4; ++k) systems.push_back(make_kcube(k));
    systems.push_back(make_sumfree());
    for (int k = 1; k <= 5; ++k) systems.push_back(make_ksumfree(k));
    for (int k = 2; k <= 6; ++k) systems.push_back(make_kbarycentric(k));
    systems.push_back(make_m1());
    systems.push_back(make_m2());
    systems.push_back(make_eq7());
    for (const auto& s : systems) {
        INFO("system ", s.name());
        CHECK(s.is_admissible());
    }
}

TEST_CASE("k-AP rank and kernel dimension") {
    for (int k = 3; k <= 8; ++k) {
        const auto s = make_kap(k);
        CHECK(s.rank() == k - 2);
        CHECK(kernel_basis(s.matrix()).size() == 2);
    }
}

TEST_CASE("k-cube free dimension matches the threshold exponent") {
    for (int k = 2; k <= 4; ++k) {
        const auto s = make_kcube(k);
        CHECK(s.cols() - s.rank() == k + 1);
    }
}

TEST_CASE("irredundancy matches the brute-force separation oracle") {
    // Oracle: enumerate solutions with coordinates in {1..10}; irredundant
    // iff every pair is separated by some solution.
    auto oracle = [](const RationalMatrix& m) {
        std::vector<int64_t> a(10);
        std::iota(a.begin(), a.end(), 1);
        const auto sols = oracles::naive_solutions(m, a);
        for (int i = 0; i < m.cols(); ++i)
            for (int j = i + 1; j < m.cols(); ++j) {
                bool separated = false;
                for (const auto& x : sols)
                    if (x[i] != x[j]) {
                        separated = true;
                        break;
                    }
                if (!separated) return std::make_optional(std::make_pair(i, j));
            }
        return std::optional<std::pair<int, int>>();
    };
    const std::vector<RationalMatrix> cases = {
        make_sidon().matrix(),
        make_kap(3).matrix(),
        make_sumfree().matrix(),
        make_ksumfree(2).matrix(),
        RationalMatrix::from_rows({{1, -1}}),
        RationalMatrix::from_rows({{1, 1, -2}, {0, 1, -1}}),  // forces x2 = x3, then x1 = x3
    };
    for (const auto& m : cases) {
        const auto got = irredundancy_failure(m);
        const auto want = oracle(m);
        CHECK(got.has_value() == want.has_value());
        if (got && want) CHECK(*got == *want);
    }
}

TEST_CASE("text and JSON round trips") {
    const auto m2 = make_m2();
    const auto text = format_system_text(m2.matrix());
    const auto back = parse_system_text(text, "M2");
    CHECK(back.matrix() == m2.matrix());

    const auto js = parse_system_json(R"({"name":"sidon-ish","rows":[[1,1,-1,-1]]})");
    CHECK(js.matrix() == make_sidon().matrix());
    CHECK(js.name() == "sidon-ish");

    CHECK_THROWS_AS((void)parse_system_text("2 2\n1 2", ""), ParseError);
    CHECK_THROWS_AS((void)parse_system_text("1 2\n1 x", ""), ParseError);
    CHECK_THROWS_AS((void)parse_system_json("{\"rows\": [[1,2],[3]]}"), ParseError);
    CHECK_THROWS_AS((void)parse_system_json("not json"), ParseError);
}

TEST_CASE("admissibility report names the failing condition") {
    const LinearSystem redundant(RationalMatrix::from_rows({{1, -1}}));
    CHECK(!redundant.is_admissible());
    CHECK(redundant.admissibility().failure() == "irredundancy violated (pair 1,2)");

    const LinearSystem nonpos(RationalMatrix::from_rows({{1, 1}}));
    CHECK(nonpos.admissibility().failure() == "positivity violated");

    const LinearSystem square(RationalMatrix::from_rows({{1, -2, 1}, {0, 1, -1}, {1, 0, -1}}));
    CHECK(!square.is_admissible());
}

TEST_SUITE_END();
