#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diffbound/multiindex.hpp"

using namespace diffbound;

TEST_CASE("alpha basic values") {
    CHECK(alpha(3, 0) == 1);
    CHECK(alpha(1, 7) == 8);
    CHECK(alpha(2, 16) == 153);
    CHECK(alpha(2, 15) == 136);
    // big ell stays exact
    CHECK(alpha(2, BigInt(2097174)) == BigInt(2097176) * 2097175 / 2);
}

TEST_CASE("alpha rejects bad input") {
    CHECK_THROWS_AS(alpha(0, 3), DomainError);
    CHECK_THROWS_AS(alpha(2, -1), DomainError);
}

TEST_CASE("pascal identity") {
    for (int m = 2; m <= 6; ++m) {
        for (int ell = 1; ell <= 20; ++ell) {
            CHECK(alpha(m, ell) == alpha(m, ell - 1) + alpha(m - 1, ell));
        }
    }
}

TEST_CASE("gamma enumeration matches spec'd order") {
    auto g1 = enumerate_gamma(1, 2);
    REQUIRE(g1.size() == 3);
    CHECK(g1[0].entries() == std::vector<int>{0});
    CHECK(g1[1].entries() == std::vector<int>{1});
    CHECK(g1[2].entries() == std::vector<int>{2});

    auto g2 = enumerate_gamma(2, 1);
    REQUIRE(g2.size() == 3);
    CHECK(g2[0].entries() == std::vector<int>{0, 0});
    CHECK(g2[1].entries() == std::vector<int>{1, 0});
    CHECK(g2[2].entries() == std::vector<int>{0, 1});

    CHECK(enumerate_gamma(2, 4).size() == 15);
}

TEST_CASE("gamma cardinality equals alpha") {
    for (int m = 1; m <= 4; ++m) {
        for (int ell = 0; ell <= 8; ++ell) {
            CHECK(BigInt(enumerate_gamma(m, ell).size()) == alpha(m, ell));
        }
    }
}

TEST_CASE("gamma enumeration is strictly ascending canonical") {
    auto g = enumerate_gamma(3, 5);
    for (std::size_t k = 1; k < g.size(); ++k) {
        CHECK(cmp_canonical(g[k - 1], g[k]) == std::strong_ordering::less);
    }
}

TEST_CASE("gamma enumeration budget") {
    CHECK_THROWS_AS(enumerate_gamma(2, 10, /*max_elements=*/5), BudgetError);
}

TEST_CASE("product order on indexed points") {
    auto pt = [](std::vector<int> e, int i) { return IndexedPoint{MultiIndex(std::move(e)), i}; };
    CHECK(cmp_product(pt({1, 0}, 0), pt({1, 2}, 0)) == PartialCmp::Less);
    CHECK(cmp_product(pt({1, 0}, 0), pt({0, 2}, 0)) == PartialCmp::Incomparable);
    CHECK(cmp_product(pt({1, 0}, 0), pt({1, 0}, 1)) == PartialCmp::Incomparable);
    CHECK(cmp_product(pt({1, 0}, 0), pt({1, 0}, 0)) == PartialCmp::Equal);
    CHECK(cmp_product(pt({1, 2}, 0), pt({1, 0}, 0)) == PartialCmp::Greater);
}

TEST_CASE("canonical order on indexed points") {
    auto pt = [](std::vector<int> e, int i) { return IndexedPoint{MultiIndex(std::move(e)), i}; };
    CHECK(cmp_canonical(pt({1, 0}, 0), pt({0, 1}, 0)) == std::strong_ordering::less);
    CHECK(cmp_canonical(pt({0, 0}, 1), pt({1, 0}, 0)) == std::strong_ordering::less);
    CHECK(cmp_canonical(pt({2, 0}, 0), pt({2, 0}, 0)) == std::strong_ordering::equal);
}

TEST_CASE("arity mismatch is an error") {
    CHECK_THROWS_AS(cmp_product(MultiIndex({1, 0}), MultiIndex({1})), DomainError);
    CHECK_THROWS_AS(cmp_canonical(MultiIndex({1, 0}), MultiIndex({1, 0, 0})), DomainError);
}

TEST_CASE("canonical order is total and refines the product order") {
    // Exhaustive over small m, n, ell.
    for (int m = 1; m <= 3; ++m) {
        for (int n = 1; n <= 2; ++n) {
            std::vector<IndexedPoint> pts;
            for (const auto& xi : enumerate_gamma(m, 3)) {
                for (int i = 0; i < n; ++i) pts.push_back(IndexedPoint{xi, i});
            }
            for (const auto& a : pts) {
                for (const auto& b : pts) {
                    auto c = cmp_canonical(a, b);
                    // total + antisymmetric
                    if (a == b) {
                        CHECK(c == std::strong_ordering::equal);
                    } else {
                        CHECK(c != std::strong_ordering::equal);
                        auto rev = cmp_canonical(b, a);
                        CHECK(((c == std::strong_ordering::less &&
                                rev == std::strong_ordering::greater) ||
                               (c == std::strong_ordering::greater &&
                                rev == std::strong_ordering::less)));
                    }
                    // refinement
                    if (cmp_product(a, b) == PartialCmp::Less) {
                        CHECK(c == std::strong_ordering::less);
                    }
                    // transitivity (spot: via sort consistency below)
                    for (const auto& cpt : pts) {
                        if (cmp_canonical(a, b) == std::strong_ordering::less &&
                            cmp_canonical(b, cpt) == std::strong_ordering::less) {
                            CHECK(cmp_canonical(a, cpt) == std::strong_ordering::less);
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("multiindex shift and units") {
    MultiIndex xi({1, 2});
    CHECK(xi.order() == 3);
    CHECK(xi.plus_unit(1).entries() == std::vector<int>{2, 2});
    CHECK(xi.plus_unit(2).entries() == std::vector<int>{1, 3});
    CHECK(xi.minus_unit(2).entries() == std::vector<int>{1, 1});
    CHECK_THROWS_AS(MultiIndex({-1}), DomainError);
    CHECK(MultiIndex::unit(3, 2).entries() == std::vector<int>{0, 1, 0});
}
