#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diffbound/chainbound.hpp"

using namespace diffbound;

namespace {

// Independent rewrite of the m = 2 recursion: a plain loop over explicitly
// given values, no Sequence machinery.
BigInt t2_direct(int n, const std::function<BigInt(const BigInt&)>& a) {
    BigInt b = 0;
    for (int i = 0; i < n; ++i) b = a(b + 1) + b + 1;
    return b + 1;
}

BigInt pow2(const BigInt& e) { return BigInt(1) << e.convert_to<std::uint64_t>(); }

}  // namespace

TEST_CASE("t base case m=1") {
    EvalContext ctx;
    CHECK(t_bound(1, 5, Sequence::geometric(1), ctx) == 6);
    CHECK(t_bound(1, 5, Sequence::geometric(7), ctx) == 6);
    CHECK(t_bound(1, 1, Sequence::explicit_then_geometric({3, 3, 4}), ctx) == 2);
}

TEST_CASE("t for m=2 and the doubling sequence") {
    EvalContext ctx;
    CHECK(t_bound(2, 1, Sequence::geometric(1), ctx) == 4);
    CHECK(t_bound(2, 2, Sequence::geometric(1), ctx) == 21);
    CHECK(t_bound(2, 3, Sequence::geometric(1), ctx) == 2097174);
}

TEST_CASE("t for m=2 agrees with a direct reimplementation") {
    // n = 4 with r >= 2 needs ~2^136-bit sequence values; both routes must
    // classify those cells as over-budget rather than return anything.
    for (int r = 1; r <= 3; ++r) {
        for (int n = 1; n <= 4; ++n) {
            EvalContext ctx;
            if (r >= 2 && n == 4) {
                CHECK_THROWS_AS(t_bound(2, n, Sequence::geometric(r), ctx), BudgetError);
                continue;
            }
            auto direct = t2_direct(n, [&](const BigInt& i) { return pow2(i) * r; });
            CHECK(t_bound(2, n, Sequence::geometric(r), ctx) == direct);
        }
    }
    // and on a non-geometric sequence: a_i = i + 1 (long explicit prefix)
    std::vector<BigInt> inc;
    for (int i = 0; i <= 40; ++i) inc.emplace_back(i + 1);
    for (int n = 1; n <= 3; ++n) {
        EvalContext ctx;
        auto direct = t2_direct(n, [&](const BigInt& i) { return i + 1; });
        CHECK(t_bound(2, n, Sequence::explicit_then_geometric(inc), ctx) == direct);
    }
}

TEST_CASE("t is monotone in n") {
    for (int m = 1; m <= 2; ++m) {
        BigInt prev = 0;
        for (int n = 1; n <= 4; ++n) {
            EvalContext ctx;
            BigInt t = t_bound(m, n, Sequence::geometric(1), ctx);
            CHECK(t > prev);
            prev = t;
        }
    }
}

TEST_CASE("T bound values") {
    EvalContext ctx;
    CHECK(T_bound(1, 9, 7, ctx) == 7);
    CHECK(T_bound(2, 1, 1, ctx) == 16);
    CHECK(T_bound(2, 2, 1, ctx) == 2097152);
}

TEST_CASE("T identity on m=1") {
    EvalContext ctx;
    for (int n = 1; n <= 5; ++n) {
        for (int r = 1; r <= 4; ++r) {
            CHECK(T_bound(1, n, r, ctx) == r);
        }
    }
}

TEST_CASE("T exactness at the astronomical edge") {
    EvalContext ctx;
    BigInt T = T_bound(2, 3, 1, ctx);
    CHECK(bit_length(T) == 2097175);
    CHECK(T == BigInt(1) << 2097174);
    CHECK(T_bound_exponent(2, 3, 1, ctx) == 2097174);
}

TEST_CASE("T blows the value guard at m=2 n=4") {
    EvalContext ctx;
    // t(2,4) itself is a ~2^21-bit number and stays computable.
    BigInt t4 = t_bound(2, 4, Sequence::geometric(1), ctx);
    CHECK(bit_length(t4) == 2097175);
    CHECK_THROWS_AS(T_bound(2, 4, 1, ctx), BudgetError);
}

TEST_CASE("budget errors carry structure") {
    // m = 3 grows doubly exponentially layer over layer; whichever guard
    // fires first, the error must be structured and carry the depth.
    Budget tight;
    tight.max_steps = 50;
    EvalContext ctx(tight);
    try {
        t_bound(3, 1, Sequence::geometric(1), ctx);
        FAIL("expected a budget error");
    } catch (const BudgetError& e) {
        CHECK((e.kind() == BudgetError::Kind::Steps || e.kind() == BudgetError::Kind::ValueBits));
        CHECK(e.recursion_depth() >= 1);
    }
    // With the default budgets it is the value guard that fires.
    EvalContext ctx2;
    CHECK_THROWS_AS(t_bound(3, 1, Sequence::geometric(1), ctx2), BudgetError);
}

TEST_CASE("seq_at basics") {
    EvalContext ctx;
    CHECK(Sequence::geometric(3).at(0, ctx) == 3);
    CHECK(Sequence::geometric(1).at(20, ctx) == 1048576);
    CHECK(Sequence::geometric(1).shifted(4).at(0, ctx) == 16);
    CHECK(Sequence::geometric(1).shifted(2).shifted(2).at(0, ctx) == 16);

    auto e = Sequence::explicit_then_geometric({2, 3, 5});
    CHECK(e.at(0, ctx) == 2);
    CHECK(e.at(2, ctx) == 5);
    CHECK(e.at(3, ctx) == 10);  // doubling tail
    CHECK(e.at(5, ctx) == 40);
}

TEST_CASE("sequence literals parse and normalize") {
    EvalContext ctx;
    auto g = Sequence::parse("geometric:r=3");
    CHECK(g.at(1, ctx) == 6);
    auto e = Sequence::parse("explicit:[1,2,3]:then=geometric");
    CHECK(e.at(2, ctx) == 3);
    CHECK(e.at(4, ctx) == 12);
    CHECK_THROWS_AS(Sequence::parse("fibonacci"), DomainError);
    CHECK_THROWS_AS(Sequence::parse("explicit:[3,2]:then=geometric"), DomainError);
    CHECK_THROWS_AS(Sequence::parse("explicit:[0]:then=geometric"), DomainError);
}

TEST_CASE("structural hashing folds nested shifts") {
    auto s = Sequence::geometric(5);
    CHECK(s.shifted(2).shifted(3).structural_equal(s.shifted(5)));
    CHECK(s.shifted(2).shifted(3).structural_hash() == s.shifted(5).structural_hash());
    CHECK_FALSE(s.shifted(2).structural_equal(s.shifted(3)));
}

TEST_CASE("sequence value guard") {
    Budget tight;
    tight.max_value_bits = 64;
    EvalContext ctx(tight);
    CHECK_THROWS_AS(Sequence::geometric(1).at(100, ctx), BudgetError);
}

TEST_CASE("bound functions shift the sequence") {
    EvalContext ctx;
    BoundFunction g(2, 1, Sequence::geometric(1));
    for (int k = 0; k <= 6; ++k) {
        const BigInt v = g(k, ctx);
        CHECK(v >= 2);
        CHECK(v == t_bound(2, 1, Sequence::geometric(1).shifted(k), ctx));
    }
    // g(k) = a_{k+1} + 2 for the m = 2, n = 1 doubling case
    CHECK(g(3, ctx) == 18);
}

TEST_CASE("equal arguments give equal results across contexts") {
    EvalContext c1, c2;
    CHECK(t_bound(2, 2, Sequence::geometric(2), c1) ==
          t_bound(2, 2, Sequence::geometric(2), c2));
}
