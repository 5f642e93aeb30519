#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "diffbound/bounds.hpp"
#include "diffbound/chainbound.hpp"
#include "diffbound/multiindex.hpp"
#include "diffbound/serialize.hpp"

using namespace diffbound;

namespace {

BigInt exact(const BoundExpr& e) {
    auto r = eval_bound(e);
    REQUIRE(std::holds_alternative<BigInt>(r));
    return std::get<BigInt>(r);
}

BigInt exact(const UniformBound& b) { return exact(b.expr); }

BigInt ipow(BigInt b, const BigInt& e) {
    BigInt r = 1;
    for (BigInt i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

TEST_CASE("bl dimension and degree") {
    CHECK(bl_dimension(0, 2, 5) == 0);
    CHECK(bl_dimension(1, 1, 2) == 3);
    CHECK(bl_dimension(2, 2, 1) == 6);
    CHECK(exact(bl_degree_bound(1, 2, 7)) == 1);
    CHECK(exact(bl_degree_bound(2, 1, 1)) == 4);
    CHECK(exact(bl_degree_bound(3, 2, 1)) == 27);
}

TEST_CASE("tau degree bounds") {
    CHECK(exact(tau_degree_bound(2, 1, 1, 2, true)) == 8);
    CHECK(exact(tau_degree_bound(1, 1, 1, 5, true)) == 1);
    CHECK(exact(tau_degree_bound(2, 2, 1, 1, false, BigInt(5))) == ipow(5, 5));
    CHECK_THROWS_AS(tau_degree_bound(2, 2, 1, 1, false), DomainError);
}

TEST_CASE("bezout and projection") {
    CHECK(exact(bezout({2, 3})) == 6);
    CHECK(exact(bezout({7})) == 7);
    CHECK(exact(project_bound(7)) == 7);
    CHECK_THROWS_AS(bezout({}), DomainError);
}

TEST_CASE("first-order uniform bound, m=1 closed form") {
    EvalContext ctx;
    CHECK(exact(uniform_bound_first_order(1, 1, 1, 2, 3, ctx)) == 12);
    CHECK(exact(uniform_bound_first_order(1, 2, 2, 2, 2, ctx)) == 128);
    for (int d = 1; d <= 4; ++d) {
        for (BigInt degV = 1; degV <= 3; ++degV) {
            for (BigInt degW = 1; degW <= 3; ++degW) {
                const BigInt expect =
                    ipow(degV, BigInt(1) << d) * ipow(degW, (BigInt(1) << d) - 1);
                CHECK(exact(uniform_bound_first_order(1, d, d, degV, degW, ctx)) == expect);
            }
        }
    }
}

TEST_CASE("first-order uniform bound, m=2 magnitude") {
    EvalContext ctx;
    auto b = uniform_bound_first_order(2, 1, 1, 2, 2, ctx);
    CHECK(b.T == 16);
    auto r = eval_bound(b.expr);
    REQUIRE(std::holds_alternative<Magnitude>(r));
    auto mag = std::get<Magnitude>(r);
    CHECK(mag.height == 1);
    // log2 of the bound: 153*3^135 + 68*(3^136 - 1), both powers exact.
    const BigInt log2_exact = 153 * ipow(3, 135) + 68 * (ipow(3, 136) - 1);
    const double expect = log2_exact.convert_to<double>();
    CHECK(std::abs(mag.value - expect) / expect < 1e-6);
}

TEST_CASE("degree-1 identity across the bound family") {
    EvalContext ctx;
    for (int m = 1; m <= 2; ++m) {
        for (int n = 1; n <= 2; ++n) {
            for (int d = 0; d <= n; ++d) {
                CHECK(exact(uniform_bound_first_order(m, n, d, 1, 1, ctx)) == 1);
                CHECK(exact(bound_positive_dim(m, n, d, 0, 1, 1, ctx)) == 1);
                CHECK(exact(bound_higher_order(m, n, 1, d, 1, 1, ctx)) == 1);
            }
            CHECK(exact(bound_generator_degrees(m, n, 1, 1, 1, ctx)) == 1);
        }
    }
    CHECK(exact(bl_degree_bound(1, 2, 9)) == 1);
}

TEST_CASE("positive-dim consistency with the plain bound") {
    EvalContext ctx;
    for (int d = 1; d <= 3; ++d) {
        auto a = bound_positive_dim(1, 3, d, 0, 2, 3, ctx);
        auto b = uniform_bound_first_order(1, 3, d, 2, 3, ctx);
        CHECK(a.expr.structural_equal(b.expr));
        CHECK_FALSE(a.degenerate);
    }
    // d0 reduces the effective dimension
    CHECK(exact(bound_positive_dim(1, 3, 3, 2, 2, 3, ctx)) == 12);
    // degenerate envelope case d0 == d
    auto env = bound_positive_dim(1, 2, 2, 2, 5, 7, ctx);
    CHECK(env.degenerate);
    CHECK(exact(env) == 5);  // ceil(alpha_T/(m+1)) = ceil(2/2) = 1
    auto env2 = bound_positive_dim(2, 1, 1, 1, 5, 7, ctx);
    CHECK(env2.degenerate);
    CHECK(exact(env2) == ipow(5, (alpha(2, 16) + 2) / 3));
}

TEST_CASE("higher-order bound") {
    EvalContext ctx;
    // m=1, ell=2, d=1: (degV)^(2*2^2) (degW)^(2^2-1) = 2^8 * 3^3
    CHECK(exact(bound_higher_order(1, 1, 2, 1, 2, 3, ctx)) == 6912);
    // ell = 1 coincides with the first-order bound
    for (int d = 1; d <= 2; ++d) {
        auto a = bound_higher_order(1, 2, 1, d, 2, 3, ctx);
        auto b = uniform_bound_first_order(1, 2, d, 2, 3, ctx);
        CHECK(exact(a) == exact(b));
    }
    auto a2 = bound_higher_order(2, 1, 1, 1, 2, 3, ctx);
    auto b2 = uniform_bound_first_order(2, 1, 1, 2, 3, ctx);
    CHECK(a2.expr.structural_equal(b2.expr));
    // m=1 closed form over the acceptance grid
    for (int d = 1; d <= 4; ++d) {
        for (int ell = 1; ell <= 3; ++ell) {
            for (BigInt degV = 1; degV <= 3; ++degV) {
                for (BigInt degW = 1; degW <= 3; ++degW) {
                    const BigInt p = BigInt(ell) * d;
                    const BigInt expect = ipow(degV, ell * (BigInt(1) << p.convert_to<unsigned>())) *
                                          ipow(degW, (BigInt(1) << p.convert_to<unsigned>()) - 1);
                    CHECK(exact(bound_higher_order(1, d, ell, d, degV, degW, ctx)) == expect);
                }
            }
        }
    }
}

TEST_CASE("higher-order blows the budget where T' explodes") {
    Budget b;
    b.max_steps = 100000;
    EvalContext ctx(b);
    // m=2, ell=2, n=2: T' = T(2, 6) needs values beyond any guard.
    CHECK_THROWS_AS(bound_higher_order(2, 2, 2, 1, 2, 2, ctx), BudgetError);
}

TEST_CASE("generator-degree bound") {
    EvalContext ctx;
    CHECK(exact(bound_generator_degrees(1, 1, 2, 1, 1, ctx)) == 256);
    CHECK(exact(bound_generator_degrees(1, 2, 3, 0, 1, ctx)) == 6561);
    CHECK(exact(bound_generator_degrees(1, 2, 1, 2, 3, ctx)) == 1);
    CHECK_THROWS_AS(bound_generator_degrees(1, 1, 2, 0, 0, ctx), DomainError);
}

TEST_CASE("isogeny bound") {
    CHECK(exact(isogeny_bound(1, 0)) == 1);
    CHECK(exact(isogeny_bound(1, 1)) == 279936);
    CHECK(exact(isogeny_bound(2, 1)) == ipow(12, 7));
}

TEST_CASE("monotonicity in degrees and dimensions") {
    EvalContext ctx;
    BigInt prev = 0;
    for (int d = 1; d <= 4; ++d) {
        BigInt v = exact(uniform_bound_first_order(1, 4, d, 2, 3, ctx));
        CHECK(v > prev);
        prev = v;
    }
    for (BigInt deg = 1; deg <= 4; ++deg) {
        CHECK(exact(uniform_bound_first_order(1, 2, 2, deg, 2, ctx)) <=
              exact(uniform_bound_first_order(1, 2, 2, deg + 1, 2, ctx)));
        CHECK(exact(uniform_bound_first_order(1, 2, 2, 2, deg, ctx)) <=
              exact(uniform_bound_first_order(1, 2, 2, 2, deg + 1, ctx)));
    }
    prev = 0;
    for (int ell = 1; ell <= 3; ++ell) {
        BigInt v = exact(bound_higher_order(1, 2, ell, 2, 2, 3, ctx));
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("trajectory step bound matches the closed form at the last step") {
    EvalContext ctx;
    // m = 1 and m = 2 (n = 1): the geometric sum telescopes into the
    // exact-quotient form used by the first-order bound.
    for (int m = 1; m <= 2; ++m) {
        const int n = 1, d = 1;
        const BigInt T = T_bound(m, n, 1, ctx);
        const BigInt aT1 = alpha(m, T - 1);
        const BigInt s = d * aT1 - 1;
        auto traj = trajectory_step_bound(m, n, s, 2, 3, ctx);
        auto head = uniform_bound_first_order(m, n, d, 2, 3, ctx);
        // Compare the two exponent expressions exactly: both are products of
        // powers of degV and degW; the exponents must evaluate equal.
        const auto& te = traj.expr.args();
        const auto& he = head.expr.args();
        REQUIRE(te.size() == 2);
        REQUIRE(he.size() == 2);
        for (int i = 0; i < 2; ++i) {
            CHECK(exact(te[i].args()[1]) == exact(he[i].args()[1]));
        }
    }
}

TEST_CASE("eval_bound literals and small arithmetic") {
    CHECK(exact(BoundExpr::integer(12)) == 12);
    auto p = BoundExpr::product({BoundExpr::pow(BoundExpr::integer(2), BoundExpr::integer(10)),
                                 BoundExpr::pow(BoundExpr::integer(2), BoundExpr::integer(10))});
    CHECK(exact(p) == 1048576);
    CHECK(exact(BoundExpr::binom(BoundExpr::integer(18), BoundExpr::integer(2))) == 153);
    CHECK(exact(BoundExpr::sum({})) == 0);
    CHECK(exact(BoundExpr::product({})) == 1);
}

TEST_CASE("eval_bound magnitude fallback") {
    auto huge = BoundExpr::pow(BoundExpr::integer(2),
                               BoundExpr::pow(BoundExpr::integer(2), BoundExpr::integer(20)));
    // Under a tight budget the value 2^(2^20) becomes a height-1 magnitude.
    auto r = eval_bound(huge, /*max_bits=*/1 << 16);
    REQUIRE(std::holds_alternative<Magnitude>(r));
    CHECK(std::get<Magnitude>(r).height == 1);
    CHECK(std::get<Magnitude>(r).value == doctest::Approx(1048576.0));
    // With the default budget it is exact.
    auto r2 = eval_bound(huge);
    REQUIRE(std::holds_alternative<BigInt>(r2));
    CHECK(std::get<BigInt>(r2) == BigInt(1) << 1048576);
}

TEST_CASE("magnitude matches exact log within 1e-6 where both are feasible") {
    std::vector<BoundExpr> cases = {
        BoundExpr::pow(BoundExpr::integer(3), BoundExpr::integer(5000)),
        BoundExpr::product({BoundExpr::pow(BoundExpr::integer(2), BoundExpr::integer(9000)),
                            BoundExpr::pow(BoundExpr::integer(7), BoundExpr::integer(1234))}),
        BoundExpr::sum({BoundExpr::pow(BoundExpr::integer(2), BoundExpr::integer(4321)),
                        BoundExpr::pow(BoundExpr::integer(2), BoundExpr::integer(4000)),
                        BoundExpr::integer(-1)}),
    };
    for (const auto& e : cases) {
        auto exact_val = eval_bound(e, /*max_bits=*/1 << 26);
        auto mag_val = eval_bound(e, /*max_bits=*/64);
        REQUIRE(std::holds_alternative<BigInt>(exact_val));
        REQUIRE(std::holds_alternative<Magnitude>(mag_val));
        const double le = log2_approx(std::get<BigInt>(exact_val));
        const auto m = std::get<Magnitude>(mag_val);
        REQUIRE(m.height == 1);
        CHECK(std::abs(m.value - le) / le < 1e-6);
    }
}

TEST_CASE("tall towers escalate the height") {
    // 2^(2^(2^20)): log2 once is 2^(2^20), which still needs a log.
    auto e = BoundExpr::pow(
        BoundExpr::integer(2),
        BoundExpr::pow(BoundExpr::integer(2),
                       BoundExpr::pow(BoundExpr::integer(2), BoundExpr::integer(20))));
    auto r = eval_bound(e, /*max_bits=*/1 << 16);
    REQUIRE(std::holds_alternative<Magnitude>(r));
    CHECK(std::get<Magnitude>(r).height == 2);
    CHECK(std::get<Magnitude>(r).value == doctest::Approx(1048576.0));
}

TEST_CASE("quotient divisibility is asserted") {
    auto bad = BoundExpr::quotient(BoundExpr::integer(7), BoundExpr::integer(2));
    CHECK_THROWS_AS(eval_bound(bad), DomainError);
    auto good = BoundExpr::quotient(BoundExpr::integer(8), BoundExpr::integer(2));
    CHECK(exact(good) == 4);
    // The m | aT1*((m+1)^k - 1) divisibility that the first-order formula
    // relies on, checked exactly for m = 2.
    EvalContext ctx;
    auto b = uniform_bound_first_order(2, 1, 1, 2, 2, ctx);
    const auto& expW = b.expr.args()[1];
    REQUIRE(expW.op() == BoundExpr::Op::Pow);
    CHECK(exact(expW.args()[1]) == 68 * (ipow(3, 136) - 1));  // divides evenly
}

TEST_CASE("T is always computed at r = 1 inside the bound family") {
    EvalContext ctx;
    CHECK(uniform_bound_first_order(2, 1, 1, 2, 2, ctx).T == 16);
    CHECK(bound_generator_degrees(2, 1, 2, 1, 0, ctx).T == 16);
}

TEST_CASE("expression rendering") {
    EvalContext ctx;
    CHECK(uniform_bound_first_order(1, 1, 1, 2, 3, ctx).expr.to_string() ==
          "2^(2 * 2^(0)) * 3^((1 * (2^(1) + -1))/(1))");
    CHECK(isogeny_bound(2, 1).to_string() == "12^(7)");
}

TEST_CASE("expression JSON round-trips") {
    EvalContext ctx;
    std::vector<BoundExpr> exprs = {
        uniform_bound_first_order(2, 1, 1, 2, 3, ctx).expr,
        isogeny_bound(2, 1),
        BoundExpr::binom(BoundExpr::integer(18), BoundExpr::integer(2)),
        BoundExpr::sum({BoundExpr::integer(-1), BoundExpr::integer(5)}),
    };
    for (const auto& e : exprs) {
        auto back = bound_expr_from_json(to_json(e));
        CHECK(back.structural_equal(e));
    }
    CHECK_THROWS_AS(bound_expr_from_json(nlohmann::json{{"op", "sqrt"}, {"args", {}}}),
                    DomainError);
}

TEST_CASE("input validation") {
    EvalContext ctx;
    CHECK_THROWS_AS(uniform_bound_first_order(1, 1, 2, 2, 2, ctx), DomainError);  // d > n
    CHECK_THROWS_AS(uniform_bound_first_order(1, 1, 1, 0, 2, ctx), DomainError);
    CHECK_THROWS_AS(bound_positive_dim(1, 2, 1, 2, 2, 2, ctx), DomainError);      // d0 > d
    CHECK_THROWS_AS(bound_higher_order(1, 1, 0, 1, 2, 2, ctx), DomainError);      // ell = 0
    CHECK_THROWS_AS(isogeny_bound(0, 1), DomainError);
}
