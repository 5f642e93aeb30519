#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diffbound/diffpoly.hpp"
#include "diffbound/parse.hpp"
#include "testutil.hpp"

using namespace diffbound;
using testutil::PolyGenOptions;
using testutil::random_poly;

namespace {

DiffPolynomial parse1(const std::string& s) {
    ParseContext ctx;
    ctx.m = 1;
    return parse_poly(s, ctx);
}

DiffPolynomial parse2(const std::string& s) {
    ParseContext ctx;
    ctx.m = 2;
    return parse_poly(s, ctx);
}

}  // namespace

TEST_CASE("parse basics") {
    CHECK(parse1("x1^2").to_string() == "x1^2");
    CHECK(parse2("x1_[1,0] - x1^2").to_string() == "-1*x1^2 + x1_[1,0]");
    CHECK(parse2("3/2 * t1 * x2_[0,1]").to_string() == "3/2*t1*x2_[0,1]");
    CHECK(parse1("0").is_zero());
    CHECK(parse1("2 + 3").to_string() == "5");
    CHECK(parse1("(x1 + 1)^2").to_string() == "x1^2 + 2*x1 + 1");
    CHECK(parse1("x1 - x1").is_zero());
    CHECK(parse1("-3*x1") == parse1("0 - 3*x1"));
    CHECK(parse1("1/2*x1 + 1/2*x1").to_string() == "x1");
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse1("x1 +"), SyntaxError);
    CHECK_THROWS_AS(parse1("x"), SyntaxError);
    CHECK_THROWS_AS(parse1("y1"), DomainError);
    CHECK_THROWS_AS(parse1("t2"), SyntaxError);         // unknown variable (m = 1)
    CHECK_THROWS_AS(parse1("t1_[1]"), SyntaxError);     // derivative on base variable
    CHECK_THROWS_AS(parse2("x1_[1]"), SyntaxError);     // tag arity
    CHECK_THROWS_AS(parse1("x1_[1,0]"), SyntaxError);   // tag arity
    CHECK_THROWS_AS(parse1("3/0"), SyntaxError);
    try {
        parse1("x1 + @");
        FAIL("expected syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 6);
    }
    ParseContext no_params;
    no_params.m = 1;
    no_params.allow_parameters = false;
    CHECK_THROWS_AS(parse_poly("a1", no_params), SyntaxError);
    ParseContext bounded;
    bounded.m = 1;
    bounded.max_state = 2;
    CHECK_THROWS_AS(parse_poly("x3", bounded), SyntaxError);
}

TEST_CASE("derive_formal basics") {
    // d1(x1^2) = 2 x1 d1x1
    auto x1 = parse1("x1");
    CHECK(parse1("x1^2").derive(1) == parse1("2*x1*x1_[1]"));
    // d1(t1 x1) = x1 + t1 d1x1
    CHECK(parse1("t1*x1").derive(1) == parse1("x1 + t1*x1_[1]"));
    // d2(d1 x1) has tag (1,1)
    CHECK(parse2("x1_[1,0]").derive(2) == parse2("x1_[1,1]"));
    // constants die
    CHECK(parse1("5/3").derive(1).is_zero());
    // d1(t2) = 0, d2(t2) = 1
    CHECK(parse2("t2").derive(1).is_zero());
    CHECK(parse2("t2").derive(2) == parse2("1"));
    CHECK_THROWS_AS(x1.derive(2), DomainError);
}

TEST_CASE("derive_multi basics") {
    CHECK(parse2("x1").derive_multi(MultiIndex({0, 0})) == parse2("x1"));
    CHECK(parse1("x1^2").derive_multi(MultiIndex({2})) ==
          parse1("2*x1_[1]^2 + 2*x1*x1_[2]"));
}

TEST_CASE("substitute basics") {
    auto f = parse1("x1*x1_[1]");
    std::map<Indeterminate, DiffPolynomial> sub;
    sub.emplace(Indeterminate::state(1, MultiIndex({1})), parse1("x1^2"));
    CHECK(f.substitute(sub) == parse1("x1^3"));
    CHECK(f.substitute({}) == f);
    auto g = parse1("x1_[1]^2");
    std::map<Indeterminate, DiffPolynomial> sub2;
    sub2.emplace(Indeterminate::state(1, MultiIndex({1})), parse1("x2"));
    CHECK(g.substitute(sub2) == parse1("x2^2"));
}

TEST_CASE("evaluate_point basics") {
    std::map<int, DiffPolynomial> parabola;
    parabola.emplace(1, parse1("t1"));
    parabola.emplace(2, parse1("t1^2"));

    CHECK(parse1("x1_[1]").evaluate_point({{1, parse1("t1^2")}}) == parse1("2*t1"));
    CHECK(parse1("x2 - x1^2").evaluate_point(parabola).is_zero());
    CHECK(parse1("x2_[1] - 2*x1*x1_[1]").evaluate_point(parabola).is_zero());
    CHECK_THROWS_AS(parse1("a1").evaluate_point(parabola), DomainError);
    CHECK_THROWS_AS(parse1("x3").evaluate_point(parabola), DomainError);
}

TEST_CASE("system construction validates") {
    // d1 x1 = x1^2 needs order 0: fine; x1_[1] on the rhs is rejected.
    CHECK_THROWS_AS(DiffSystem(1, 1, {parse1("x1_[1]")}), DomainError);
    CHECK_THROWS_AS(DiffSystem(1, 2, {parse1("x1")}), DomainError);
    DiffSystem ok(1, 1, {parse1("x1^2")});
    CHECK(ok.rhs(1, 1) == parse1("x1^2"));
    CHECK_THROWS_AS(ok.rhs(2, 1), DomainError);
}

TEST_CASE("input file parsing") {
    const std::string text =
        "# intro system\n"
        "d1 x1 = x1^2\n"
        "d2 x1 = x1^3 + a1\n";
    auto file = parse_input_file(text);
    REQUIRE(file.system.has_value());
    CHECK(file.m == 2);
    CHECK(file.n == 1);
    CHECK(file.system->rhs(2, 1) == parse2("x1^3 + a1"));

    auto gens = parse_input_file("poly g1 = x2 - x1^2\npoly g2 = x3 - x1^3\n", 1);
    CHECK(gens.named.size() == 2);
    CHECK(gens.n == 3);
    CHECK_FALSE(gens.system.has_value());

    CHECK_THROWS_AS(parse_input_file("d1 x1 = x1\nd1 x1 = x1\n"), DomainError);   // duplicate
    CHECK_THROWS_AS(parse_input_file("d1 x1 = x1\nd2 x2 = x1\n"), DomainError);   // incomplete
    CHECK_THROWS_AS(parse_input_file("garbage\n"), DomainError);
}

TEST_CASE("point file parsing") {
    auto pt = parse_point_file("x1 = t1\nx2 = t1^2 # parabola\n", 1);
    CHECK(pt.size() == 2);
    CHECK(pt.at(2) == parse1("t1^2"));
    CHECK_THROWS_AS(parse_point_file("x1 = x1\n", 1), SyntaxError);
    CHECK_THROWS_AS(parse_point_file("x1 = t1\nx1 = t1\n", 1), DomainError);
}

TEST_CASE("ring laws on randomized inputs") {
    std::mt19937_64 rng(20260811);
    PolyGenOptions opt;
    opt.m = 2;
    opt.n_state = 2;
    opt.n_param = 1;
    for (int iter = 0; iter < 60; ++iter) {
        auto f = random_poly(rng, opt);
        auto g = random_poly(rng, opt);
        auto h = random_poly(rng, opt);
        CHECK(f + g == g + f);
        CHECK(f * g == g * f);
        CHECK((f + g) + h == f + (g + h));
        CHECK((f * g) * h == f * (g * h));
        CHECK(f * (g + h) == f * g + f * h);
        CHECK((f * DiffPolynomial(2)).is_zero());
        CHECK(f - f == DiffPolynomial(2));
    }
}

TEST_CASE("derivation laws on randomized inputs") {
    std::mt19937_64 rng(987654);
    PolyGenOptions opt;
    opt.m = 2;
    opt.n_state = 2;
    opt.n_param = 1;
    for (int iter = 0; iter < 60; ++iter) {
        auto f = random_poly(rng, opt);
        auto g = random_poly(rng, opt);
        for (int k = 1; k <= 2; ++k) {
            CHECK((f * g).derive(k) == f.derive(k) * g + f * g.derive(k));
            CHECK((f + g).derive(k) == f.derive(k) + g.derive(k));
        }
        CHECK(f.derive(1).derive(2) == f.derive(2).derive(1));
    }
}

TEST_CASE("derive_multi is order independent") {
    std::mt19937_64 rng(5150);
    PolyGenOptions opt;
    opt.m = 2;
    for (int iter = 0; iter < 40; ++iter) {
        auto f = random_poly(rng, opt);
        CHECK(f.derive(1).derive(2) == f.derive_multi(MultiIndex({1, 1})));
    }
}

TEST_CASE("evaluation commutes with derivation") {
    std::mt19937_64 rng(31337);
    PolyGenOptions opt;
    opt.m = 2;
    opt.n_state = 2;
    opt.n_param = 0;
    opt.max_tag_order = 1;
    PolyGenOptions point_opt;
    point_opt.m = 2;
    point_opt.n_state = 0;
    point_opt.n_param = 0;
    point_opt.with_base = true;
    for (int iter = 0; iter < 40; ++iter) {
        auto f = random_poly(rng, opt);
        std::map<int, DiffPolynomial> point;
        point.emplace(1, random_poly(rng, point_opt));
        point.emplace(2, random_poly(rng, point_opt));
        for (int k = 1; k <= 2; ++k) {
            CHECK(f.derive(k).evaluate_point(point) == f.evaluate_point(point).derive(k));
        }
    }
}

TEST_CASE("parser round-trips the printer") {
    std::mt19937_64 rng(777);
    PolyGenOptions opt;
    opt.m = 2;
    opt.n_state = 2;
    opt.n_param = 2;
    ParseContext ctx;
    ctx.m = 2;
    for (int iter = 0; iter < 200; ++iter) {
        auto f = random_poly(rng, opt);
        CHECK(parse_poly(f.to_string(), ctx) == f);
    }
}

TEST_CASE("monic normalization") {
    auto f = parse1("-2*x1^2 + 4*x1");
    CHECK(f.monic() == parse1("x1^2 - 2*x1"));
    CHECK(parse1("0").monic().is_zero());
}

TEST_CASE("canonical rendering of a mixed polynomial") {
    CHECK(parse2("x1^4 - 2*a1*x1 + a1_[1,0]").to_string() == "x1^4 - 2*a1*x1 + a1_[1,0]");
}
