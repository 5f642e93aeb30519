#include "diffbound/selftest.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "diffbound/bounds.hpp"
#include "diffbound/chainbound.hpp"
#include "diffbound/oracle.hpp"
#include "diffbound/parse.hpp"
#include "diffbound/prolong.hpp"

namespace diffbound::selftest {

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
};

BigInt ipow(const BigInt& b, const BigInt& e) {
    BigInt r = 1;
    for (BigInt i = 0; i < e; ++i) r *= b;
    return r;
}

BigInt eval_exact(const BoundExpr& e) {
    auto r = eval_bound(e);
    if (!std::holds_alternative<BigInt>(r)) throw DomainError("expected an exact evaluation");
    return std::get<BigInt>(r);
}

CriterionResult run(int id, const std::string& name, void (*body)(Check&), std::uint64_t = 0) {
    CriterionResult res;
    res.id = id;
    res.name = name;
    Check c;
    const auto start = Clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.detail << "exception: " << e.what();
    }
    res.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    res.pass = c.ok;
    res.detail = c.detail.str();
    return res;
}

void paper_value_regression(Check& c) {
    EvalContext ctx;
    const auto seq = Sequence::geometric(1);
    c.require(t_bound(2, 1, seq, ctx) == 4, "t(2,1) != 4");
    c.require(t_bound(2, 2, seq, ctx) == 21, "t(2,2) != 21");
    c.require(t_bound(2, 3, seq, ctx) == 2097174, "t(2,3) != 2097174");
    c.require(T_bound(2, 1, 1, ctx) == 16, "T(2,1,1) != 16");
    c.require(T_bound(2, 2, 1, ctx) == 2097152, "T(2,2,1) != 2097152");
}

void astronomical_exactness(Check& c) {
    EvalContext ctx;
    const BigInt T = T_bound(2, 3, 1, ctx);
    c.require(bit_length(T) == 2097175, "bit length != 2097175");
    c.require(T == BigInt(1) << 2097174, "value != 2^2097174");
    const std::string hex = to_hex(T);
    bool shape = !hex.empty() &&
                 (hex[0] == '1' || hex[0] == '2' || hex[0] == '4' || hex[0] == '8');
    for (std::size_t i = 1; i < hex.size() && shape; ++i) shape = hex[i] == '0';
    c.require(shape, "hex is not a single power-of-two digit followed by zeros");
}

void m1_reduction(Check& c) {
    EvalContext ctx;
    for (int d = 1; d <= 4; ++d) {
        for (BigInt degV = 1; degV <= 3; ++degV) {
            for (BigInt degW = 1; degW <= 3; ++degW) {
                const BigInt first = eval_exact(
                    uniform_bound_first_order(1, d, d, degV, degW, ctx).expr);
                const BigInt expect_first =
                    ipow(degV, BigInt(1) << d) * ipow(degW, (BigInt(1) << d) - 1);
                c.require(first == expect_first,
                          "first-order mismatch at d=" + std::to_string(d));
                for (int ell = 1; ell <= 3; ++ell) {
                    const BigInt high = eval_exact(
                        bound_higher_order(1, d, ell, d, degV, degW, ctx).expr);
                    const BigInt p = BigInt(1) << static_cast<unsigned>(d * ell);
                    const BigInt expect_high = ipow(degV, ell * p) * ipow(degW, p - 1);
                    c.require(high == expect_high, "higher-order mismatch at d=" +
                                                       std::to_string(d) + " ell=" +
                                                       std::to_string(ell));
                }
            }
        }
    }
}

void integrability_regression(Check& c) {
    auto intro = parse_input_file("d1 x1 = x1^2\nd2 x1 = x1^3 + a1\n");
    auto conds = integrability_conditions(*intro.system);
    c.require(conds.size() == 1, "intro system: expected one condition");
    if (conds.size() == 1) {
        c.require(conds[0].to_string() == "x1^4 - 2*a1*x1 + a1_[1,0]",
                  "intro condition is " + conds[0].to_string());
    }
    auto grad = parse_input_file("d1 x1 = a1\nd2 x1 = a2\n");
    auto conds2 = integrability_conditions(*grad.system);
    c.require(conds2.size() == 1, "gradient system: expected one condition");
    if (conds2.size() == 1) {
        c.require(conds2[0].to_string() == "a2_[1,0] - a1_[0,1]",
                  "gradient condition is " + conds2[0].to_string());
    }
}

std::uint64_t g_seed = 20260811;

DiffPolynomial random_generator_poly(std::mt19937_64& rng, int m, int n) {
    std::uniform_int_distribution<int> nterms(1, 4);
    std::uniform_int_distribution<int> nfactors(0, 3);
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> den(1, 2);
    std::uniform_int_distribution<int> which(0, n);  // 0 = base variable
    DiffPolynomial p(m);
    const int terms = nterms(rng);
    for (int t = 0; t < terms; ++t) {
        DiffPolynomial mono(m);
        int cnum = coeff(rng);
        if (cnum == 0) cnum = 1;
        mono = DiffPolynomial::constant(m, Rational(cnum, den(rng)));
        int degree_left = 3;
        const int nf = nfactors(rng);
        for (int f = 0; f < nf && degree_left > 0; ++f) {
            const int pick = which(rng);
            if (pick == 0) {
                std::uniform_int_distribution<int> base_id(1, m);
                mono = mono * DiffPolynomial::indeterminate(Indeterminate::base(base_id(rng), m));
            } else {
                mono = mono * DiffPolynomial::indeterminate(
                                  Indeterminate::state(pick, MultiIndex::zero(m)));
            }
            --degree_left;
        }
        p = p + mono;
    }
    return p;
}

void cross_method_500(Check& c) {
    std::mt19937_64 rng(g_seed);
    int ran = 0;
    for (int iter = 0; ran < 500; ++iter) {
        const int m = 1 + static_cast<int>(rng() % 2);
        const int n = 1 + static_cast<int>(rng() % 2);
        const int ell = static_cast<int>(rng() % 3);
        const int count = 1 + static_cast<int>(rng() % 2);
        std::vector<DiffPolynomial> gens;
        for (int g = 0; g < count; ++g) gens.push_back(random_generator_poly(rng, m, n));
        bool all_zero = true;
        for (const auto& g : gens) all_zero = all_zero && g.is_zero();
        if (all_zero) continue;
        ++ran;
        auto a = prolong_substitution(gens, ell, n);
        auto b = prolong_epsilon(gens, ell, n);
        if (a.equations.size() != gens.size() * a.gamma.size() ||
            b.equations.size() != a.equations.size()) {
            c.require(false, "equation count mismatch at set " + std::to_string(ran));
            return;
        }
        for (std::size_t i = 0; i < a.equations.size(); ++i) {
            if (!(a.equations[i].poly == b.equations[i].poly)) {
                c.require(false, "coefficient mismatch at set " + std::to_string(ran));
                return;
            }
        }
    }
    c.require(ran == 500, "ran " + std::to_string(ran) + " sets");
}

void vanishing_property(Check& c) {
    ParseContext one;
    one.m = 1;
    std::map<int, DiffPolynomial> parabola{{1, parse_poly("t1", one)},
                                           {2, parse_poly("t1^2", one)}};
    std::map<int, DiffPolynomial> cubic{{1, parse_poly("t1", one)},
                                        {2, parse_poly("t1^2", one)},
                                        {3, parse_poly("t1^3", one)}};
    for (int ell = 0; ell <= 3; ++ell) {
        auto rep = verify_prolong_on_points({parse_poly("x2 - x1^2", one)}, {parabola}, ell);
        c.require(rep.pass, "parabola fails at ell=" + std::to_string(ell));
        auto rep2 = verify_prolong_on_points(
            {parse_poly("x2 - x1^2", one), parse_poly("x3 - x1^3", one)}, {cubic}, ell);
        c.require(rep2.pass, "twisted cubic fails at ell=" + std::to_string(ell));
    }
}

void oracle_soundness(Check& c) {
    std::vector<std::pair<std::string, Sequence>> seqs;
    seqs.emplace_back("2^i", Sequence::geometric(1));
    seqs.emplace_back("2*2^i", Sequence::geometric(2));
    {
        std::vector<BigInt> inc;
        for (int i = 0; i <= 63; ++i) inc.emplace_back(i + 1);
        seqs.emplace_back("i+1", Sequence::explicit_then_geometric(inc));
    }
    for (int m = 1; m <= 2; ++m) {
        for (int n = 1; n <= 2; ++n) {
            for (const auto& [label, seq] : seqs) {
                Budget b;
                b.max_steps = 20'000'000;
                b.time_limit = std::chrono::milliseconds(60'000);
                EvalContext ctx(b);
                const int cap = (m == 2 && n == 1) ? 6 : 5;
                auto rep = verify_t_soundness(m, n, seq, cap, ctx);
                const std::string cell = "(" + std::to_string(m) + "," + std::to_string(n) +
                                         "," + label + ")";
                c.require(rep.pass, "soundness fails at " + cell);
                c.require(rep.chain.exhaustive, "search truncated at " + cell);
                validate_chain_witness(rep.chain, m, n, seq, ctx);
            }
        }
    }
    // Sharpness at (2,1): the doubling sequence attains t - 1 = 3.
    Budget b;
    b.max_steps = 20'000'000;
    EvalContext ctx(b);
    auto sharp = verify_t_soundness(2, 1, Sequence::geometric(1), 6, ctx);
    c.require(sharp.t == 4, "t(2,1) != 4");
    c.require(sharp.chain.max_strict_steps == 3, "max chain at (2,1) != 3");
}

void case1_grid(Check& c) {
    EvalContext ctx;
    for (int s1 = 0; s1 <= 3; ++s1) {
        for (int s2 = 0; s2 <= 3; ++s2) {
            auto rep = check_case1(MultiIndex({s1, s2}), 6, ctx);
            c.require(rep.bound_holds, "bound fails at sigma = (" + std::to_string(s1) + "," +
                                           std::to_string(s2) + ")");
        }
    }
}

void trajectory_identity(Check& c) {
    EvalContext ctx;
    for (int m = 1; m <= 2; ++m) {
        const int n = 1, d = 1;
        const BigInt T = T_bound(m, n, 1, ctx);
        const BigInt aT1 = alpha(m, T - 1);
        const BigInt s = d * aT1 - 1;
        auto traj = trajectory_step_bound(m, n, s, 2, 3, ctx);
        auto head = uniform_bound_first_order(m, n, d, 2, 3, ctx);
        const auto& te = traj.expr.args();
        const auto& he = head.expr.args();
        bool ok = te.size() == 2 && he.size() == 2;
        for (int i = 0; ok && i < 2; ++i) {
            ok = eval_exact(te[static_cast<std::size_t>(i)].args()[1]) ==
                 eval_exact(he[static_cast<std::size_t>(i)].args()[1]);
        }
        c.require(ok, "trajectory exponents differ from the closed form at m = " +
                          std::to_string(m));
    }
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
    g_seed = seed;
    std::vector<CriterionResult> out;
    out.push_back(run(1, "paper-value regression (t and T at m=2)", paper_value_regression));
    out.push_back(run(2, "astronomical exactness of T(2,3,1)", astronomical_exactness));
    out.push_back(run(3, "m=1 reduction of the bound formulas", m1_reduction));
    out.push_back(run(4, "integrability condition regression", integrability_regression));
    out.push_back(run(5, "prolongation cross-method property (500 sets)", cross_method_500));
    out.push_back(run(6, "vanishing on prolonged points", vanishing_property));
    out.push_back(run(7, "oracle soundness grid and sharpness", oracle_soundness));
    out.push_back(run(8, "antichain size bound, exhaustive grid", case1_grid));
    out.push_back(run(9, "trajectory geometric-sum identity", trajectory_identity));
    return out;
}

}  // namespace diffbound::selftest
