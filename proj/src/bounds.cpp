#include "diffbound/bounds.hpp"

#include <cmath>
#include <limits>

#include "diffbound/chainbound.hpp"
#include "diffbound/multiindex.hpp"

namespace diffbound {

const BigInt& BoundExpr::value() const {
    if (node_->op != Op::Int) throw DomainError("value() on a non-literal expression");
    return node_->value;
}

BoundExpr BoundExpr::integer(BigInt v) {
    return BoundExpr(std::make_shared<const Node>(Node{Op::Int, std::move(v), {}}));
}

BoundExpr BoundExpr::binom(BoundExpr n, BoundExpr k) {
    return BoundExpr(std::make_shared<const Node>(
        Node{Op::Binom, 0, {std::move(n), std::move(k)}}));
}

BoundExpr BoundExpr::sum(std::vector<BoundExpr> args) {
    if (args.empty()) return integer(0);
    if (args.size() == 1) return args.front();
    return BoundExpr(std::make_shared<const Node>(Node{Op::Add, 0, std::move(args)}));
}

BoundExpr BoundExpr::product(std::vector<BoundExpr> args) {
    if (args.empty()) return integer(1);
    if (args.size() == 1) return args.front();
    return BoundExpr(std::make_shared<const Node>(Node{Op::Mul, 0, std::move(args)}));
}

BoundExpr BoundExpr::pow(BoundExpr base, BoundExpr exponent) {
    return BoundExpr(std::make_shared<const Node>(
        Node{Op::Pow, 0, {std::move(base), std::move(exponent)}}));
}

BoundExpr BoundExpr::quotient(BoundExpr num, BoundExpr den) {
    return BoundExpr(std::make_shared<const Node>(
        Node{Op::Quot, 0, {std::move(num), std::move(den)}}));
}

bool BoundExpr::structural_equal(const BoundExpr& other) const {
    if (node_ == other.node_) return true;
    if (node_->op != other.node_->op) return false;
    if (node_->op == Op::Int) return node_->value == other.node_->value;
    if (node_->args.size() != other.node_->args.size()) return false;
    for (std::size_t i = 0; i < node_->args.size(); ++i) {
        if (!node_->args[i].structural_equal(other.node_->args[i])) return false;
    }
    return true;
}

std::string BoundExpr::to_string() const {
    switch (node_->op) {
        case Op::Int:
            return node_->value.str();
        case Op::Binom:
            return "binom(" + node_->args[0].to_string() + ", " + node_->args[1].to_string() + ")";
        case Op::Add: {
            std::string s = "(";
            for (std::size_t i = 0; i < node_->args.size(); ++i) {
                if (i) s += " + ";
                s += node_->args[i].to_string();
            }
            return s + ")";
        }
        case Op::Mul: {
            std::string s;
            for (std::size_t i = 0; i < node_->args.size(); ++i) {
                if (i) s += " * ";
                s += node_->args[i].to_string();
            }
            return s;
        }
        case Op::Pow: {
            const auto& base = node_->args[0];
            std::string b = base.op() == Op::Int ? base.to_string() : "(" + base.to_string() + ")";
            return b + "^(" + node_->args[1].to_string() + ")";
        }
        case Op::Quot:
            return "(" + node_->args[0].to_string() + ")/(" + node_->args[1].to_string() + ")";
    }
    return "?";
}

namespace {

// Magnitude arithmetic: a positive value represented as a log tower
// 2^2^...^v with h twos.  Normalized so h is minimal.
struct Tower {
    int h = 0;
    double v = 0.0;
};

constexpr double kLift = 1020.0;  // exp2 overflows just past 1023

Tower normalize(Tower t) {
    while (t.h > 0 && t.v < kLift) {
        t.v = std::exp2(t.v);
        --t.h;
    }
    return t;
}

Tower to_tower(const BigInt& b) {
    if (b <= 0) throw DomainError("magnitude arithmetic needs positive values");
    if (bit_length(b) <= 1000) return Tower{0, b.convert_to<double>()};
    return Tower{1, log2_approx(b)};
}

Tower tower_log2(const Tower& t) {
    if (t.h == 0) {
        if (t.v <= 0) throw DomainError("magnitude log of a non-positive value");
        return Tower{0, std::log2(t.v)};
    }
    return normalize(Tower{t.h - 1, t.v});
}

Tower tower_exp2(const Tower& t) {
    if (t.h == 0 && t.v < kLift) return Tower{0, std::exp2(t.v)};
    return Tower{t.h + 1, t.v};
}

int tower_cmp(const Tower& a, const Tower& b) {
    if (a.h != b.h) return a.h < b.h ? -1 : 1;
    if (a.v == b.v) return 0;
    return a.v < b.v ? -1 : 1;
}

Tower tower_add(Tower a, Tower b) {
    a = normalize(a);
    b = normalize(b);
    if (tower_cmp(a, b) < 0) std::swap(a, b);
    // a >= b
    if (a.h == 0) {
        const double s = a.v + b.v;
        if (std::isfinite(s)) return Tower{0, s};
        const double la = std::log2(a.v);
        const double lb = std::log2(b.v);
        return Tower{1, la + std::log2(1.0 + std::exp2(lb - la))};
    }
    if (a.h == 1) {
        const double lb = b.h == 1 ? b.v : std::log2(std::max(b.v, 1e-300));
        const double diff = lb - a.v;
        if (diff < -60.0) return a;
        return Tower{1, a.v + std::log2(1.0 + std::exp2(diff))};
    }
    // Heights >= 2: any addend at most as large changes v by less than
    // double precision can see.
    return a;
}

Tower tower_sub(Tower a, Tower b) {
    a = normalize(a);
    b = normalize(b);
    if (tower_cmp(a, b) <= 0) {
        throw DomainError("magnitude subtraction must leave a positive value");
    }
    if (a.h == 0) return Tower{0, a.v - b.v};
    if (a.h == 1) {
        const double lb = b.h == 1 ? b.v : std::log2(std::max(b.v, 1e-300));
        const double diff = lb - a.v;
        if (diff < -60.0) return a;
        const double rest = 1.0 - std::exp2(diff);
        if (rest <= 0.0) {
            throw DomainError("magnitude subtraction cancels beyond representable precision");
        }
        return normalize(Tower{1, a.v + std::log2(rest)});
    }
    return a;
}

Tower tower_mul(const Tower& a, const Tower& b) {
    return normalize(tower_exp2(tower_add(tower_log2(a), tower_log2(b))));
}

Tower tower_div(const Tower& a, const Tower& b) {
    return normalize(tower_exp2(tower_sub(tower_log2(a), tower_log2(b))));
}

Tower tower_pow(const Tower& base, const Tower& exp) {
    return normalize(tower_exp2(tower_mul(exp, tower_log2(base))));
}

struct Val {
    std::optional<BigInt> exact;  // set when exactly evaluated
    Tower tower;                  // meaningful when !exact

    static Val of(BigInt b) { return Val{std::move(b), {}}; }
    static Val of(Tower t) { return Val{std::nullopt, normalize(t)}; }

    Tower as_tower() const { return exact ? to_tower(*exact) : tower; }
};

class Evaluator {
public:
    explicit Evaluator(std::uint64_t max_bits) : max_bits_(max_bits) {}

    Val eval(const BoundExpr& e) {
        switch (e.op()) {
            case BoundExpr::Op::Int:
                return Val::of(e.value());
            case BoundExpr::Op::Binom:
                return eval_binom(e);
            case BoundExpr::Op::Add:
                return eval_add(e);
            case BoundExpr::Op::Mul:
                return eval_mul(e);
            case BoundExpr::Op::Pow:
                return eval_pow(e);
            case BoundExpr::Op::Quot:
                return eval_quot(e);
        }
        throw DomainError("unknown expression node");
    }

private:
    Val eval_binom(const BoundExpr& e) {
        Val n = eval(e.args()[0]);
        Val k = eval(e.args()[1]);
        if (!n.exact || !k.exact) {
            throw DomainError("binomial arguments too large to evaluate exactly");
        }
        if (*k.exact < 0 || *n.exact < 0) {
            throw DomainError("binomial arguments must be non-negative");
        }
        if (*k.exact > *n.exact) return Val::of(BigInt(0));
        BigInt small = *k.exact;
        if (*n.exact - small < small) small = *n.exact - small;
        if (small * static_cast<std::int64_t>(std::max<std::uint64_t>(
                        bit_length(*n.exact), 1)) > BigInt(max_bits_) * 8) {
            throw DomainError("binomial arguments too large to evaluate exactly");
        }
        return Val::of(binomial(*n.exact, *k.exact));
    }

    Val eval_add(const BoundExpr& e) {
        BigInt exact_part = 0;
        std::vector<Tower> towers;
        bool all_exact = true;
        for (const auto& arg : e.args()) {
            Val v = eval(arg);
            if (v.exact) {
                exact_part += *v.exact;
                if (all_exact && bit_length(exact_part) > max_bits_) all_exact = false;
            } else {
                all_exact = false;
                towers.push_back(v.tower);
            }
        }
        if (all_exact) return Val::of(exact_part);
        if (towers.empty()) return Val::of(to_tower(exact_part));
        Tower acc = towers.front();
        for (std::size_t i = 1; i < towers.size(); ++i) acc = tower_add(acc, towers[i]);
        if (exact_part > 0) {
            acc = tower_add(acc, to_tower(exact_part));
        } else if (exact_part < 0) {
            acc = tower_sub(acc, to_tower(-exact_part));
        }
        return Val::of(acc);
    }

    Val eval_mul(const BoundExpr& e) {
        BigInt exact_part = 1;
        bool exact_ok = true;
        std::vector<Tower> towers;
        bool negative = false;
        for (const auto& arg : e.args()) {
            Val v = eval(arg);
            if (v.exact) {
                if (*v.exact == 0) return Val::of(BigInt(0));
                BigInt a = *v.exact;
                if (a < 0) {
                    negative = !negative;
                    a = -a;
                }
                exact_part *= a;
                if (bit_length(exact_part) > max_bits_) exact_ok = false;
            } else {
                towers.push_back(v.tower);
            }
        }
        if (towers.empty() && exact_ok) {
            return Val::of(negative ? BigInt(-exact_part) : exact_part);
        }
        if (negative) throw DomainError("magnitude arithmetic needs positive values");
        Tower acc = to_tower(exact_part);
        for (const auto& t : towers) acc = tower_mul(acc, t);
        return Val::of(acc);
    }

    Val eval_pow(const BoundExpr& e) {
        Val base = eval(e.args()[0]);
        Val exp = eval(e.args()[1]);
        if (exp.exact && *exp.exact == 0) return Val::of(BigInt(1));
        if (exp.exact && *exp.exact < 0) throw DomainError("negative exponent");
        if (base.exact) {
            if (*base.exact == 1) return Val::of(BigInt(1));
            if (*base.exact == 0) return Val::of(BigInt(0));
            if (*base.exact < 0) throw DomainError("negative power base");
            if (exp.exact) {
                const BigInt est = BigInt(bit_length(*base.exact)) * *exp.exact;
                if (est <= max_bits_) {
                    return Val::of(boost::multiprecision::pow(
                        *base.exact, exp.exact->convert_to<unsigned>()));
                }
            }
        }
        return Val::of(tower_pow(base.as_tower(), exp.as_tower()));
    }

    Val eval_quot(const BoundExpr& e) {
        Val num = eval(e.args()[0]);
        Val den = eval(e.args()[1]);
        if (den.exact && *den.exact == 0) throw DomainError("division by zero");
        if (num.exact && den.exact) {
            BigInt q = *num.exact / *den.exact;
            if (q * *den.exact != *num.exact) {
                throw DomainError(
                    "exact-quotient node fails divisibility: " + num.exact->str() + " / " +
                    den.exact->str() + " (formula transcription bug)");
            }
            return Val::of(std::move(q));
        }
        return Val::of(tower_div(num.as_tower(), den.as_tower()));
    }

    std::uint64_t max_bits_;
};

BoundExpr power_of(const BigInt& base, BoundExpr exponent) {
    return BoundExpr::pow(BoundExpr::integer(base), std::move(exponent));
}

// Common core of the first-order family: exponents at effective dimension
// drop d_eff; d_eff = 0 falls back to the envelope (degV)^ceil(aT/(m+1)).
UniformBound first_order_core(int m, int n, int d_eff, const BigInt& degV, const BigInt& degW,
                              EvalContext& ctx) {
    if (m < 1 || n < 1) throw DomainError("bound needs m >= 1 and n >= 1");
    if (degV < 1 || degW < 1) throw DomainError("degrees must be >= 1");
    const BigInt T = T_bound(m, n, 1, ctx);
    const BigInt aT = alpha(m, T);
    const BigInt aT1 = alpha(m, T - 1);
    if (d_eff == 0) {
        BigInt env = (aT + m) / (m + 1);  // ceil(aT / (m+1))
        return UniformBound{power_of(degV, BoundExpr::integer(env)), T, true};
    }
    const BigInt da = d_eff * aT1;
    BoundExpr expV = power_of(
        degV, BoundExpr::product({BoundExpr::integer(aT),
                                  power_of(m + 1, BoundExpr::integer(da - 1))}));
    BoundExpr expW = power_of(
        degW,
        BoundExpr::quotient(
            BoundExpr::product({BoundExpr::integer(aT1),
                                BoundExpr::sum({power_of(m + 1, BoundExpr::integer(da)),
                                                BoundExpr::integer(-1)})}),
            BoundExpr::integer(m)));
    return UniformBound{BoundExpr::product({expV, expW}), T, false};
}

}  // namespace

EvalResult eval_bound(const BoundExpr& e, std::uint64_t max_bits) {
    Evaluator ev(max_bits);
    Val v = ev.eval(e);
    if (v.exact) return *v.exact;
    Tower t = normalize(v.tower);
    return Magnitude{t.h, t.v};
}

BigInt bl_dimension(const BigInt& dimV, int m, const BigInt& ell) {
    if (dimV < 0) throw DomainError("dimension must be >= 0");
    return alpha(m, ell) * dimV;
}

BoundExpr bl_degree_bound(const BigInt& degV, int m, const BigInt& ell) {
    if (degV < 1) throw DomainError("degree must be >= 1");
    return BoundExpr::pow(BoundExpr::integer(degV), BoundExpr::integer(alpha(m, ell)));
}

BoundExpr tau_degree_bound(const BigInt& degV, int n, int m, const BigInt& ell,
                           bool hypersurface, std::optional<BigInt> D) {
    if (degV < 1) throw DomainError("degree must be >= 1");
    if (hypersurface) {
        return BoundExpr::pow(BoundExpr::integer(degV), BoundExpr::integer(alpha(m, ell)));
    }
    if (!D) {
        throw DomainError(
            "general tau degree bound needs the radical-generator degree D "
            "(not effective from the inputs; supply it explicitly)");
    }
    if (*D < 1) throw DomainError("D must be >= 1");
    if (n < 1) throw DomainError("n must be >= 1");
    return BoundExpr::pow(BoundExpr::integer(*D),
                          BoundExpr::integer(n * alpha(m, ell) + 1));
}

BoundExpr bezout(const std::vector<BigInt>& degrees) {
    if (degrees.empty()) throw DomainError("bezout needs at least one degree");
    std::vector<BoundExpr> args;
    args.reserve(degrees.size());
    for (const auto& d : degrees) {
        if (d < 1) throw DomainError("degrees must be >= 1");
        args.push_back(BoundExpr::integer(d));
    }
    return BoundExpr::product(std::move(args));
}

BoundExpr project_bound(const BigInt& deg) {
    if (deg < 1) throw DomainError("degrees must be >= 1");
    return BoundExpr::integer(deg);
}

UniformBound uniform_bound_first_order(int m, int n, int d, const BigInt& degV,
                                       const BigInt& degW, EvalContext& ctx) {
    if (d < 0 || d > n) throw DomainError("need 0 <= d <= n");
    return first_order_core(m, n, d, degV, degW, ctx);
}

UniformBound bound_positive_dim(int m, int n, int d, int d0, const BigInt& degV,
                                const BigInt& degW, EvalContext& ctx) {
    if (d < 0 || d > n) throw DomainError("need 0 <= d <= n");
    if (d0 < 0 || d0 > d) throw DomainError("need 0 <= d0 <= d");
    return first_order_core(m, n, d - d0, degV, degW, ctx);
}

UniformBound bound_higher_order(int m, int n, int ell, int d, const BigInt& degV,
                                const BigInt& degW, EvalContext& ctx) {
    if (ell < 1) throw DomainError("higher-order bound needs ell >= 1");
    if (d < 0 || d > n) throw DomainError("need 0 <= d <= n");
    if (degV < 1 || degW < 1) throw DomainError("degrees must be >= 1");
    const BigInt a_prev = alpha(m, ell - 1);
    const BigInt n_prime_big = a_prev * n;
    if (n_prime_big > std::numeric_limits<int>::max()) {
        throw BudgetError(BudgetError::Kind::ValueBits,
                          "n * alpha_(ell-1) = " + n_prime_big.str() + " is out of range");
    }
    const int n_prime = n_prime_big.convert_to<int>();
    const BigInt T = T_bound(m, n_prime, 1, ctx);
    const BigInt aT = alpha(m, T);
    const BigInt aT1 = alpha(m, T - 1);
    const BigInt da = d * a_prev * aT1;  // d' * alpha_(T'-1)
    if (da == 0) {
        BigInt env = (aT + m) / (m + 1);
        return UniformBound{power_of(degV, BoundExpr::integer(env)), T, true};
    }
    BoundExpr expV = power_of(
        degV,
        BoundExpr::product({BoundExpr::integer(a_prev * aT),
                            power_of(m + 1, BoundExpr::integer(da - 1))}));
    BoundExpr expW = power_of(
        degW,
        BoundExpr::quotient(
            BoundExpr::product({BoundExpr::integer(aT1),
                                BoundExpr::sum({power_of(m + 1, BoundExpr::integer(da)),
                                                BoundExpr::integer(-1)})}),
            BoundExpr::integer(m)));
    return UniformBound{BoundExpr::product({expV, expW}), T, false};
}

UniformBound bound_generator_degrees(int m, int n, const BigInt& D, const BigInt& r,
                                     const BigInt& s, EvalContext& ctx) {
    if (D < 1) throw DomainError("D must be >= 1");
    if (r < 0 || s < 0 || r + s < 1) throw DomainError("need r + s >= 1");
    const BigInt T = T_bound(m, n, 1, ctx);
    const BigInt aT = alpha(m, T);
    const BigInt aT1 = alpha(m, T - 1);
    BoundExpr e = power_of(
        D, BoundExpr::product({BoundExpr::integer((r + s) * aT),
                               power_of(m + 1, BoundExpr::integer(BigInt(n) * aT1))}));
    return UniformBound{e, T, false};
}

BoundExpr isogeny_bound(const BigInt& degV, int d) {
    if (degV < 1) throw DomainError("degree must be >= 1");
    if (d < 0) throw DomainError("d must be >= 0");
    const BigInt exponent = (BigInt(1) << (3 * d)) - 1;
    return BoundExpr::pow(BoundExpr::integer(6 * degV), BoundExpr::integer(exponent));
}

UniformBound trajectory_step_bound(int m, int n, const BigInt& s, const BigInt& degV,
                                   const BigInt& degW, EvalContext& ctx) {
    if (s < 0) throw DomainError("step must be >= 0");
    if (degV < 1 || degW < 1) throw DomainError("degrees must be >= 1");
    const BigInt T = T_bound(m, n, 1, ctx);
    const BigInt aT = alpha(m, T);
    const BigInt aT1 = alpha(m, T - 1);
    if (s > 100000) {
        throw BudgetError(BudgetError::Kind::Enumeration,
                          "trajectory sum with " + s.str() + " terms not materialized");
    }
    std::vector<BoundExpr> geo;
    for (BigInt i = 0; i <= s; ++i) {
        geo.push_back(power_of(m + 1, BoundExpr::integer(i)));
    }
    BoundExpr expV = power_of(
        degV, BoundExpr::product({BoundExpr::integer(aT), power_of(m + 1, BoundExpr::integer(s))}));
    BoundExpr expW = power_of(
        degW, BoundExpr::product({BoundExpr::integer(aT1), BoundExpr::sum(std::move(geo))}));
    return UniformBound{BoundExpr::product({expV, expW}), T, false};
}

}  // namespace diffbound
