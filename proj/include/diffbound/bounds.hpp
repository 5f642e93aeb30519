#ifndef DIFFBOUND_BOUNDS_HPP
#define DIFFBOUND_BOUNDS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "diffbound/bigint.hpp"
#include "diffbound/budget.hpp"

namespace diffbound {

/// Immutable symbolic arithmetic expression: big-integer literals,
/// binomials, sums, products, powers and exact quotients.
class BoundExpr {
public:
    enum class Op { Int, Binom, Add, Mul, Pow, Quot };

    static BoundExpr integer(BigInt v);
    static BoundExpr binom(BoundExpr n, BoundExpr k);
    static BoundExpr sum(std::vector<BoundExpr> args);
    static BoundExpr product(std::vector<BoundExpr> args);
    static BoundExpr pow(BoundExpr base, BoundExpr exponent);
    static BoundExpr quotient(BoundExpr num, BoundExpr den);  // must divide evenly

    Op op() const { return node_->op; }
    const BigInt& value() const;  // Op::Int only
    const std::vector<BoundExpr>& args() const { return node_->args; }

    bool structural_equal(const BoundExpr& other) const;
    std::string to_string() const;

private:
    struct Node {
        Op op;
        BigInt value;
        std::vector<BoundExpr> args;
    };
    explicit BoundExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// log2 applied `height` times to the bound is approximately `value`;
/// height is minimal so that value fits floating range.
struct Magnitude {
    int height = 0;
    double value = 0.0;
};

using EvalResult = std::variant<BigInt, Magnitude>;

/// Exact big integer when the estimated bit length fits max_bits, otherwise
/// a Magnitude good to ~1e-6 relative error in the top-level log.  Exact
/// quotients failing divisibility raise DomainError.
EvalResult eval_bound(const BoundExpr& e, std::uint64_t max_bits = std::uint64_t{1} << 26);

// --- dimension / degree bookkeeping -------------------------------------

/// alpha_ell * dimV.
BigInt bl_dimension(const BigInt& dimV, int m, const BigInt& ell);

/// (degV)^(alpha_ell).
BoundExpr bl_degree_bound(const BigInt& degV, int m, const BigInt& ell);

/// Hypersurface mode: (degH)^(alpha_ell).  General mode: D^(n*alpha_ell + 1)
/// for a caller-supplied radical-generator degree D.
BoundExpr tau_degree_bound(const BigInt& degV, int n, int m, const BigInt& ell,
                           bool hypersurface, std::optional<BigInt> D = {});

/// Product of the degrees (intersection), and the projection identity.
BoundExpr bezout(const std::vector<BigInt>& degrees);
BoundExpr project_bound(const BigInt& deg);

// --- headline bound formulas ---------------------------------------------

struct UniformBound {
    BoundExpr expr;
    BigInt T;               // prolongation depth used
    bool degenerate = false;  // envelope case (effective dimension drop 0)
};

/// (degV)^(aT (m+1)^(d aT1 - 1)) (degW)^(aT1 ((m+1)^(d aT1) - 1)/m) with
/// T = T_bound(m, n, 1), aT = alpha_T, aT1 = alpha_(T-1).
UniformBound uniform_bound_first_order(int m, int n, int d, const BigInt& degV,
                                       const BigInt& degW, EvalContext& ctx);

/// Same with d replaced by d - d0 (component dimension floor d0).  The case
/// d0 == d degenerates to the envelope (degV)^(ceil(aT/(m+1))), flagged.
UniformBound bound_positive_dim(int m, int n, int d, int d0, const BigInt& degV,
                                const BigInt& degW, EvalContext& ctx);

/// Order-ell systems via n' = n*alpha_(ell-1), d' = d*alpha_(ell-1) and
/// T' = T_bound(m, n', 1).
UniformBound bound_higher_order(int m, int n, int ell, int d, const BigInt& degV,
                                const BigInt& degW, EvalContext& ctx);

/// D^((r+s) aT (m+1)^(n aT1)) for r order-0 and s order-1 equations of
/// degree at most D.
UniformBound bound_generator_degrees(int m, int n, const BigInt& D, const BigInt& r,
                                     const BigInt& s, EvalContext& ctx);

/// (6 degV)^(2^(3d) - 1).
BoundExpr isogeny_bound(const BigInt& degV, int d);

/// The step-s degree bound (degV)^(aT (m+1)^s) (degW)^(aT1 sum_{i<=s}(m+1)^i)
/// with the sum kept as an explicit symbolic sum; at s = d*aT1 - 1 its
/// evaluation equals the first-order bound.
UniformBound trajectory_step_bound(int m, int n, const BigInt& s, const BigInt& degV,
                                   const BigInt& degW, EvalContext& ctx);

}  // namespace diffbound

#endif
