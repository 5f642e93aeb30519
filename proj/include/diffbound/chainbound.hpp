#ifndef DIFFBOUND_CHAINBOUND_HPP
#define DIFFBOUND_CHAINBOUND_HPP

#include "diffbound/bigint.hpp"
#include "diffbound/budget.hpp"
#include "diffbound/sequence.hpp"

namespace diffbound {

/// Smallest chain length t such that no chain S_0 c S_1 c ... c S_t of
/// antichains of (N^m x n, product order) with S_k inside {(xi,i): |xi| <= a_k}
/// is strictly increasing.
///
///   m = 1:  n + 1
///   m = 2:  b_n + 1 with b_0 = 0, b_{i+1} = a_{b_i + 1} + b_i + 1
///   m > 2:  the layered bound-function recursion (expect budget errors;
///           the values grow Ackermann-fast)
BigInt t_bound(int m, int n, const Sequence& seq, EvalContext& ctx);

/// Prolongation depth sufficient to expose all consequences of commuting
/// derivations: r when m = 1, otherwise 2^{t(m,n,(2^i r))} * r.
BigInt T_bound(int m, int n, const BigInt& r, EvalContext& ctx);

/// Exponent of T_bound's power of two: t(m, n, (2^i r)).  Useful when the
/// materialized T itself would blow the value guard.
BigInt T_bound_exponent(int m, int n, const BigInt& r, EvalContext& ctx);

/// The bound function associated to a sequence: g(k) = t(m, n, seq shifted
/// by k).  Always >= 2, since t counts at least the empty set and one
/// singleton.
class BoundFunction {
public:
    BoundFunction(int m, int n, Sequence seq) : m_(m), n_(n), seq_(std::move(seq)) {}

    BigInt operator()(const BigInt& k, EvalContext& ctx) const {
        return t_bound(m_, n_, seq_.shifted(k), ctx);
    }

private:
    int m_;
    int n_;
    Sequence seq_;
};

}  // namespace diffbound

#endif
