#include "diffbound/chainbound.hpp"

#include <unordered_map>
#include <vector>

namespace diffbound {

namespace {

// Memo for one top-level t_bound call tree, keyed by (m, n, sequence
// structure).  Hash collisions are resolved by structural equality.
class TMemo {
public:
    struct Entry {
        int m;
        int n;
        Sequence seq;
        BigInt value;
    };

    const BigInt* find(int m, int n, const Sequence& seq) const {
        auto range = buckets_.equal_range(key(m, n, seq));
        for (auto it = range.first; it != range.second; ++it) {
            const Entry& e = it->second;
            if (e.m == m && e.n == n && e.seq.structural_equal(seq)) return &e.value;
        }
        return nullptr;
    }

    void store(int m, int n, const Sequence& seq, BigInt value) {
        buckets_.emplace(key(m, n, seq), Entry{m, n, seq, std::move(value)});
    }

private:
    static std::size_t key(int m, int n, const Sequence& seq) {
        std::size_t h = seq.structural_hash();
        hash_combine(h, std::hash<int>{}(m));
        hash_combine(h, std::hash<int>{}(n));
        return h;
    }

    std::unordered_multimap<std::size_t, Entry> buckets_;
};

BigInt t_rec(int m, int n, const Sequence& seq, EvalContext& ctx, TMemo& memo);

// The m > 2, n = 1 case: slice the antichain along one fixed coordinate of
// xi, which drops into N^{m-1} x 1, and stack p = m(a_1 + 1) - 1 layers of
// index sequences driven by bound functions of the lower arity.
BigInt t_general_n1(int m, const Sequence& seq, EvalContext& ctx, TMemo& memo) {
    const BigInt a = seq.at(1, ctx);
    const BigInt p = m * (a + 1) - 1;
    if (p > static_cast<long long>(ctx.budget().max_steps)) {
        throw BudgetError(BudgetError::Kind::Steps,
                          "t recursion needs " + approx_str(p) + " layers (step guard " +
                              std::to_string(ctx.budget().max_steps) + ")",
                          ctx.recursion_depth());
    }
    const std::uint64_t layers = p.convert_to<std::uint64_t>();

    // b^1_{l+1} = f_1(b^1_l) + b^1_l with f_1(k) = t(m-1, 1, (a_i : i >= k)).
    IndexSequencePtr prev = make_index_sequence([m, seq, &memo](const BigInt& cur, EvalContext& c) {
        return t_rec(m - 1, 1, seq.shifted(cur), c, memo) + cur;
    });

    // b^i_{l+1} = b^{i-1}_{f_i(b^i_l)} + b^i_l with f_i the bound function of
    // (a_{b^{i-1}_l} : l >= 0).
    for (std::uint64_t i = 2; i + 1 <= layers; ++i) {
        ctx.tick();
        Sequence through_prev = Sequence::composed(seq, prev);
        IndexSequencePtr level = make_index_sequence(
            [m, through_prev, prev, &memo](const BigInt& cur, EvalContext& c) {
                BigInt fi = t_rec(m - 1, 1, through_prev.shifted(cur), c, memo);
                return prev->at(fi, c) + cur;
            });
        prev = level;
    }

    Sequence through_last = Sequence::composed(seq, prev);
    IndexSequencePtr final_b = make_index_sequence(
        [m, through_last, prev, &memo](const BigInt& cur, EvalContext& c) {
            BigInt fp = t_rec(m - 1, 1, through_last.shifted(cur), c, memo);
            return prev->at(fp, c) + cur;
        });

    const BigInt f0 = t_rec(m - 1, 1, Sequence::composed(seq, final_b), ctx, memo);
    return final_b->at(f0, ctx);
}

BigInt t_rec(int m, int n, const Sequence& seq, EvalContext& ctx, TMemo& memo) {
    if (m < 1) throw DomainError("t_bound: m must be >= 1");
    if (n < 1) throw DomainError("t_bound: n must be >= 1");
    if (const BigInt* hit = memo.find(m, n, seq)) return *hit;

    EvalContext::DepthGuard depth(ctx);
    ctx.tick();

    BigInt result;
    if (m == 1) {
        result = n + 1;
    } else if (m == 2) {
        BigInt b = 0;
        for (int i = 0; i < n; ++i) {
            b += seq.at(b + 1, ctx) + 1;
        }
        result = b + 1;
    } else if (n == 1) {
        result = t_general_n1(m, seq, ctx, memo);
    } else {
        // f(k) = t(m, 1, (a_i : i >= k)); b_{l+1} = f(b_l) + b_l; then reduce
        // to n - 1 coordinates along the composed sequence (a_{b_l}).
        IndexSequencePtr b = make_index_sequence([m, seq, &memo](const BigInt& cur, EvalContext& c) {
            return t_rec(m, 1, seq.shifted(cur), c, memo) + cur;
        });
        const BigInt g0 = t_rec(m, n - 1, Sequence::composed(seq, b), ctx, memo);
        result = b->at(g0, ctx);
    }

    memo.store(m, n, seq, result);
    return result;
}

}  // namespace

BigInt t_bound(int m, int n, const Sequence& seq, EvalContext& ctx) {
    TMemo memo;
    return t_rec(m, n, seq, ctx, memo);
}

BigInt T_bound_exponent(int m, int n, const BigInt& r, EvalContext& ctx) {
    if (m < 1) throw DomainError("T_bound: m must be >= 1");
    if (n < 1) throw DomainError("T_bound: n must be >= 1");
    if (r < 1) throw DomainError("T_bound: r must be >= 1");
    if (m == 1) return 0;
    return t_bound(m, n, Sequence::geometric(r), ctx);
}

BigInt T_bound(int m, int n, const BigInt& r, EvalContext& ctx) {
    if (m < 1) throw DomainError("T_bound: m must be >= 1");
    if (n < 1) throw DomainError("T_bound: n must be >= 1");
    if (r < 1) throw DomainError("T_bound: r must be >= 1");
    if (m == 1) return r;
    const BigInt t = t_bound(m, n, Sequence::geometric(r), ctx);
    const BigInt bits = t + static_cast<long long>(bit_length(r));
    if (bits > static_cast<long long>(ctx.budget().max_value_bits)) {
        throw BudgetError(BudgetError::Kind::ValueBits,
                          "T would need " + approx_str(bits) + " bits (guard " +
                              std::to_string(ctx.budget().max_value_bits) + ")",
                          ctx.recursion_depth());
    }
    return r << t.convert_to<std::uint64_t>();
}

}  // namespace diffbound
