#include "diffbound/oracle.hpp"

#include <algorithm>
#include <chrono>

#include "diffbound/prolong.hpp"

namespace diffbound {

namespace {

// Sort key for chain extensions: canonical on the multi-index alone, then
// the coordinate.  Strictly increasing keys enumerate every antichain once
// while keeping element orders non-decreasing along the chain, which is
// lossless: steps of a strictly increasing chain can always be reordered
// that way, splitting multi-element steps into single additions.
std::strong_ordering extension_key_cmp(const IndexedPoint& a, const IndexedPoint& b) {
    if (auto c = cmp_canonical(a.xi, b.xi); c != 0) return c;
    return a.i <=> b.i;
}

struct SearchState {
    int m;
    int n;
    int depth_cap;
    std::vector<int> a;  // a[j] for j = 0..depth_cap (clamped to the pool range)
    std::vector<MultiIndex> pool;  // Gamma(a[depth_cap]), ascending canonical

    std::vector<std::vector<MultiIndex>> coords;  // current antichain per coordinate
    std::vector<int> min_order;                   // per used coordinate
    std::vector<IndexedPoint> added;              // the chain, in addition order

    std::uint64_t nodes = 0;
    std::uint64_t node_budget = 0;
    std::chrono::steady_clock::time_point deadline;
    bool has_deadline = false;
    bool truncated = false;

    int best = -1;
    std::vector<IndexedPoint> best_chain;
};

bool incomparable_with_coordinate(const SearchState& st, const MultiIndex& xi, int coord) {
    for (const auto& other : st.coords[static_cast<std::size_t>(coord)]) {
        if (cmp_product(xi, other) != PartialCmp::Incomparable) return false;
    }
    return true;
}

// Admissible upper bound on how many further elements can still be added:
// an antichain of N^2 containing an element of order s has at most s + 1
// elements, and one of N is a single point.
int remaining_capacity(const SearchState& st) {
    const int by_depth = st.depth_cap - static_cast<int>(st.added.size());
    if (st.m > 2) return by_depth;
    long long total = 0;
    for (int c = 0; c < st.n; ++c) {
        const auto& elems = st.coords[static_cast<std::size_t>(c)];
        if (elems.empty()) {
            total += st.m == 1 ? 1 : st.a[static_cast<std::size_t>(st.depth_cap)] + 1;
        } else if (st.m == 1) {
            total += 0;
        } else {
            total += std::max(0, st.min_order[static_cast<std::size_t>(c)] + 1 -
                                     static_cast<int>(elems.size()));
        }
    }
    return static_cast<int>(std::min<long long>(by_depth, total));
}

void dfs(SearchState& st) {
    if (st.truncated) return;
    ++st.nodes;
    if (st.node_budget && st.nodes > st.node_budget) {
        st.truncated = true;
        return;
    }
    if (st.has_deadline && (st.nodes & 0xFF) == 0 &&
        std::chrono::steady_clock::now() > st.deadline) {
        st.truncated = true;
        return;
    }

    const int cur = static_cast<int>(st.added.size());
    if (cur > st.best) {
        st.best = cur;
        st.best_chain = st.added;
    }
    const int next = cur + 1;
    if (next > st.depth_cap) return;
    if (cur + remaining_capacity(st) <= st.best) return;

    int used = 0;
    for (int c = 0; c < st.n; ++c) {
        if (!st.coords[static_cast<std::size_t>(c)].empty()) used = c + 1;
    }

    const int order_cap = st.a[static_cast<std::size_t>(next)];
    for (const auto& xi : st.pool) {
        if (xi.order() > order_cap) continue;
        const int coord_limit = std::min(st.n - 1, used);  // smallest unused only
        for (int c = 0; c <= coord_limit; ++c) {
            IndexedPoint cand{xi, c};
            if (!st.added.empty() && extension_key_cmp(cand, st.added.back()) <= 0) continue;
            if (!incomparable_with_coordinate(st, xi, c)) continue;

            auto& elems = st.coords[static_cast<std::size_t>(c)];
            const int saved_min = st.min_order[static_cast<std::size_t>(c)];
            elems.push_back(xi);
            if (elems.size() == 1 || xi.order() < saved_min) {
                st.min_order[static_cast<std::size_t>(c)] = xi.order();
            }
            st.added.push_back(cand);

            dfs(st);

            st.added.pop_back();
            elems.pop_back();
            st.min_order[static_cast<std::size_t>(c)] = saved_min;
            if (st.truncated) return;
        }
    }
}

AntichainSet make_set(int m, int n, std::vector<IndexedPoint> elems) {
    std::sort(elems.begin(), elems.end(), [](const IndexedPoint& a, const IndexedPoint& b) {
        return cmp_canonical(a, b) < 0;
    });
    return AntichainSet{m, n, std::move(elems)};
}

}  // namespace

bool AntichainSet::is_antichain() const {
    for (std::size_t i = 0; i < elements.size(); ++i) {
        for (std::size_t j = i + 1; j < elements.size(); ++j) {
            if (cmp_product(elements[i], elements[j]) != PartialCmp::Incomparable) return false;
        }
    }
    return true;
}

ChainSearchReport max_strict_chain(int m, int n, const Sequence& seq, int depth_cap,
                                   EvalContext& ctx) {
    if (m < 1 || n < 1) throw DomainError("max_strict_chain needs m >= 1 and n >= 1");
    if (depth_cap < 0) throw DomainError("depth_cap must be >= 0");

    SearchState st;
    st.m = m;
    st.n = n;
    st.depth_cap = depth_cap;
    st.a.resize(static_cast<std::size_t>(depth_cap) + 1, 0);
    int max_order = 0;
    for (int j = 1; j <= depth_cap; ++j) {
        const BigInt aj = seq.at(j, ctx);
        if (aj > 1'000'000) {
            throw BudgetError(BudgetError::Kind::Enumeration,
                              "a_" + std::to_string(j) + " = " + aj.str() +
                                  " is too large to enumerate Gamma(a_j)");
        }
        st.a[static_cast<std::size_t>(j)] = aj.convert_to<int>();
        max_order = std::max(max_order, st.a[static_cast<std::size_t>(j)]);
    }
    const BigInt pool_size = alpha(m, max_order) * n;
    if (pool_size > ctx.budget().max_enumeration) {
        throw BudgetError(BudgetError::Kind::Enumeration,
                          "candidate pool of " + pool_size.str() + " elements exceeds the budget");
    }
    st.pool = enumerate_gamma(m, max_order, ctx.budget().max_enumeration);
    st.coords.assign(static_cast<std::size_t>(n), {});
    st.min_order.assign(static_cast<std::size_t>(n), 0);
    st.node_budget = ctx.budget().max_steps;
    if (ctx.budget().time_limit) {
        st.deadline = std::chrono::steady_clock::now() + *ctx.budget().time_limit;
        st.has_deadline = true;
    }

    dfs(st);

    ChainSearchReport report;
    report.max_strict_steps = std::max(0, st.best);
    report.nodes_explored = st.nodes;
    report.exhaustive = !st.truncated;
    report.witness.push_back(make_set(m, n, {}));
    std::vector<IndexedPoint> acc;
    for (const auto& e : st.best_chain) {
        acc.push_back(e);
        report.witness.push_back(make_set(m, n, acc));
    }
    return report;
}

void validate_chain_witness(const ChainSearchReport& report, int m, int n, const Sequence& seq,
                            EvalContext& ctx) {
    if (report.witness.empty()) throw DomainError("witness must contain at least the empty set");
    if (static_cast<int>(report.witness.size()) != report.max_strict_steps + 1) {
        throw DomainError("witness length does not match max_strict_steps");
    }
    for (std::size_t j = 0; j < report.witness.size(); ++j) {
        const auto& S = report.witness[j];
        if (S.m != m || S.n != n) throw DomainError("witness arity mismatch");
        if (!S.is_antichain()) throw DomainError("witness set is not an antichain");
        const BigInt aj = seq.at(BigInt(j), ctx);
        for (const auto& e : S.elements) {
            if (e.i < 0 || e.i >= n) throw DomainError("witness coordinate out of range");
            if (BigInt(e.xi.order()) > aj) {
                throw DomainError("witness element exceeds the order constraint at step " +
                                  std::to_string(j));
            }
        }
        if (j > 0) {
            const auto& prev = report.witness[j - 1].elements;
            if (S.elements.size() <= prev.size()) {
                throw DomainError("witness chain is not strictly increasing");
            }
            for (const auto& e : prev) {
                if (std::find(S.elements.begin(), S.elements.end(), e) == S.elements.end()) {
                    throw DomainError("witness chain is not increasing");
                }
            }
        }
    }
}

Case1Report check_case1(const MultiIndex& sigma, int box, EvalContext& ctx) {
    if (sigma.arity() != 2) throw DomainError("check_case1 works on N^2");
    if (box < 0 || box > 1000) throw DomainError("box must be in 0..1000");
    if (sigma[0] > box || sigma[1] > box) throw DomainError("sigma must lie in the box");

    // Candidates: points of [0,box]^2 incomparable with sigma, ascending.
    std::vector<MultiIndex> candidates;
    for (int d = 0; d <= 2 * box; ++d) {
        for (int s2 = std::max(0, d - box); s2 <= std::min(box, d); ++s2) {
            MultiIndex p({d - s2, s2});
            if (cmp_product(p, sigma) == PartialCmp::Incomparable) candidates.push_back(p);
        }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const MultiIndex& a, const MultiIndex& b) { return cmp_canonical(a, b) < 0; });

    Case1Report report;
    report.bound = sigma.order() + 1;

    std::vector<MultiIndex> current{sigma};
    std::vector<MultiIndex> best{sigma};
    std::uint64_t nodes = 0;
    const std::uint64_t node_budget = ctx.budget().max_steps;

    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (++nodes > node_budget) {
            throw BudgetError(BudgetError::Kind::Steps, "case1 enumeration exceeded the budget");
        }
        if (current.size() > best.size()) best = current;
        for (std::size_t idx = from; idx < candidates.size(); ++idx) {
            const MultiIndex& cand = candidates[idx];
            bool ok = true;
            for (const auto& e : current) {
                if (cmp_product(cand, e) != PartialCmp::Incomparable) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            current.push_back(cand);
            rec(idx + 1);
            current.pop_back();
        }
    };
    rec(0);

    std::sort(best.begin(), best.end(),
              [](const MultiIndex& a, const MultiIndex& b) { return cmp_canonical(a, b) < 0; });
    report.max_size = static_cast<int>(best.size());
    report.witness = std::move(best);
    report.bound_holds = report.max_size <= report.bound;
    report.nodes_explored = nodes;
    return report;
}

ProlongPointsReport verify_prolong_on_points(
    const std::vector<DiffPolynomial>& generators,
    const std::vector<std::map<int, DiffPolynomial>>& points, int ell) {
    validate_generators(generators);
    if (points.empty()) throw DomainError("no points given");

    // Precondition: every point satisfies every generator identically.
    for (std::size_t p = 0; p < points.size(); ++p) {
        for (std::size_t g = 0; g < generators.size(); ++g) {
            if (!generators[g].evaluate_point(points[p]).is_zero()) {
                throw DomainError("point " + std::to_string(p) + " does not satisfy generator " +
                                  std::to_string(g));
            }
        }
    }

    const auto out = prolong_substitution(generators, ell);
    ProlongPointsReport report;
    report.points_checked = points.size();
    for (std::size_t p = 0; p < points.size(); ++p) {
        for (const auto& eq : out.equations) {
            ++report.equations_checked;
            if (!eq.poly.evaluate_point(points[p]).is_zero()) {
                report.violations.push_back({eq.generator, eq.xi, p});
            }
        }
    }
    report.pass = report.violations.empty();
    return report;
}

TSoundnessReport verify_t_soundness(int m, int n, const Sequence& seq, int depth_cap,
                                    EvalContext& ctx) {
    TSoundnessReport report;
    report.t = t_bound(m, n, seq, ctx);
    report.chain = max_strict_chain(m, n, seq, depth_cap, ctx);
    report.pass =
        report.chain.exhaustive && BigInt(report.chain.max_strict_steps) <= report.t - 1;
    return report;
}

}  // namespace diffbound
