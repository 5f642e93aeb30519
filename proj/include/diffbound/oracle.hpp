#ifndef DIFFBOUND_ORACLE_HPP
#define DIFFBOUND_ORACLE_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "diffbound/chainbound.hpp"
#include "diffbound/diffpoly.hpp"
#include "diffbound/multiindex.hpp"
#include "diffbound/sequence.hpp"

namespace diffbound {

/// Finite antichain of (N^m x n, product order).
struct AntichainSet {
    int m = 1;
    int n = 1;
    std::vector<IndexedPoint> elements;  // ascending canonical

    bool is_antichain() const;
};

struct ChainSearchReport {
    int max_strict_steps = 0;             // k: longest S_0 c S_1 c ... c S_k found
    std::vector<AntichainSet> witness;    // the k+1 sets, starting from the empty set
    std::uint64_t nodes_explored = 0;
    bool exhaustive = true;               // false when the search was truncated
};

/// Exhaustive search for the longest strictly increasing chain of antichains
/// with S_j inside {(xi,i): |xi| <= a_j}, up to depth_cap strict steps.
/// Feasible when every Gamma(a_j) with j <= depth_cap is enumerable.  A
/// blown node/time budget yields a truncated (non-exhaustive) report rather
/// than an error.
ChainSearchReport max_strict_chain(int m, int n, const Sequence& seq, int depth_cap,
                                   EvalContext& ctx);

/// Re-checks a report's witness from scratch: antichain property, strict
/// inclusions, and the per-step order constraints.  Throws on violation.
void validate_chain_witness(const ChainSearchReport& report, int m, int n, const Sequence& seq,
                            EvalContext& ctx);

struct Case1Report {
    int max_size = 0;                   // largest antichain of [0,B]^2 containing sigma
    std::vector<MultiIndex> witness;    // one antichain attaining it
    int bound = 0;                      // |sigma| + 1
    bool bound_holds = false;
    std::uint64_t nodes_explored = 0;
};

/// Exhaustively enumerates antichains of [0,B]^2 containing sigma.
Case1Report check_case1(const MultiIndex& sigma, int box, EvalContext& ctx);

struct ProlongPointsReport {
    bool pass = false;
    std::size_t equations_checked = 0;
    std::size_t points_checked = 0;
    struct Violation {
        int generator;
        MultiIndex xi;
        std::size_t point_index;
    };
    std::vector<Violation> violations;
};

/// Checks that every prolongation equation vanishes at nabla of every point.
/// Points not on the variety are a precondition failure (DomainError).
ProlongPointsReport verify_prolong_on_points(const std::vector<DiffPolynomial>& generators,
                                             const std::vector<std::map<int, DiffPolynomial>>& points,
                                             int ell);

struct TSoundnessReport {
    BigInt t;                  // t_bound(m, n, seq)
    ChainSearchReport chain;   // exhaustive search result
    bool pass = false;         // exhaustive and max_strict_steps <= t - 1
};

TSoundnessReport verify_t_soundness(int m, int n, const Sequence& seq, int depth_cap,
                                    EvalContext& ctx);

}  // namespace diffbound

#endif
