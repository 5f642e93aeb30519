#ifndef DIFFBOUND_SEQUENCE_HPP
#define DIFFBOUND_SEQUENCE_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "diffbound/bigint.hpp"
#include "diffbound/budget.hpp"

namespace diffbound {

class IndexSequence;
using IndexSequencePtr = std::shared_ptr<IndexSequence>;

/// A lazily evaluated non-decreasing sequence of positive integers with
/// arbitrary-precision indices.  Immutable value; cheap to copy.
///
/// Kinds:
///   geometric(r)          a_i = 2^i * r
///   explicit prefix       given values, then doubling from the last one
///   shifted(base, off)    a_i = base_(i + off); nested shifts are flattened
///   composed(base, b)     a_l = base_(b_l) for an index sequence b
class Sequence {
public:
    struct Node;  // defined in sequence.cpp

    static Sequence geometric(BigInt r);
    static Sequence explicit_then_geometric(std::vector<BigInt> prefix);
    static Sequence composed(Sequence base, IndexSequencePtr index_map);
    Sequence shifted(const BigInt& offset) const;

    BigInt at(const BigInt& i, EvalContext& ctx) const;

    std::size_t structural_hash() const;
    bool structural_equal(const Sequence& other) const;
    std::string describe() const;

    /// Parses the CLI literal syntax: "geometric:r=<int>" or
    /// "explicit:[v0,v1,...]:then=geometric".
    static Sequence parse(const std::string& literal);

private:
    explicit Sequence(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Recursively defined index sequence b_0 = 0, b_{l+1} = step(b_l), strictly
/// increasing.  Values are memoized; identity (not structure) names it in
/// hashes, so reuse the same object for the same recursion.
class IndexSequence {
public:
    using Step = std::function<BigInt(const BigInt& current, EvalContext&)>;

    explicit IndexSequence(Step step);

    BigInt at(const BigInt& l, EvalContext& ctx);

    std::uint64_t id() const { return id_; }

private:
    Step step_;
    std::vector<BigInt> cache_;  // cache_[l] = b_l
    std::uint64_t id_;
};

IndexSequencePtr make_index_sequence(IndexSequence::Step step);

}  // namespace diffbound

#endif
