#ifndef DIFFBOUND_MULTIINDEX_HPP
#define DIFFBOUND_MULTIINDEX_HPP

#include <compare>
#include <cstdint>
#include <vector>

#include "diffbound/bigint.hpp"
#include "diffbound/errors.hpp"

namespace diffbound {

/// Derivative exponent vector in N^m.  Entry k (0-based) is the exponent of
/// the k+1-st derivation.  Immutable after construction.
class MultiIndex {
public:
    explicit MultiIndex(std::vector<int> entries);
    static MultiIndex zero(int m);
    static MultiIndex unit(int m, int k);  // k is 1-based

    int arity() const { return static_cast<int>(entries_.size()); }
    int order() const { return order_; }  // |xi|
    int operator[](int k) const { return entries_[static_cast<std::size_t>(k)]; }
    const std::vector<int>& entries() const { return entries_; }

    /// xi + unit(k), k 1-based.
    MultiIndex plus_unit(int k) const;
    /// xi - unit(k), k 1-based; requires xi[k-1] > 0.
    MultiIndex minus_unit(int k) const;
    /// Componentwise sum.
    MultiIndex operator+(const MultiIndex& other) const;

    bool is_zero() const { return order_ == 0; }
    bool operator==(const MultiIndex& other) const { return entries_ == other.entries_; }
    bool operator!=(const MultiIndex& other) const { return !(*this == other); }

    std::size_t hash() const;
    std::string to_string() const;  // "[a,b,...]"

private:
    std::vector<int> entries_;
    int order_;
};

enum class PartialCmp { Less, Greater, Equal, Incomparable };

/// Entrywise product order on N^m.
PartialCmp cmp_product(const MultiIndex& a, const MultiIndex& b);

/// Total order (|xi|, xi_m, ..., xi_1) lexicographic; refines the product order.
std::strong_ordering cmp_canonical(const MultiIndex& a, const MultiIndex& b);

/// An element (xi, i) of N^m x n; i is the coordinate index, 0 <= i < n.
struct IndexedPoint {
    MultiIndex xi;
    int i = 0;

    bool operator==(const IndexedPoint& other) const { return i == other.i && xi == other.xi; }
};

/// Product order on N^m x n: comparable only within one coordinate.
PartialCmp cmp_product(const IndexedPoint& a, const IndexedPoint& b);

/// Total order (|xi|, i, xi_m, ..., xi_1) lexicographic.
std::strong_ordering cmp_canonical(const IndexedPoint& a, const IndexedPoint& b);

/// binomial(ell + m, m), the number of multi-indices of order <= ell.
BigInt alpha(int m, const BigInt& ell);

/// binomial(n, k) for n, k >= 0 (0 when k > n).
BigInt binomial(const BigInt& n, const BigInt& k);

/// All xi in N^m with |xi| <= ell, ascending in the canonical order.
/// Refuses to materialize more than max_elements entries.
std::vector<MultiIndex> enumerate_gamma(int m, int ell,
                                        std::uint64_t max_elements = 10'000'000);

}  // namespace diffbound

#endif
