#include "diffbound/multiindex.hpp"

#include <functional>
#include <limits>
#include <string>

namespace diffbound {

namespace {

void require_same_arity(int ma, int mb) {
    if (ma != mb) {
        throw DomainError("multi-index arity mismatch: " + std::to_string(ma) + " vs " +
                          std::to_string(mb));
    }
}

}  // namespace

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw DomainError("multi-index needs arity >= 1");
    long long sum = 0;
    for (int e : entries_) {
        if (e < 0) throw DomainError("multi-index entries must be non-negative");
        sum += e;
        if (sum > std::numeric_limits<int>::max()) throw DomainError("multi-index order overflow");
    }
    order_ = static_cast<int>(sum);
}

MultiIndex MultiIndex::zero(int m) {
    if (m < 1) throw DomainError("arity must be >= 1");
    return MultiIndex(std::vector<int>(static_cast<std::size_t>(m), 0));
}

MultiIndex MultiIndex::unit(int m, int k) {
    if (k < 1 || k > m) throw DomainError("unit index out of range");
    std::vector<int> e(static_cast<std::size_t>(m), 0);
    e[static_cast<std::size_t>(k - 1)] = 1;
    return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::plus_unit(int k) const {
    if (k < 1 || k > arity()) throw DomainError("unit index out of range");
    std::vector<int> e = entries_;
    if (e[static_cast<std::size_t>(k - 1)] == std::numeric_limits<int>::max()) {
        throw DomainError("multi-index entry overflow");
    }
    ++e[static_cast<std::size_t>(k - 1)];
    return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
    require_same_arity(arity(), other.arity());
    std::vector<int> e = entries_;
    for (int k = 0; k < arity(); ++k) e[static_cast<std::size_t>(k)] += other[k];
    return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::minus_unit(int k) const {
    if (k < 1 || k > arity()) throw DomainError("unit index out of range");
    std::vector<int> e = entries_;
    if (e[static_cast<std::size_t>(k - 1)] == 0) {
        throw DomainError("multi-index entry underflow");
    }
    --e[static_cast<std::size_t>(k - 1)];
    return MultiIndex(std::move(e));
}

std::size_t MultiIndex::hash() const {
    std::size_t h = std::hash<int>{}(arity());
    for (int e : entries_) hash_combine(h, std::hash<int>{}(e));
    return h;
}

std::string MultiIndex::to_string() const {
    std::string s = "[";
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(entries_[k]);
    }
    s += "]";
    return s;
}

PartialCmp cmp_product(const MultiIndex& a, const MultiIndex& b) {
    require_same_arity(a.arity(), b.arity());
    bool le = true, ge = true;
    for (int k = 0; k < a.arity(); ++k) {
        if (a[k] < b[k]) ge = false;
        if (a[k] > b[k]) le = false;
    }
    if (le && ge) return PartialCmp::Equal;
    if (le) return PartialCmp::Less;
    if (ge) return PartialCmp::Greater;
    return PartialCmp::Incomparable;
}

std::strong_ordering cmp_canonical(const MultiIndex& a, const MultiIndex& b) {
    require_same_arity(a.arity(), b.arity());
    if (auto c = a.order() <=> b.order(); c != 0) return c;
    for (int k = a.arity() - 1; k >= 0; --k) {
        if (auto c = a[k] <=> b[k]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

PartialCmp cmp_product(const IndexedPoint& a, const IndexedPoint& b) {
    if (a.i != b.i) {
        require_same_arity(a.xi.arity(), b.xi.arity());
        return PartialCmp::Incomparable;
    }
    return cmp_product(a.xi, b.xi);
}

std::strong_ordering cmp_canonical(const IndexedPoint& a, const IndexedPoint& b) {
    require_same_arity(a.xi.arity(), b.xi.arity());
    if (auto c = a.xi.order() <=> b.xi.order(); c != 0) return c;
    if (auto c = a.i <=> b.i; c != 0) return c;
    for (int k = a.xi.arity() - 1; k >= 0; --k) {
        if (auto c = a.xi[k] <=> b.xi[k]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

BigInt binomial(const BigInt& n, const BigInt& k) {
    if (n < 0 || k < 0) throw DomainError("binomial arguments must be non-negative");
    if (k > n) return 0;
    BigInt kk = k;
    if (n - k < kk) kk = n - k;
    BigInt result = 1;
    for (BigInt j = 1; j <= kk; ++j) {
        result = result * (n - kk + j) / j;  // exact at every step
    }
    return result;
}

BigInt alpha(int m, const BigInt& ell) {
    if (m < 1) throw DomainError("alpha: m must be >= 1");
    if (ell < 0) throw DomainError("alpha: ell must be >= 0");
    BigInt result = 1;
    for (int k = 1; k <= m; ++k) {
        result = result * (ell + k) / k;
    }
    return result;
}

std::vector<MultiIndex> enumerate_gamma(int m, int ell, std::uint64_t max_elements) {
    if (m < 1) throw DomainError("enumerate_gamma: m must be >= 1");
    if (ell < 0) throw DomainError("enumerate_gamma: ell must be >= 0");
    const BigInt count = alpha(m, ell);
    if (count > max_elements) {
        throw BudgetError(BudgetError::Kind::Enumeration,
                          "enumerate_gamma: " + count.str() + " elements exceed the budget of " +
                              std::to_string(max_elements));
    }
    std::vector<MultiIndex> out;
    out.reserve(count.convert_to<std::size_t>());
    // Ascending canonical order: degree d first, then (xi_m,...,xi_1) lexicographic.
    std::vector<int> cur(static_cast<std::size_t>(m), 0);
    for (int d = 0; d <= ell; ++d) {
        // Enumerate compositions of d in lexicographic order of (xi_m,...,xi_1):
        // recurse from the last entry down.
        std::function<void(int, int)> rec = [&](int pos, int remaining) {
            if (pos == 0) {
                cur[0] = remaining;
                out.emplace_back(cur);
                return;
            }
            for (int v = 0; v <= remaining; ++v) {
                cur[static_cast<std::size_t>(pos)] = v;
                rec(pos - 1, remaining - v);
            }
        };
        rec(m - 1, d);
    }
    return out;
}

}  // namespace diffbound
