#ifndef DIFFBOUND_DIFFPOLY_HPP
#define DIFFBOUND_DIFFPOLY_HPP

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "diffbound/bigint.hpp"
#include "diffbound/errors.hpp"
#include "diffbound/multiindex.hpp"

namespace diffbound {

enum class VarKind : int { Base = 0, Parameter = 1, State = 2 };

/// One algebraic indeterminate: a state variable derivative d^xi x_id, a
/// parameter derivative d^xi a_id, or a base variable t_id (zero tag).
class Indeterminate {
public:
    static Indeterminate state(int id, MultiIndex xi);
    static Indeterminate parameter(int id, MultiIndex xi);
    static Indeterminate base(int id, int m);

    VarKind kind() const { return kind_; }
    int id() const { return id_; }
    const MultiIndex& xi() const { return xi_; }
    int m() const { return xi_.arity(); }

    Indeterminate derived(int k) const;  // tag + unit(k); base variables have none

    std::strong_ordering operator<=>(const Indeterminate& other) const;
    bool operator==(const Indeterminate& other) const;
    bool operator<(const Indeterminate& other) const { return (*this <=> other) < 0; }

    std::size_t hash() const;
    std::string to_string() const;  // grammar spelling, e.g. "x1_[2,1]"

private:
    Indeterminate(VarKind kind, int id, MultiIndex xi);
    VarKind kind_;
    int id_;
    MultiIndex xi_;
};

/// Product of indeterminate powers; factors sorted descending, exponents >= 1.
class Monomial {
public:
    Monomial() = default;  // the empty (constant) monomial
    explicit Monomial(std::vector<std::pair<Indeterminate, int>> factors);

    const std::vector<std::pair<Indeterminate, int>>& factors() const { return factors_; }
    int total_degree() const { return degree_; }
    bool empty() const { return factors_.empty(); }

    Monomial operator*(const Monomial& other) const;

    bool operator==(const Monomial& other) const { return factors_ == other.factors_; }

private:
    std::vector<std::pair<Indeterminate, int>> factors_;  // descending, canonical
    int degree_ = 0;
};

/// Graded order: total degree, then exponent vectors lexicographically over
/// the descending indeterminate order.
std::strong_ordering compare_monomials(const Monomial& a, const Monomial& b);

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return compare_monomials(a, b) < 0;
    }
};

/// Sparse differential polynomial over Q with m commuting derivations.
/// Immutable value semantics; no zero coefficients stored.
class DiffPolynomial {
public:
    using TermMap = std::map<Monomial, Rational, MonomialLess>;

    explicit DiffPolynomial(int m);  // zero polynomial
    static DiffPolynomial constant(int m, Rational c);
    static DiffPolynomial indeterminate(const Indeterminate& u);

    int m() const { return m_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    DiffPolynomial operator+(const DiffPolynomial& other) const;
    DiffPolynomial operator-(const DiffPolynomial& other) const;
    DiffPolynomial operator-() const;
    DiffPolynomial operator*(const DiffPolynomial& other) const;
    DiffPolynomial operator*(const Rational& c) const;
    DiffPolynomial pow(int e) const;
    bool operator==(const DiffPolynomial& other) const;
    bool operator!=(const DiffPolynomial& other) const { return !(*this == other); }

    /// Formal derivation d_k (k 1-based): Leibniz over products, tags shift
    /// by unit(k), d_k(t_j) = [j == k], d_k(constant) = 0.
    DiffPolynomial derive(int k) const;
    /// d^xi: d_1 applied xi_1 times, then d_2, ..., then d_m.
    DiffPolynomial derive_multi(const MultiIndex& xi) const;

    /// Simultaneous substitution; indeterminates absent from the mapping stay
    /// themselves.  Result fully expanded and normalized.
    DiffPolynomial substitute(const std::map<Indeterminate, DiffPolynomial>& mapping) const;

    /// Resolves every state indeterminate d^xi x_j as the xi-th partial
    /// derivative of point.at(j), a polynomial in the base variables.
    /// Parameters present -> DomainError; missing assignment -> DomainError.
    DiffPolynomial evaluate_point(const std::map<int, DiffPolynomial>& point) const;

    /// Max |xi| over state indeterminates (0 for none).
    int order_in_state() const;
    bool has_parameter() const;
    bool has_state() const;
    int max_state_id() const;
    int max_parameter_id() const;

    const Rational& leading_coefficient() const;  // largest term; poly must be nonzero
    DiffPolynomial monic() const;                 // leading coefficient +1

    std::string to_string() const;  // module grammar, canonical term order

private:
    int m_;
    TermMap terms_;

    void add_term(const Monomial& mono, const Rational& coeff);
    void require_same_m(const DiffPolynomial& other) const;
};

DiffPolynomial operator*(const Rational& c, const DiffPolynomial& p);

/// First-order system d_k x_j = g[k][j] with every right-hand side of order
/// zero in the state variables (parameters and base variables allowed).
class DiffSystem {
public:
    DiffSystem(int m, int n, std::vector<DiffPolynomial> assignments);  // (k-1)*n + (j-1)

    int m() const { return m_; }
    int n() const { return n_; }
    const DiffPolynomial& rhs(int k, int j) const;  // 1-based

private:
    int m_;
    int n_;
    std::vector<DiffPolynomial> assignments_;
};

}  // namespace diffbound

#endif
