#include "diffbound/diffpoly.hpp"

#include <algorithm>
#include <functional>

namespace diffbound {

Indeterminate::Indeterminate(VarKind kind, int id, MultiIndex xi)
    : kind_(kind), id_(id), xi_(std::move(xi)) {}

Indeterminate Indeterminate::state(int id, MultiIndex xi) {
    if (id < 1) throw DomainError("state variable ids start at 1");
    return Indeterminate(VarKind::State, id, std::move(xi));
}

Indeterminate Indeterminate::parameter(int id, MultiIndex xi) {
    if (id < 1) throw DomainError("parameter ids start at 1");
    return Indeterminate(VarKind::Parameter, id, std::move(xi));
}

Indeterminate Indeterminate::base(int id, int m) {
    if (id < 1 || id > m) {
        throw DomainError("base variable t" + std::to_string(id) + " out of range (m = " +
                          std::to_string(m) + ")");
    }
    return Indeterminate(VarKind::Base, id, MultiIndex::zero(m));
}

Indeterminate Indeterminate::derived(int k) const {
    if (kind_ == VarKind::Base) throw DomainError("base variables carry no derivative tag");
    return Indeterminate(kind_, id_, xi_.plus_unit(k));
}

std::strong_ordering Indeterminate::operator<=>(const Indeterminate& other) const {
    if (auto c = static_cast<int>(kind_) <=> static_cast<int>(other.kind_); c != 0) return c;
    if (auto c = id_ <=> other.id_; c != 0) return c;
    return cmp_canonical(xi_, other.xi_);
}

bool Indeterminate::operator==(const Indeterminate& other) const {
    return kind_ == other.kind_ && id_ == other.id_ && xi_ == other.xi_;
}

std::size_t Indeterminate::hash() const {
    std::size_t h = std::hash<int>{}(static_cast<int>(kind_));
    hash_combine(h, std::hash<int>{}(id_));
    hash_combine(h, xi_.hash());
    return h;
}

std::string Indeterminate::to_string() const {
    std::string name;
    switch (kind_) {
        case VarKind::State: name = "x"; break;
        case VarKind::Parameter: name = "a"; break;
        case VarKind::Base: name = "t"; break;
    }
    name += std::to_string(id_);
    if (kind_ != VarKind::Base && !xi_.is_zero()) {
        name += "_[";
        for (int k = 0; k < xi_.arity(); ++k) {
            if (k) name += ",";
            name += std::to_string(xi_[k]);
        }
        name += "]";
    }
    return name;
}

Monomial::Monomial(std::vector<std::pair<Indeterminate, int>> factors)
    : factors_(std::move(factors)) {
    std::sort(factors_.begin(), factors_.end(),
              [](const auto& a, const auto& b) { return b.first < a.first; });
    // merge equal indeterminates, drop zero exponents
    std::vector<std::pair<Indeterminate, int>> merged;
    for (auto& f : factors_) {
        if (f.second < 0) throw DomainError("monomial exponents must be non-negative");
        if (f.second == 0) continue;
        if (!merged.empty() && merged.back().first == f.first) {
            merged.back().second += f.second;
        } else {
            merged.push_back(f);
        }
    }
    factors_ = std::move(merged);
    degree_ = 0;
    for (const auto& f : factors_) degree_ += f.second;
}

Monomial Monomial::operator*(const Monomial& other) const {
    std::vector<std::pair<Indeterminate, int>> out;
    out.reserve(factors_.size() + other.factors_.size());
    std::size_t i = 0, j = 0;
    while (i < factors_.size() && j < other.factors_.size()) {
        auto c = factors_[i].first <=> other.factors_[j].first;
        if (c == 0) {
            out.emplace_back(factors_[i].first, factors_[i].second + other.factors_[j].second);
            ++i, ++j;
        } else if (c > 0) {
            out.push_back(factors_[i++]);
        } else {
            out.push_back(other.factors_[j++]);
        }
    }
    while (i < factors_.size()) out.push_back(factors_[i++]);
    while (j < other.factors_.size()) out.push_back(other.factors_[j++]);
    Monomial result;
    result.factors_ = std::move(out);
    result.degree_ = degree_ + other.degree_;
    return result;
}

std::strong_ordering compare_monomials(const Monomial& a, const Monomial& b) {
    if (auto c = a.total_degree() <=> b.total_degree(); c != 0) return c;
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    for (std::size_t k = 0; k < fa.size() && k < fb.size(); ++k) {
        auto c = fa[k].first <=> fb[k].first;
        if (c != 0) return c;  // the larger indeterminate has a positive exponent only on one side
        if (auto e = fa[k].second <=> fb[k].second; e != 0) return e;
    }
    return fa.size() <=> fb.size();
}

DiffPolynomial::DiffPolynomial(int m) : m_(m) {
    if (m < 1) throw DomainError("polynomial arity m must be >= 1");
}

DiffPolynomial DiffPolynomial::constant(int m, Rational c) {
    DiffPolynomial p(m);
    if (c != 0) p.terms_.emplace(Monomial(), std::move(c));
    return p;
}

DiffPolynomial DiffPolynomial::indeterminate(const Indeterminate& u) {
    DiffPolynomial p(u.m());
    p.terms_.emplace(Monomial({{u, 1}}), Rational(1));
    return p;
}

void DiffPolynomial::require_same_m(const DiffPolynomial& other) const {
    if (m_ != other.m_) {
        throw DomainError("mixing polynomials with m = " + std::to_string(m_) + " and m = " +
                          std::to_string(other.m_));
    }
}

void DiffPolynomial::add_term(const Monomial& mono, const Rational& coeff) {
    if (coeff == 0) return;
    auto it = terms_.find(mono);
    if (it == terms_.end()) {
        terms_.emplace(mono, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

DiffPolynomial DiffPolynomial::operator+(const DiffPolynomial& other) const {
    require_same_m(other);
    DiffPolynomial out = *this;
    for (const auto& [mono, c] : other.terms_) out.add_term(mono, c);
    return out;
}

DiffPolynomial DiffPolynomial::operator-(const DiffPolynomial& other) const {
    require_same_m(other);
    DiffPolynomial out = *this;
    for (const auto& [mono, c] : other.terms_) out.add_term(mono, -c);
    return out;
}

DiffPolynomial DiffPolynomial::operator-() const {
    DiffPolynomial out(m_);
    for (const auto& [mono, c] : terms_) out.terms_.emplace(mono, -c);
    return out;
}

DiffPolynomial DiffPolynomial::operator*(const DiffPolynomial& other) const {
    require_same_m(other);
    DiffPolynomial out(m_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : other.terms_) {
            out.add_term(ma * mb, ca * cb);
        }
    }
    return out;
}

DiffPolynomial DiffPolynomial::operator*(const Rational& c) const {
    DiffPolynomial out(m_);
    if (c == 0) return out;
    for (const auto& [mono, coeff] : terms_) out.terms_.emplace(mono, coeff * c);
    return out;
}

DiffPolynomial operator*(const Rational& c, const DiffPolynomial& p) { return p * c; }

DiffPolynomial DiffPolynomial::pow(int e) const {
    if (e < 0) throw DomainError("polynomial exponent must be non-negative");
    DiffPolynomial result = constant(m_, 1);
    DiffPolynomial base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

bool DiffPolynomial::operator==(const DiffPolynomial& other) const {
    return m_ == other.m_ && terms_ == other.terms_;
}

DiffPolynomial DiffPolynomial::derive(int k) const {
    if (k < 1 || k > m_) throw DomainError("derivation index out of range");
    DiffPolynomial out(m_);
    for (const auto& [mono, coeff] : terms_) {
        const auto& factors = mono.factors();
        for (std::size_t pos = 0; pos < factors.size(); ++pos) {
            const auto& [u, e] = factors[pos];
            // d(u^e) = e * u^(e-1) * d(u), times the remaining factors
            Rational c = coeff * e;
            std::vector<std::pair<Indeterminate, int>> rest;
            rest.reserve(factors.size());
            for (std::size_t q = 0; q < factors.size(); ++q) {
                if (q == pos) {
                    if (e > 1) rest.emplace_back(u, e - 1);
                } else {
                    rest.push_back(factors[q]);
                }
            }
            if (u.kind() == VarKind::Base) {
                if (u.id() != k) continue;  // d_k t_j = 0 for j != k
                out.add_term(Monomial(std::move(rest)), c);
            } else {
                rest.emplace_back(u.derived(k), 1);
                out.add_term(Monomial(std::move(rest)), c);
            }
        }
    }
    return out;
}

DiffPolynomial DiffPolynomial::derive_multi(const MultiIndex& xi) const {
    if (xi.arity() != m_) throw DomainError("derivative tag arity mismatch");
    DiffPolynomial out = *this;
    for (int k = 1; k <= m_; ++k) {
        for (int rep = 0; rep < xi[k - 1]; ++rep) out = out.derive(k);
    }
    return out;
}

DiffPolynomial DiffPolynomial::substitute(
    const std::map<Indeterminate, DiffPolynomial>& mapping) const {
    DiffPolynomial out(m_);
    for (const auto& [mono, coeff] : terms_) {
        DiffPolynomial term = constant(m_, coeff);
        for (const auto& [u, e] : mono.factors()) {
            auto it = mapping.find(u);
            if (it == mapping.end()) {
                term = term * indeterminate(u).pow(e);
            } else {
                require_same_m(it->second);
                term = term * it->second.pow(e);
            }
        }
        out = out + term;
    }
    return out;
}

DiffPolynomial DiffPolynomial::evaluate_point(const std::map<int, DiffPolynomial>& point) const {
    DiffPolynomial out(m_);
    for (const auto& [mono, coeff] : terms_) {
        DiffPolynomial term = constant(m_, coeff);
        for (const auto& [u, e] : mono.factors()) {
            switch (u.kind()) {
                case VarKind::Base:
                    term = term * indeterminate(u).pow(e);
                    break;
                case VarKind::Parameter:
                    throw DomainError("unresolved parameter " + u.to_string() +
                                      " in point evaluation");
                case VarKind::State: {
                    auto it = point.find(u.id());
                    if (it == point.end()) {
                        throw DomainError("point does not assign x" + std::to_string(u.id()));
                    }
                    if (it->second.has_state() || it->second.has_parameter()) {
                        throw DomainError("point assignments must be polynomials in t only");
                    }
                    require_same_m(it->second);
                    term = term * it->second.derive_multi(u.xi()).pow(e);
                    break;
                }
            }
        }
        out = out + term;
    }
    return out;
}

int DiffPolynomial::order_in_state() const {
    int best = 0;
    for (const auto& [mono, c] : terms_) {
        for (const auto& [u, e] : mono.factors()) {
            if (u.kind() == VarKind::State) best = std::max(best, u.xi().order());
        }
    }
    return best;
}

bool DiffPolynomial::has_parameter() const {
    for (const auto& [mono, c] : terms_) {
        for (const auto& [u, e] : mono.factors()) {
            if (u.kind() == VarKind::Parameter) return true;
        }
    }
    return false;
}

bool DiffPolynomial::has_state() const {
    for (const auto& [mono, c] : terms_) {
        for (const auto& [u, e] : mono.factors()) {
            if (u.kind() == VarKind::State) return true;
        }
    }
    return false;
}

int DiffPolynomial::max_state_id() const {
    int best = 0;
    for (const auto& [mono, c] : terms_) {
        for (const auto& [u, e] : mono.factors()) {
            if (u.kind() == VarKind::State) best = std::max(best, u.id());
        }
    }
    return best;
}

int DiffPolynomial::max_parameter_id() const {
    int best = 0;
    for (const auto& [mono, c] : terms_) {
        for (const auto& [u, e] : mono.factors()) {
            if (u.kind() == VarKind::Parameter) best = std::max(best, u.id());
        }
    }
    return best;
}

const Rational& DiffPolynomial::leading_coefficient() const {
    if (terms_.empty()) throw DomainError("zero polynomial has no leading coefficient");
    return terms_.rbegin()->second;
}

DiffPolynomial DiffPolynomial::monic() const {
    if (terms_.empty()) return *this;
    const Rational lc = leading_coefficient();
    DiffPolynomial out(m_);
    for (const auto& [mono, c] : terms_) out.terms_.emplace(mono, c / lc);
    return out;
}

namespace {

std::string rational_to_string(const Rational& r) {
    std::string s = boost::multiprecision::numerator(r).str();
    if (boost::multiprecision::denominator(r) != 1) {
        s += "/" + boost::multiprecision::denominator(r).str();
    }
    return s;
}

std::string monomial_to_string(const Monomial& mono) {
    // Factors are stored descending for comparisons; print ascending.
    std::string s;
    const auto& fs = mono.factors();
    for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
        if (!s.empty()) s += "*";
        s += it->first.to_string();
        if (it->second > 1) s += "^" + std::to_string(it->second);
    }
    return s;
}

}  // namespace

std::string DiffPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    // Terms descending: iterate the map backwards.
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Monomial& mono = it->first;
        const Rational& coeff = it->second;
        const bool negative = coeff < 0;
        const Rational mag = negative ? Rational(-coeff) : coeff;
        std::string body;
        if (mono.empty()) {
            body = rational_to_string(mag);
        } else if (mag == 1) {
            body = monomial_to_string(mono);
        } else {
            body = rational_to_string(mag) + "*" + monomial_to_string(mono);
        }
        if (first) {
            // No unary minus in the grammar: fold the sign into the rational.
            if (negative) {
                out += (mono.empty() || mag != 1) ? "-" + body
                                                  : "-1*" + monomial_to_string(mono);
            } else {
                out += body;
            }
            first = false;
        } else {
            out += negative ? " - " : " + ";
            out += body;
        }
    }
    return out;
}

DiffSystem::DiffSystem(int m, int n, std::vector<DiffPolynomial> assignments)
    : m_(m), n_(n), assignments_(std::move(assignments)) {
    if (m < 1 || n < 1) throw DomainError("system needs m >= 1 and n >= 1");
    if (assignments_.size() != static_cast<std::size_t>(m) * static_cast<std::size_t>(n)) {
        throw DomainError("system needs one assignment per (derivation, variable) pair");
    }
    for (const auto& g : assignments_) {
        if (g.m() != m) throw DomainError("system right-hand side arity mismatch");
        if (g.order_in_state() > 0) {
            throw DomainError("system right-hand sides must have order 0 in the state variables");
        }
    }
}

const DiffPolynomial& DiffSystem::rhs(int k, int j) const {
    if (k < 1 || k > m_ || j < 1 || j > n_) throw DomainError("system index out of range");
    return assignments_[static_cast<std::size_t>(k - 1) * n_ + (j - 1)];
}

}  // namespace diffbound
