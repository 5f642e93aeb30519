#include "diffbound/prolong.hpp"

#include <algorithm>

namespace diffbound {

namespace {

int deduce_n(const std::vector<DiffPolynomial>& generators, int n) {
    int need = 0;
    for (const auto& g : generators) need = std::max(need, g.max_state_id());
    if (n == 0) return need;
    if (n < need) {
        throw DomainError("n = " + std::to_string(n) + " but a generator mentions x" +
                          std::to_string(need));
    }
    return n;
}

struct CanonicalLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        return cmp_canonical(a, b) < 0;
    }
};

/// Polynomial coefficients of a truncated power series in eps_1..eps_m.
class EpsSeries {
public:
    EpsSeries(int m, int ell) : m_(m), ell_(ell) {}

    static EpsSeries scalar(int m, int ell, DiffPolynomial value) {
        EpsSeries s(m, ell);
        s.set(MultiIndex::zero(m), std::move(value));
        return s;
    }

    void set(const MultiIndex& zeta, DiffPolynomial value) {
        if (!value.is_zero()) coeffs_.insert_or_assign(zeta, std::move(value));
    }

    void add(const MultiIndex& zeta, const DiffPolynomial& value) {
        auto it = coeffs_.find(zeta);
        if (it == coeffs_.end()) {
            if (!value.is_zero()) coeffs_.emplace(zeta, value);
        } else {
            it->second = it->second + value;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }

    EpsSeries operator*(const EpsSeries& other) const {
        EpsSeries out(m_, ell_);
        for (const auto& [za, pa] : coeffs_) {
            for (const auto& [zb, pb] : other.coeffs_) {
                if (za.order() + zb.order() > ell_) continue;
                out.add(za + zb, pa * pb);
            }
        }
        return out;
    }

    EpsSeries operator+(const EpsSeries& other) const {
        EpsSeries out = *this;
        for (const auto& [z, p] : other.coeffs_) out.add(z, p);
        return out;
    }

    EpsSeries pow(int e) const {
        EpsSeries result = scalar(m_, ell_, DiffPolynomial::constant(m_, 1));
        EpsSeries base = *this;
        while (e > 0) {
            if (e & 1) result = result * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return result;
    }

    DiffPolynomial coefficient(const MultiIndex& zeta) const {
        auto it = coeffs_.find(zeta);
        return it == coeffs_.end() ? DiffPolynomial(m_) : it->second;
    }

    std::uint64_t term_count() const {
        std::uint64_t total = 0;
        for (const auto& [z, p] : coeffs_) total += p.term_count();
        return total;
    }

private:
    int m_;
    int ell_;
    std::map<MultiIndex, DiffPolynomial, CanonicalLess> coeffs_;
};

Rational factorial_of_tag(const MultiIndex& xi) {
    BigInt f = 1;
    for (int k = 0; k < xi.arity(); ++k) {
        for (int v = 2; v <= xi[k]; ++v) f *= v;
    }
    return Rational(f);
}

}  // namespace

void validate_generators(const std::vector<DiffPolynomial>& generators) {
    if (generators.empty()) throw DomainError("no generators given");
    const int m = generators.front().m();
    for (const auto& g : generators) {
        if (g.m() != m) throw DomainError("generators mix different m");
        if (g.order_in_state() > 0) {
            throw DomainError("generators must have order 0 in the state variables");
        }
        if (g.has_parameter()) {
            throw DomainError("generators must not contain parameters");
        }
    }
}

std::vector<std::string> ProlongationOutput::coordinate_names() const {
    std::vector<std::string> names;
    names.reserve(gamma.size() * static_cast<std::size_t>(n));
    for (const auto& xi : gamma) {
        for (int j = 1; j <= n; ++j) {
            names.push_back(Indeterminate::state(j, xi).to_string());
        }
    }
    return names;
}

ProlongationOutput prolong_substitution(const std::vector<DiffPolynomial>& generators, int ell,
                                        int n) {
    validate_generators(generators);
    if (ell < 0) throw DomainError("ell must be >= 0");
    const int m = generators.front().m();

    ProlongationOutput out;
    out.m = m;
    out.n = deduce_n(generators, n);
    out.ell = ell;
    out.gamma = enumerate_gamma(m, ell);
    out.equations.reserve(generators.size() * out.gamma.size());
    for (std::size_t g = 0; g < generators.size(); ++g) {
        for (const auto& xi : out.gamma) {
            out.equations.push_back(
                {static_cast<int>(g), xi, generators[g].derive_multi(xi)});
        }
    }
    return out;
}

ProlongationOutput prolong_epsilon(const std::vector<DiffPolynomial>& generators, int ell, int n,
                                   std::uint64_t max_terms) {
    validate_generators(generators);
    if (ell < 0) throw DomainError("ell must be >= 0");
    const int m = generators.front().m();

    ProlongationOutput out;
    out.m = m;
    out.n = deduce_n(generators, n);
    out.ell = ell;
    out.gamma = enumerate_gamma(m, ell);

    // Coordinate series: e(x_j) = sum over zeta of (1/zeta!) x_j^zeta eps^zeta.
    std::map<int, EpsSeries> coord_series;
    for (int j = 1; j <= out.n; ++j) {
        EpsSeries s(m, ell);
        for (const auto& zeta : out.gamma) {
            s.set(zeta, DiffPolynomial::indeterminate(Indeterminate::state(j, zeta)) *
                            (Rational(1) / factorial_of_tag(zeta)));
        }
        coord_series.emplace(j, std::move(s));
    }
    // e(t_k) = t_k + eps_k.
    auto base_series = [&](int k) {
        EpsSeries s(m, ell);
        s.set(MultiIndex::zero(m), DiffPolynomial::indeterminate(Indeterminate::base(k, m)));
        if (ell >= 1) s.set(MultiIndex::unit(m, k), DiffPolynomial::constant(m, 1));
        return s;
    };

    out.equations.reserve(generators.size() * out.gamma.size());
    for (std::size_t g = 0; g < generators.size(); ++g) {
        EpsSeries image(m, ell);
        for (const auto& [mono, coeff] : generators[g].terms()) {
            EpsSeries term = EpsSeries::scalar(m, ell, DiffPolynomial::constant(m, coeff));
            for (const auto& [u, e] : mono.factors()) {
                switch (u.kind()) {
                    case VarKind::State:
                        term = term * coord_series.at(u.id()).pow(e);
                        break;
                    case VarKind::Base:
                        term = term * base_series(u.id()).pow(e);
                        break;
                    case VarKind::Parameter:
                        throw DomainError("generators must not contain parameters");
                }
                if (term.term_count() > max_terms) {
                    throw BudgetError(BudgetError::Kind::Enumeration,
                                      "epsilon expansion exceeded " + std::to_string(max_terms) +
                                          " terms");
                }
            }
            image = image + term;
        }
        for (const auto& xi : out.gamma) {
            out.equations.push_back(
                {static_cast<int>(g), xi, image.coefficient(xi) * factorial_of_tag(xi)});
        }
    }
    return out;
}

std::vector<DiffPolynomial> nabla_point(const std::map<int, DiffPolynomial>& point, int n, int m,
                                        int ell) {
    if (n < 1) throw DomainError("nabla needs n >= 1");
    if (ell < 0) throw DomainError("ell must be >= 0");
    for (const auto& [j, p] : point) {
        if (j < 1 || j > n) throw DomainError("point assigns x" + std::to_string(j) +
                                              " outside 1..n");
        if (p.m() != m) throw DomainError("point arity mismatch");
        if (p.has_state() || p.has_parameter()) {
            throw DomainError("point assignments must be polynomials in t only");
        }
    }
    std::vector<DiffPolynomial> out;
    const auto gamma = enumerate_gamma(m, ell);
    out.reserve(gamma.size() * static_cast<std::size_t>(n));
    for (const auto& xi : gamma) {
        for (int j = 1; j <= n; ++j) {
            auto it = point.find(j);
            if (it == point.end()) {
                throw DomainError("point does not assign x" + std::to_string(j));
            }
            out.push_back(it->second.derive_multi(xi));
        }
    }
    return out;
}

DiffPolynomial total_derive(const DiffPolynomial& f, int k, const DiffSystem& system) {
    if (f.m() != system.m()) throw DomainError("total_derive arity mismatch");
    DiffPolynomial d = f.derive(k);
    std::map<Indeterminate, DiffPolynomial> sub;
    for (const auto& [mono, c] : d.terms()) {
        for (const auto& [u, e] : mono.factors()) {
            if (u.kind() != VarKind::State || u.xi().order() == 0) continue;
            if (u.xi().order() > 1) {
                throw DomainError("total_derive expects an order-0 input");
            }
            int deriv = 0;
            for (int i = 1; i <= system.m(); ++i) {
                if (u.xi()[i - 1] == 1) deriv = i;
            }
            if (u.id() > system.n()) {
                throw DomainError("state variable x" + std::to_string(u.id()) +
                                  " outside the system");
            }
            sub.emplace(u, system.rhs(deriv, u.id()));
        }
    }
    return d.substitute(sub);
}

std::vector<DiffPolynomial> integrability_conditions(const DiffSystem& system) {
    std::vector<DiffPolynomial> out;
    for (int k = 1; k <= system.m(); ++k) {
        for (int l = k + 1; l <= system.m(); ++l) {
            for (int j = 1; j <= system.n(); ++j) {
                DiffPolynomial c =
                    total_derive(system.rhs(k, j), l, system) -
                    total_derive(system.rhs(l, j), k, system);
                if (!c.is_zero()) out.push_back(c.monic());
            }
        }
    }
    return out;
}

DiffPolynomial reduce_modulo_system(const DiffPolynomial& f, const DiffSystem& system) {
    if (f.m() != system.m()) throw DomainError("reduce arity mismatch");
    DiffPolynomial cur = f;
    for (;;) {
        // Largest positive-order state derivative present, for determinism.
        const Indeterminate* target = nullptr;
        for (const auto& [mono, c] : cur.terms()) {
            for (const auto& [u, e] : mono.factors()) {
                if (u.kind() == VarKind::State && u.xi().order() >= 1) {
                    if (!target || *target < u) target = &u;
                }
            }
        }
        if (!target) return cur;
        if (target->id() > system.n()) {
            throw DomainError("state variable x" + std::to_string(target->id()) +
                              " outside the system");
        }
        int k = 0;
        for (int i = 1; i <= system.m(); ++i) {
            if (target->xi()[i - 1] > 0) {
                k = i;
                break;
            }
        }
        const MultiIndex zeta = target->xi().minus_unit(k);
        DiffPolynomial repl = system.rhs(k, target->id());
        for (int i = 1; i <= system.m(); ++i) {
            for (int rep = 0; rep < zeta[i - 1]; ++rep) repl = total_derive(repl, i, system);
        }
        std::map<Indeterminate, DiffPolynomial> sub;
        sub.emplace(*target, repl);
        cur = cur.substitute(sub);
    }
}

}  // namespace diffbound
