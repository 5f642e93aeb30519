#ifndef DIFFBOUND_TESTUTIL_HPP
#define DIFFBOUND_TESTUTIL_HPP

#include <random>
#include <vector>

#include "diffbound/diffpoly.hpp"

namespace diffbound::testutil {

struct PolyGenOptions {
    int m = 1;
    int n_state = 2;
    int n_param = 0;
    int max_tag_order = 2;   // |xi| on state/parameter indeterminates
    int max_terms = 4;
    int max_factors = 3;     // per monomial
    int max_exponent = 2;
    bool with_base = true;
    int coeff_range = 5;     // coefficients in [-range, range], denominators 1..3
};

inline MultiIndex random_tag(std::mt19937_64& rng, int m, int max_order) {
    std::uniform_int_distribution<int> ord(0, max_order);
    int remaining = ord(rng);
    std::vector<int> e(static_cast<std::size_t>(m), 0);
    std::uniform_int_distribution<int> pick(0, m - 1);
    while (remaining-- > 0) e[static_cast<std::size_t>(pick(rng))] += 1;
    return MultiIndex(std::move(e));
}

inline DiffPolynomial random_poly(std::mt19937_64& rng, const PolyGenOptions& opt) {
    std::uniform_int_distribution<int> nterms(0, opt.max_terms);
    std::uniform_int_distribution<int> nfactors(0, opt.max_factors);
    std::uniform_int_distribution<int> exp(1, opt.max_exponent);
    std::uniform_int_distribution<int> num(-opt.coeff_range, opt.coeff_range);
    std::uniform_int_distribution<int> den(1, 3);

    DiffPolynomial p(opt.m);
    const int terms = nterms(rng);
    for (int t = 0; t < terms; ++t) {
        std::vector<std::pair<Indeterminate, int>> factors;
        const int nf = nfactors(rng);
        for (int f = 0; f < nf; ++f) {
            std::vector<int> kinds;
            if (opt.n_state > 0) kinds.push_back(0);
            if (opt.n_param > 0) kinds.push_back(1);
            if (opt.with_base) kinds.push_back(2);
            std::uniform_int_distribution<std::size_t> kpick(0, kinds.size() - 1);
            switch (kinds[kpick(rng)]) {
                case 0: {
                    std::uniform_int_distribution<int> id(1, opt.n_state);
                    factors.emplace_back(
                        Indeterminate::state(id(rng), random_tag(rng, opt.m, opt.max_tag_order)),
                        exp(rng));
                    break;
                }
                case 1: {
                    std::uniform_int_distribution<int> id(1, opt.n_param);
                    factors.emplace_back(
                        Indeterminate::parameter(id(rng),
                                                 random_tag(rng, opt.m, opt.max_tag_order)),
                        exp(rng));
                    break;
                }
                default: {
                    std::uniform_int_distribution<int> id(1, opt.m);
                    factors.emplace_back(Indeterminate::base(id(rng), opt.m), exp(rng));
                    break;
                }
            }
        }
        int c = num(rng);
        if (c == 0) c = 1;
        DiffPolynomial mono = DiffPolynomial::constant(opt.m, Rational(c, den(rng)));
        for (const auto& [u, e] : factors) {
            mono = mono * DiffPolynomial::indeterminate(u).pow(e);
        }
        p = p + mono;
    }
    return p;
}

}  // namespace diffbound::testutil

#endif
