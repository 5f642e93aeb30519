#ifndef DIFFBOUND_PROLONG_HPP
#define DIFFBOUND_PROLONG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "diffbound/diffpoly.hpp"

namespace diffbound {

/// One prolongation equation f^xi: the xi-derivative of generator
/// `generator` with every state derivative d^zeta x_j renamed to the
/// coordinate x_j^zeta.  The renamed coordinates are represented by the
/// state indeterminates themselves.
struct ProlongationEquation {
    int generator = 0;  // index into the input generator list
    MultiIndex xi;
    DiffPolynomial poly;
};

struct ProlongationOutput {
    int m = 1;
    int n = 0;
    int ell = 0;
    std::vector<MultiIndex> gamma;                // canonical order
    std::vector<ProlongationEquation> equations;  // generator-major, xi canonical

    /// Coordinate names in canonical order: xi outer, variable id inner.
    std::vector<std::string> coordinate_names() const;
};

/// Checks shared by both prolongation routes: generators of order 0 in the
/// state variables, no parameters, consistent m.
void validate_generators(const std::vector<DiffPolynomial>& generators);

/// f^xi by the direct route: derive d^xi f, then read state derivatives as
/// prolonged coordinates.  n = 0 means "deduce from the generators".
ProlongationOutput prolong_substitution(const std::vector<DiffPolynomial>& generators, int ell,
                                        int n = 0);

/// f^xi by the truncated-exponential route: substitute the factorial-weighted
/// coordinate series into f with Taylor-mapped coefficients, expand modulo
/// eps^(ell+1), and rescale each eps^xi coefficient by xi!.  Emits exactly
/// the same polynomials as prolong_substitution.
ProlongationOutput prolong_epsilon(const std::vector<DiffPolynomial>& generators, int ell,
                                   int n = 0, std::uint64_t max_terms = 10'000'000);

/// The tuple (d^xi applied to the point)_xi in Gamma(ell), xi outer and
/// variable id inner, matching ProlongationOutput coordinates.
std::vector<DiffPolynomial> nabla_point(const std::map<int, DiffPolynomial>& point, int n, int m,
                                        int ell);

/// Total derivative along the system: formal d_k, then every first-order
/// state derivative replaced by its assignment.
DiffPolynomial total_derive(const DiffPolynomial& f, int k, const DiffSystem& system);

/// The commutator conditions D_l(g_kj) - D_k(g_lj) for k < l, normalized to
/// leading coefficient +1; zero conditions dropped.
std::vector<DiffPolynomial> integrability_conditions(const DiffSystem& system);

/// Rewrites every state derivative of order >= 1 through the system until
/// the result has order 0 in the state variables.  The lowering always
/// splits off the smallest derivation index.
DiffPolynomial reduce_modulo_system(const DiffPolynomial& f, const DiffSystem& system);

}  // namespace diffbound

#endif
