#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hodge/rational.hpp"

namespace hodge {

/// Algebraic curvature data at a point in normal coordinates (metric = delta,
/// all indices down), together with the derived Ricci, scalar and Einstein
/// tensors. Indices are 0-based internally.
struct CurvaturePoint {
    int n = 0;
    std::vector<Rational> riemann;   // n^4, entry(a,b,c,d)
    std::vector<Rational> ricci;     // n^2
    Rational scalar{0};
    std::vector<Rational> einstein;  // n^2

    const Rational& riem(int a, int b, int c, int d) const {
        return riemann[((a * n + b) * n + c) * n + d];
    }
    const Rational& ric(int a, int b) const { return ricci[a * n + b]; }
    const Rational& ein(int a, int b) const { return einstein[a * n + b]; }
    bool is_flat() const;
};

/// One-form data at the point: values u_p and the first-order Taylor
/// coefficients u_{pa} of its coefficients in normal coordinates.
struct OneFormJet {
    std::vector<Rational> value;  // n entries
    std::vector<Rational> jet;    // n*n entries, jet[p*n + a] = u_{pa}; empty means zero

    static OneFormJet constant(std::vector<Rational> v) { return {std::move(v), {}}; }
    const Rational& jet_at(int p, int a) const;
};

/// Throws std::invalid_argument unless the rank-4 array satisfies both
/// antisymmetries, the pair symmetry and the first Bianchi identity.
void require_curvature_symmetries(const std::vector<Rational>& riemann, int n);

std::vector<Rational> ricci_of(const std::vector<Rational>& riemann, int n);
Rational scalar_of(const std::vector<Rational>& ricci, int n);
std::vector<Rational> einstein_of(const std::vector<Rational>& ricci, const Rational& scalar, int n);

/// Validates the symmetries and derives Ricci/scalar/Einstein.
CurvaturePoint make_curvature(int n, std::vector<Rational> riemann);

/// Random algebraic curvature tensor: a sum of `terms` Kulkarni-Nomizu
/// products of symmetric integer matrices with entries in [-5, 5]. All four
/// symmetry invariants hold by construction and are re-asserted. terms = 0
/// gives the flat point. Throws when n is odd or < 2.
CurvaturePoint sample_curvature(int n, std::uint64_t seed, int terms);

/// Cross-check generator: projects a random pair-symmetric, bi-antisymmetric
/// tensor onto the kernel of the Bianchi symmetrization.
CurvaturePoint sample_curvature_bianchi(int n, std::uint64_t seed, int terms);

CurvaturePoint flat_curvature(int n);
/// Kulkarni-Nomizu square of the identity: R_{abcd} = 2(d_ac d_bd - d_ad d_bc).
CurvaturePoint space_form_curvature(int n);

OneFormJet sample_one_form(int n, std::mt19937_64& rng, bool with_jet);

}  // namespace hodge
