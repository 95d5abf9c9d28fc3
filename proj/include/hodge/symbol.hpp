#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "hodge/curvature.hpp"
#include "hodge/ext_endo.hpp"
#include "hodge/rational.hpp"

namespace hodge {

/// Exponent vector of a monomial in up to 8 variables, one byte per variable.
/// Multiplication of monomials is plain integer addition of the packed words.
using PackedExp = std::uint64_t;

inline int exp_of(PackedExp e, int var) { return static_cast<int>((e >> (8 * var)) & 0xffu); }
inline PackedExp exp_bump(PackedExp e, int var, int delta) {
    return e + (static_cast<PackedExp>(delta) << (8 * var));
}
int total_degree(PackedExp e);

/// A monomial xi^{e_xi} x^{e_x}.
struct Monomial {
    PackedExp xi = 0;
    PackedExp x = 0;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

using PolyMap = std::map<Monomial, ExtEndo>;

/// A pseudodifferential symbol in normal coordinates, stored as a finite sum
/// of parts  m(xi) * x^f * ||xi||^{-2s} * M  grouped by xi-homogeneity
/// h = deg_xi - 2s. Only the three leading homogeneities are retained,
/// anchored at `top_order`, and a part at homogeneity h keeps x-monomials of
/// total degree at most 2 - (top_order - h). Parts outside that budget are
/// dropped deterministically, which is closed under composition.
struct GradedSymbol {
    int n = 0;
    int top_order = 0;
    // homogeneity -> inverse-norm power s -> polynomial with endomorphism coefficients
    std::map<int, std::map<int, PolyMap>> levels;

    int x_budget(int h) const {
        int b = 2 - (top_order - h);
        return b < 0 ? -1 : b;
    }
};

GradedSymbol make_symbol(int n, int top_order);

/// Inserts m(xi) x^f ||xi||^{-2s} M, deriving the homogeneity from the data;
/// silently drops parts outside the retained grading window or x-budget.
void add_term(GradedSymbol& sym, int s, Monomial mono, const ExtEndo& coeff);

GradedSymbol symbol_add(const GradedSymbol& a, const GradedSymbol& b);
GradedSymbol symbol_sub(const GradedSymbol& a, const GradedSymbol& b);
GradedSymbol symbol_scaled(const GradedSymbol& a, const GaussianRational& z);

/// The full composition product sum_alpha (-i)^{|alpha|}/alpha! d_xi^alpha A . d_x^alpha B,
/// truncated to the retained grading of the result. The anchor defaults to
/// top(A) + top(B); `top_override` re-anchors the retained window, used when a
/// leading level is known to cancel (e.g. commutators with scalars).
GradedSymbol compose(const GradedSymbol& a, const GradedSymbol& b);
GradedSymbol compose(const GradedSymbol& a, const GradedSymbol& b, int top_override);

/// Composition restricted to what the residue reads: the homogeneity -n part
/// at x = 0. Identical to the corresponding slice of compose(a, b), but skips
/// every coefficient product that cannot land there.
GradedSymbol compose_density_slice(const GradedSymbol& a, const GradedSymbol& b);

/// Composition keeping only x-degree-0 parts of the result, for left factors
/// that are later consumed by a density slice (whose x = 0 evaluation never
/// reads the dropped parts).
GradedSymbol compose_x_independent(const GradedSymbol& a, const GradedSymbol& b);

/// Exact structural equality after lifting each homogeneity level to a common
/// inverse-norm power (multiplying numerators by ||xi||^2 as needed).
bool symbol_is_zero(const GradedSymbol& a);
bool symbols_equal(const GradedSymbol& a, const GradedSymbol& b);

/// True when no part carries a positive x-degree.
bool symbol_is_x_independent(const GradedSymbol& a);

/// Order-0 symbol holding one constant endomorphism.
GradedSymbol constant_symbol(const ExtEndo& e);
GradedSymbol identity_symbol(int n);

/// Clifford multiplication by a one-form with its first-order jet:
/// gamma^p (u_p + u_{pa} x^a).
GradedSymbol one_form_symbol(const OneFormJet& u, int n);

/// Multiplication operator by the scalar function f0 + fa x^a + fab x^a x^b.
GradedSymbol scalar_jet_symbol(const Rational& f0, const std::vector<Rational>& fa,
                               const std::vector<Rational>& fab, int n);

/// Symbol of the Hodge-Dirac operator at the origin of normal coordinates.
GradedSymbol hodge_dirac_symbol(const CurvaturePoint& curv);

/// Subleading data of an elliptic Laplace-type symbol in normal coordinates:
/// leading level ||xi||^2 + W(x,xi) with W scalar and quadratic in x,
/// first subleading  i P_ab xi_a x^b,  constant part Q.
struct LaplaceTypeData {
    int n = 0;
    PolyMap w;                   // the x^2 correction of the leading level (s = 0)
    std::vector<ExtEndo> p_ab;   // n*n matrices, row-major
    ExtEndo q;
    std::vector<Rational> ricci; // n*n, recovered from W by contraction
};

/// Validates the Laplace-type shape and extracts (W, P, Q, Ricci).
/// Throws std::invalid_argument when the leading symbol is not scalar
/// ||xi||^2 id + O(x^2) or carries unexpected parts.
LaplaceTypeData extract_laplace_data(const GradedSymbol& L);

/// Three-level inverse symbol computed by the residual recursion, with the
/// leading inverse expanded as a Neumann series in the x^2 correction.
GradedSymbol parametrix(const GradedSymbol& L);

/// Closed-form three leading symbols of L^{-k}; independently checkable by
/// composing parametrix(L) k times.
GradedSymbol inverse_power(const GradedSymbol& L, int k);

}  // namespace hodge
