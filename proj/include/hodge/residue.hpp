#pragma once

#include <string>
#include <vector>

#include "hodge/rational.hpp"
#include "hodge/symbol.hpp"

namespace hodge {

/// A pointwise residue density q * v_{n-1}. The sphere volume v_{n-1} is a
/// symbolic unit, never evaluated numerically, so the whole pipeline stays in
/// exact arithmetic.
struct ResidueDensity {
    GaussianRational value;      // coefficient of v_{n-1}
    int n = 0;
    bool has_minus_n_part = true;  // false flags "no order -n part was present"

    bool is_real() const { return value.is_real(); }
    std::string to_string() const;

    friend bool operator==(const ResidueDensity& a, const ResidueDensity& b) {
        return a.n == b.n && a.value == b.value;
    }
};

/// Integral of the monomial prod_j xi_j^{e_j} over the unit sphere S^{n-1},
/// as a rational multiple of v_{n-1}: zero for any odd exponent, otherwise
/// prod_j (e_j - 1)!! / prod_{i=1..A} (n + 2i - 2) with A = (sum_j e_j) / 2.
Rational sphere_moment(const std::vector<int>& exponents);

/// Pointwise residue density of a symbol: extracts the homogeneity -n part,
/// sets x = 0, integrates monomial by monomial over the unit sphere and takes
/// the endomorphism trace. Returns a flagged exact zero when no -n part is
/// present.
ResidueDensity wres_density(const GradedSymbol& p);

/// Ingredient of wres_density, exposed for closed-form cross-checks: the
/// sphere integral of the order -n part at x = 0 *before* taking the trace.
ExtEndo sphere_average_minus_n(const GradedSymbol& p);

}  // namespace hodge
