#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hodge/curvature.hpp"
#include "hodge/residue.hpp"
#include "hodge/symbol.hpp"

namespace hodge {

/// One verified identity: the pipeline value against the closed form.
/// `match` is exact equality of the rationals. Reports for matrix-level
/// identities carry no densities; `kind` tells the printers apart.
struct FunctionalReport {
    enum class Kind { Density, Identity };
    std::string name;
    ResidueDensity lhs;
    ResidueDensity rhs;
    bool match = false;
    std::uint64_t curvature_seed = 0;
    std::string inputs;
    Kind kind = Kind::Density;
};

/// Per-curvature working set: the Dirac symbol, its square and cached
/// inverse powers. Built once per trial; not shared across threads while the
/// cache is warm.
class SpectralSetup {
  public:
    explicit SpectralSetup(CurvaturePoint curv);

    int dimension() const { return curv_.n; }
    const CurvaturePoint& curvature() const { return curv_; }
    const GradedSymbol& dirac() const { return dirac_; }
    const GradedSymbol& dirac_squared() const { return dirac_squared_; }
    /// Closed-form symbol of D^{-2k}.
    const GradedSymbol& inverse_power_of_square(int k);

  private:
    CurvaturePoint curv_;
    GradedSymbol dirac_;
    GradedSymbol dirac_squared_;
    std::map<int, GradedSymbol> inv_cache_;
};

/// Scalar + pair decomposition in the Clifford product basis:
/// E = scalar * id + sum_{p<q} pair_{pq} gamma^p gamma^q.
struct GammaDecomposition {
    int n = 0;
    GaussianRational scalar;
    std::vector<GaussianRational> pair;  // n*n, entries used for p < q
};

/// Decomposition E = scalar * id + sum_{p,q} coeff_{pq} lambda_+^p lambda_-^q,
/// which is unique when it exists.
struct LambdaDecomposition {
    int n = 0;
    GaussianRational scalar;
    std::vector<GaussianRational> coeff;  // n*n
    GaussianRational coeff_trace() const;
};

std::optional<GammaDecomposition> decompose_gamma(const ExtEndo& e, int n);
std::optional<LambdaDecomposition> decompose_lambda(const ExtEndo& e, int n);

enum class EndoVariant { GammaForm, LambdaForm };

/// Metric functional: density of  u w |D|^{-n}  against  2^n v_{n-1} u_p w_p.
FunctionalReport metric_functional(const OneFormJet& u, const OneFormJet& w, SpectralSetup& setup);

/// Einstein functional: density of  u {D, w} D |D|^{-n}  computed two ways
/// (direct composition, and the split u D w D + u w D^2), both against
/// (2^n/6) v_{n-1} G_{pq} u_p w_q. u is constant by contract; w carries its
/// first-order jet.
std::vector<FunctionalReport> einstein_functional(const std::vector<Rational>& u, const OneFormJet& w,
                                                  SpectralSetup& setup);

/// The two canceling curvature contributions inside the Einstein functional
/// for constant one-forms, reported separately plus their vanishing sum.
std::vector<FunctionalReport> cancellation_check(const std::vector<Rational>& u,
                                                 const std::vector<Rational>& w, SpectralSetup& setup);

/// Density of  E D^{-2m+2}  against the curvature-scalar closed form for an
/// endomorphism decomposed in the gamma or lambda basis. Throws
/// std::invalid_argument when E admits no such decomposition.
FunctionalReport endo_functional(const ExtEndo& e, EndoVariant variant, SpectralSetup& setup);

/// Density of  P D^{-2m}  for an order-2 symbol with constant coefficients
/// sigma(P) = F^{ab} xi_a xi_b + G^a xi_a + H, against the closed form of the
/// chosen variant. Also cross-checks the sphere average of the order -n
/// symbol against its closed matrix form (reported separately).
std::vector<FunctionalReport> p_functional(const std::vector<ExtEndo>& f, const std::vector<ExtEndo>& g,
                                           const ExtEndo& h, EndoVariant variant, SpectralSetup& setup);

/// Spectral closedness: density of  T D |D|^{-n}  for a zero-order T;
/// expected exactly zero.
FunctionalReport closedness(const GradedSymbol& t, SpectralSetup& setup);

/// Commutator [D, b] of the Dirac symbol with a multiplication operator,
/// re-anchored as the order-0 symbol it genuinely is.
GradedSymbol dirac_commutator_with_scalar(const GradedSymbol& dirac, const GradedSymbol& scalar_op);

/// Random zero-order operator from the algebra generated by a [D, b]:
/// a composition product of scalar-function factors and Dirac commutators,
/// optionally mixed with constant Clifford polynomials.
GradedSymbol random_zero_order_symbol(SpectralSetup& setup, std::mt19937_64& rng);

}  // namespace hodge
