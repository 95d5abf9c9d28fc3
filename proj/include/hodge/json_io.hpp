#pragma once

#include <json.hpp>

#include "hodge/curvature.hpp"
#include "hodge/functionals.hpp"
#include "hodge/residue.hpp"
#include "hodge/symbol.hpp"

namespace hodge {

using Json = nlohmann::json;

Json density_to_json(const ResidueDensity& d);
Json report_to_json(const FunctionalReport& r);

/// {n, riemann: nested arrays of "p/q" rational strings}
Json curvature_to_json(const CurvaturePoint& cp);
/// Validates shape and all symmetry invariants; throws std::invalid_argument.
CurvaturePoint curvature_from_json(const Json& j);

/// Debug dump of a symbol: part list with degrees, monomials and sparse
/// matrix entries.
Json symbol_to_json(const GradedSymbol& sym);

}  // namespace hodge
