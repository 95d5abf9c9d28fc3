#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hodge/curvature.hpp"
#include "hodge/ext_endo.hpp"

namespace hodge {

/// Parse failure with a 1-based source position.
struct ParseError : std::runtime_error {
    ParseError(std::string msg, int line, int column)
        : std::runtime_error(std::move(msg)), line(line), column(column) {}
    int line;
    int column;
};

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A tensor index: either a summation letter or a concrete 1-based value.
struct ExprIndex {
    char letter = 0;  // 0 means concrete
    int value = 0;
    bool concrete() const { return letter == 0; }
    friend bool operator==(const ExprIndex&, const ExprIndex&) = default;
};

enum class TensorName { Riemann, Ricci, Delta, FormU, FormW };
enum class GenName { Raise, Lower, Clifford };

struct EndoExpr;
using ExprHandle = std::shared_ptr<const EndoExpr>;

/// One multiplicative factor. Index letters do not propagate across a
/// parenthesized subexpression; it evaluates in its own scope.
struct ExprFactor {
    struct Literal {
        GaussianRational value;
        friend bool operator==(const Literal&, const Literal&) = default;
    };
    struct Tensor {
        TensorName name;
        std::vector<ExprIndex> indices;
        friend bool operator==(const Tensor&, const Tensor&) = default;
    };
    struct Generator {
        GenName name;
        ExprIndex index;
        friend bool operator==(const Generator&, const Generator&) = default;
    };
    struct IdentityOp {
        friend bool operator==(const IdentityOp&, const IdentityOp&) = default;
    };
    struct ScalarCurvature {
        friend bool operator==(const ScalarCurvature&, const ScalarCurvature&) = default;
    };
    struct Sub {
        ExprHandle expr;
    };
    std::variant<Literal, Tensor, Generator, IdentityOp, ScalarCurvature, Sub> node;
};

struct ExprTerm {
    int sign = 1;
    std::vector<ExprFactor> factors;
};

/// Parsed index-contracted expression: a signed sum of factor products with
/// Einstein summation over letters repeated twice within a term.
struct EndoExpr {
    std::vector<ExprTerm> terms;
    /// Letters appearing exactly once per term (identical across terms).
    std::set<char> free_indices;
};

/// Parses the expression language
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := literal | tensor '[' idx {',' idx} ']' | gen '(' idx ')' | 'Id' | 'Rs' | 'i' | '(' expr ')'
/// with tensors R[4], Ric[2], delta[2], u[1], w[1], generators Lp, Lm, G, and
/// indices that are single lowercase letters or concrete 1-based numbers.
/// Throws ParseError with a 1-based line/column on malformed input.
ExprHandle parse_expr(const std::string& text);

/// Canonical printing; parsing the output reproduces the same canonical form.
std::string print_expr(const EndoExpr& expr);

struct EvalContext {
    int n = 0;
    const CurvaturePoint* curvature = nullptr;
    const OneFormJet* u = nullptr;
    const OneFormJet* w = nullptr;
    std::map<char, int> bindings;  // 1-based values for free letters
};

/// Sums repeated letters over 1..n and multiplies matrix factors left to
/// right. Throws EvalError for unresolved free indices or missing inputs.
ExtEndo evaluate_expr(const EndoExpr& expr, const EvalContext& ctx);

}  // namespace hodge
