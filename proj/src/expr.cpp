#include "hodge/expr.hpp"

#include <cctype>
#include <functional>
#include <sstream>

namespace hodge {

namespace {

struct Token {
    enum Kind { Number, Ident, Plus, Minus, Star, Slash, LParen, RParen, LBracket, RBracket, Comma, End };
    Kind kind = End;
    std::string text;
    int line = 1;
    int column = 1;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }
    Token take() {
        Token t = current_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            if (text_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
        current_.line = line_;
        current_.column = col_;
        if (pos_ >= text_.size()) {
            current_.kind = Token::End;
            current_.text.clear();
            return;
        }
        char c = text_[pos_];
        auto single = [&](Token::Kind k) {
            current_.kind = k;
            current_.text.assign(1, c);
            ++pos_;
            ++col_;
        };
        switch (c) {
            case '+': return single(Token::Plus);
            case '-': return single(Token::Minus);
            case '*': return single(Token::Star);
            case '/': return single(Token::Slash);
            case '(': return single(Token::LParen);
            case ')': return single(Token::RParen);
            case '[': return single(Token::LBracket);
            case ']': return single(Token::RBracket);
            case ',': return single(Token::Comma);
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
                ++col_;
            }
            current_.kind = Token::Number;
            current_.text = text_.substr(start, pos_ - start);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
                ++col_;
            }
            current_.kind = Token::Ident;
            current_.text = text_.substr(start, pos_ - start);
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token current_;
};

class Parser {
  public:
    explicit Parser(const std::string& text) : lex_(text) {}

    ExprHandle parse() {
        auto expr = parse_expr_node();
        const Token& t = lex_.peek();
        if (t.kind != Token::End) throw ParseError("trailing input after expression", t.line, t.column);
        return expr;
    }

  private:
    [[noreturn]] void fail(const std::string& msg, const Token& t) { throw ParseError(msg, t.line, t.column); }

    Token expect(Token::Kind kind, const char* what) {
        Token t = lex_.take();
        if (t.kind != kind) fail(std::string("expected ") + what, t);
        return t;
    }

    ExprIndex parse_index() {
        Token t = lex_.take();
        if (t.kind == Token::Ident && t.text.size() == 1 && std::islower(static_cast<unsigned char>(t.text[0])))
            return ExprIndex{t.text[0], 0};
        if (t.kind == Token::Number) {
            int v = std::stoi(t.text);
            if (v < 1) fail("concrete index must be >= 1", t);
            return ExprIndex{0, v};
        }
        fail("expected an index (a lowercase letter or a number)", t);
    }

    ExprFactor parse_factor() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Number) {
            Token num = lex_.take();
            Rational value(num.text);
            if (lex_.peek().kind == Token::Slash) {
                lex_.take();
                Token den = expect(Token::Number, "a denominator");
                if (den.text.find_first_not_of('0') == std::string::npos)
                    fail("zero denominator", den);
                value /= Rational(den.text);
            }
            value.canonicalize();
            return ExprFactor{ExprFactor::Literal{GaussianRational(value)}};
        }
        if (t.kind == Token::LParen) {
            lex_.take();
            auto sub = parse_expr_node();
            expect(Token::RParen, "')'");
            return ExprFactor{ExprFactor::Sub{std::move(sub)}};
        }
        if (t.kind != Token::Ident) fail("expected a factor", t);
        Token name = lex_.take();
        if (name.text == "i") return ExprFactor{ExprFactor::Literal{GaussianRational::unit_i()}};
        if (name.text == "Id") return ExprFactor{ExprFactor::IdentityOp{}};
        if (name.text == "Rs") return ExprFactor{ExprFactor::ScalarCurvature{}};
        if (name.text == "Lp" || name.text == "Lm" || name.text == "G") {
            GenName g = name.text == "Lp" ? GenName::Raise
                        : name.text == "Lm" ? GenName::Lower
                                            : GenName::Clifford;
            expect(Token::LParen, "'('");
            ExprIndex idx = parse_index();
            expect(Token::RParen, "')'");
            return ExprFactor{ExprFactor::Generator{g, idx}};
        }
        TensorName tensor;
        std::size_t arity;
        if (name.text == "R") {
            tensor = TensorName::Riemann;
            arity = 4;
        } else if (name.text == "Ric") {
            tensor = TensorName::Ricci;
            arity = 2;
        } else if (name.text == "delta") {
            tensor = TensorName::Delta;
            arity = 2;
        } else if (name.text == "u") {
            tensor = TensorName::FormU;
            arity = 1;
        } else if (name.text == "w") {
            tensor = TensorName::FormW;
            arity = 1;
        } else {
            fail("unknown identifier '" + name.text + "'", name);
        }
        expect(Token::LBracket, "'['");
        std::vector<ExprIndex> indices;
        indices.push_back(parse_index());
        while (lex_.peek().kind == Token::Comma) {
            lex_.take();
            indices.push_back(parse_index());
        }
        Token close = expect(Token::RBracket, "']'");
        if (indices.size() != arity)
            fail("'" + name.text + "' takes " + std::to_string(arity) + " indices, got " +
                     std::to_string(indices.size()),
                 close);
        return ExprFactor{ExprFactor::Tensor{tensor, std::move(indices)}};
    }

    ExprTerm parse_term(int sign, const Token& at) {
        ExprTerm term;
        term.sign = sign;
        term.factors.push_back(parse_factor());
        while (lex_.peek().kind == Token::Star) {
            lex_.take();
            term.factors.push_back(parse_factor());
        }
        validate_term(term, at);
        return term;
    }

    void validate_term(const ExprTerm& term, const Token& at) {
        std::map<char, int> counts;
        for (const ExprFactor& f : term.factors) {
            auto count_index = [&](const ExprIndex& idx) {
                if (!idx.concrete()) ++counts[idx.letter];
            };
            if (const auto* tf = std::get_if<ExprFactor::Tensor>(&f.node))
                for (const ExprIndex& idx : tf->indices) count_index(idx);
            else if (const auto* gf = std::get_if<ExprFactor::Generator>(&f.node))
                count_index(gf->index);
        }
        for (const auto& [letter, count] : counts)
            if (count > 2)
                fail(std::string("index '") + letter + "' appears " + std::to_string(count) +
                         " times in one term; an index may appear once (free) or twice (summed)",
                     at);
    }

    ExprHandle parse_expr_node() {
        auto expr = std::make_shared<EndoExpr>();
        Token first = lex_.peek();
        int sign = 1;
        if (first.kind == Token::Minus) {
            lex_.take();
            sign = -1;
        }
        expr->terms.push_back(parse_term(sign, first));
        while (lex_.peek().kind == Token::Plus || lex_.peek().kind == Token::Minus) {
            Token op = lex_.take();
            expr->terms.push_back(parse_term(op.kind == Token::Plus ? 1 : -1, op));
        }
        // Free letters must agree across terms.
        bool first_term = true;
        for (const ExprTerm& term : expr->terms) {
            std::map<char, int> counts;
            for (const ExprFactor& f : term.factors) {
                auto count_index = [&](const ExprIndex& idx) {
                    if (!idx.concrete()) ++counts[idx.letter];
                };
                if (const auto* tf = std::get_if<ExprFactor::Tensor>(&f.node))
                    for (const ExprIndex& idx : tf->indices) count_index(idx);
                else if (const auto* gf = std::get_if<ExprFactor::Generator>(&f.node))
                    count_index(gf->index);
            }
            std::set<char> free;
            for (const auto& [letter, count] : counts)
                if (count == 1) free.insert(letter);
            if (first_term) {
                expr->free_indices = std::move(free);
                first_term = false;
            } else if (free != expr->free_indices) {
                fail("terms carry different free indices", first);
            }
        }
        return expr;
    }

    Lexer lex_;
};

std::string index_to_string(const ExprIndex& idx) {
    return idx.concrete() ? std::to_string(idx.value) : std::string(1, idx.letter);
}

std::string factor_to_string(const ExprFactor& f) {
    struct Visitor {
        std::string operator()(const ExprFactor::Literal& l) const {
            if (l.value == GaussianRational::unit_i()) return "i";
            if (l.value.is_real() && sgn(l.value.re) >= 0) return l.value.re.get_str();
            return "(" + (l.value.is_real() ? l.value.re.get_str() : l.value.to_string()) + ")";
        }
        std::string operator()(const ExprFactor::Tensor& t) const {
            static const char* names[] = {"R", "Ric", "delta", "u", "w"};
            std::string out = names[static_cast<int>(t.name)];
            out += "[";
            for (std::size_t i = 0; i < t.indices.size(); ++i) {
                if (i) out += ",";
                out += index_to_string(t.indices[i]);
            }
            return out + "]";
        }
        std::string operator()(const ExprFactor::Generator& g) const {
            static const char* names[] = {"Lp", "Lm", "G"};
            return std::string(names[static_cast<int>(g.name)]) + "(" + index_to_string(g.index) + ")";
        }
        std::string operator()(const ExprFactor::IdentityOp&) const { return "Id"; }
        std::string operator()(const ExprFactor::ScalarCurvature&) const { return "Rs"; }
        std::string operator()(const ExprFactor::Sub& s) const { return "(" + print_expr(*s.expr) + ")"; }
    };
    return std::visit(Visitor{}, f.node);
}

}  // namespace

ExprHandle parse_expr(const std::string& text) { return Parser(text).parse(); }

std::string print_expr(const EndoExpr& expr) {
    std::string out;
    for (std::size_t i = 0; i < expr.terms.size(); ++i) {
        const ExprTerm& term = expr.terms[i];
        if (i == 0) {
            if (term.sign < 0) out += "-";
        } else {
            out += term.sign < 0 ? " - " : " + ";
        }
        for (std::size_t j = 0; j < term.factors.size(); ++j) {
            if (j) out += "*";
            out += factor_to_string(term.factors[j]);
        }
    }
    return out;
}

namespace {

int resolve_index(const ExprIndex& idx, const std::map<char, int>& assignment, const EvalContext& ctx) {
    int value;
    if (idx.concrete()) {
        value = idx.value;
    } else {
        auto it = assignment.find(idx.letter);
        if (it == assignment.end())
            throw EvalError(std::string("unresolved free index '") + idx.letter + "'");
        value = it->second;
    }
    if (value < 1 || value > ctx.n)
        throw EvalError("index value " + std::to_string(value) + " outside 1.." + std::to_string(ctx.n));
    return value;
}

GaussianRational tensor_value(const ExprFactor::Tensor& t, const std::map<char, int>& assignment,
                              const EvalContext& ctx) {
    std::vector<int> v(t.indices.size());
    for (std::size_t i = 0; i < t.indices.size(); ++i) v[i] = resolve_index(t.indices[i], assignment, ctx) - 1;
    switch (t.name) {
        case TensorName::Riemann:
            if (!ctx.curvature) throw EvalError("expression references curvature, none provided");
            return GaussianRational(ctx.curvature->riem(v[0], v[1], v[2], v[3]));
        case TensorName::Ricci:
            if (!ctx.curvature) throw EvalError("expression references curvature, none provided");
            return GaussianRational(ctx.curvature->ric(v[0], v[1]));
        case TensorName::Delta:
            return GaussianRational(Rational(v[0] == v[1] ? 1 : 0));
        case TensorName::FormU:
            if (!ctx.u) throw EvalError("expression references u, no one-form provided");
            return GaussianRational(ctx.u->value[v[0]]);
        case TensorName::FormW:
            if (!ctx.w) throw EvalError("expression references w, no one-form provided");
            return GaussianRational(ctx.w->value[v[0]]);
    }
    throw EvalError("unreachable tensor kind");
}

}  // namespace

ExtEndo evaluate_expr(const EndoExpr& expr, const EvalContext& ctx) {
    if (ctx.n < 1) throw EvalError("evaluation context has no dimension");
    for (char letter : expr.free_indices)
        if (!ctx.bindings.count(letter))
            throw EvalError(std::string("unresolved free index '") + letter + "'");

    ExtEndo result(ctx.n);
    for (const ExprTerm& term : expr.terms) {
        // Letters appearing twice in this term are summed.
        std::map<char, int> counts;
        for (const ExprFactor& f : term.factors) {
            auto count_index = [&](const ExprIndex& idx) {
                if (!idx.concrete()) ++counts[idx.letter];
            };
            if (const auto* tf = std::get_if<ExprFactor::Tensor>(&f.node))
                for (const ExprIndex& idx : tf->indices) count_index(idx);
            else if (const auto* gf = std::get_if<ExprFactor::Generator>(&f.node))
                count_index(gf->index);
        }
        std::vector<char> summed;
        for (const auto& [letter, count] : counts)
            if (count == 2) summed.push_back(letter);

        const GeneratorTable& gen = GeneratorTable::get(ctx.n);
        std::map<char, int> assignment = ctx.bindings;
        std::function<void(std::size_t)> recurse = [&](std::size_t pos) {
            if (pos < summed.size()) {
                for (int v = 1; v <= ctx.n; ++v) {
                    assignment[summed[pos]] = v;
                    recurse(pos + 1);
                }
                assignment.erase(summed[pos]);
                return;
            }
            GaussianRational scalar(Rational(term.sign));
            std::vector<const ExtEndo*> matrices;
            std::vector<ExtEndo> owned;
            owned.reserve(term.factors.size());
            for (const ExprFactor& f : term.factors) {
                if (const auto* lit = std::get_if<ExprFactor::Literal>(&f.node)) {
                    scalar *= lit->value;
                } else if (const auto* tf = std::get_if<ExprFactor::Tensor>(&f.node)) {
                    scalar *= tensor_value(*tf, assignment, ctx);
                } else if (const auto* gf = std::get_if<ExprFactor::Generator>(&f.node)) {
                    int v = resolve_index(gf->index, assignment, ctx);
                    switch (gf->name) {
                        case GenName::Raise: matrices.push_back(&gen.raising(v)); break;
                        case GenName::Lower: matrices.push_back(&gen.lowering(v)); break;
                        case GenName::Clifford: matrices.push_back(&gen.clifford(v)); break;
                    }
                } else if (std::get_if<ExprFactor::IdentityOp>(&f.node)) {
                    matrices.push_back(&gen.id());
                } else if (std::get_if<ExprFactor::ScalarCurvature>(&f.node)) {
                    if (!ctx.curvature) throw EvalError("expression references curvature, none provided");
                    scalar *= GaussianRational(ctx.curvature->scalar);
                } else if (const auto* sub = std::get_if<ExprFactor::Sub>(&f.node)) {
                    // Parenthesized subexpressions have their own index scope;
                    // outer bindings remain visible for their free letters.
                    EvalContext inner = ctx;
                    inner.bindings = assignment;
                    owned.push_back(evaluate_expr(*sub->expr, inner));
                    matrices.push_back(&owned.back());
                }
                if (scalar.is_zero()) return;
            }
            ExtEndo product = ExtEndo::scalar(ctx.n, scalar);
            for (const ExtEndo* m : matrices) product = product * *m;
            result += product;
        };
        recurse(0);
    }
    return result;
}

}  // namespace hodge
