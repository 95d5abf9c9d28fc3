#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hodge/expr.hpp"
#include "hodge/lambda_words.hpp"

using namespace hodge;

namespace {

ExtEndo eval(const std::string& text, const EvalContext& ctx) {
    return evaluate_expr(*parse_expr(text), ctx);
}

EvalContext ctx_for(const CurvaturePoint& curv) {
    EvalContext ctx;
    ctx.n = curv.n;
    ctx.curvature = &curv;
    return ctx;
}

}  // namespace

TEST_CASE("parses the basic shapes") {
    CHECK_NOTHROW(parse_expr("Ric[p,q]*Lp(p)*Lm(q)"));
    CHECK_NOTHROW(parse_expr(
        "R[s,q,r,p]*Lp(p)*Lm(q)*Lp(r)*Lm(s) + R[s,r,q,p]*Lp(p)*Lm(q)*Lp(r)*Lm(s)"));
    CHECK_NOTHROW(parse_expr("Ric[p,q]*G(p)*G(q) - (1/2)*Rs*Id"));
    CHECK_NOTHROW(parse_expr("i*G(1)*G(2)"));
    CHECK_NOTHROW(parse_expr("-3/2*Id + u[a]*w[a]*Id"));
}

TEST_CASE("diagnostics carry positions") {
    try {
        parse_expr("Ric[p,q]*Lp(p)*Lm(q) +\n  Foo[a]");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.column == 3);
        CHECK(std::string(e.what()).find("unknown identifier") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_expr("Ric[p]*Id"), ParseError);            // arity
    CHECK_THROWS_AS(parse_expr("u[p]*w[p]*Lp(p)"), ParseError);      // index used 3 times
    CHECK_THROWS_AS(parse_expr("delta[a,b]*Id + Rs*Id"), ParseError);  // mismatched free sets
    CHECK_THROWS_AS(parse_expr("2*"), ParseError);
    CHECK_THROWS_AS(parse_expr("(Id"), ParseError);
}

TEST_CASE("printing is a parser fixed point") {
    for (const char* text :
         {"Ric[p,q]*Lp(p)*Lm(q)", "Ric[p,q]*G(p)*G(q) - (1/2)*Rs*Id",
          "R[s,q,r,p]*Lp(p)*Lm(q)*Lp(r)*Lm(s) + R[s,r,q,p]*Lp(p)*Lm(q)*Lp(r)*Lm(s)",
          "-2/3*Id + i*G(1)*G(2)", "delta[a,b]*u[a]*w[b]*Id", "R[a,p,b,q]*G(p)*G(q)"}) {
        std::string once = print_expr(*parse_expr(text));
        std::string twice = print_expr(*parse_expr(once));
        CHECK(once == twice);
    }
}

TEST_CASE("identity and number operator evaluate to the frozen traces") {
    CurvaturePoint curv = flat_curvature(4);
    EvalContext ctx = ctx_for(curv);
    CHECK(eval("Id", ctx).trace() == GaussianRational(Rational(16)));
    // number operator: trace n 2^{n-1}
    CHECK(eval("Lp(p)*Lm(p)", ctx).trace() == GaussianRational(Rational(4 * 8)));
}

TEST_CASE("curvature contraction reproduces the trace identity") {
    for (int n : {4, 6}) {
        CurvaturePoint curv = sample_curvature(n, 5, 3);
        EvalContext ctx = ctx_for(curv);
        CHECK(eval("Ric[p,q]*Lp(p)*Lm(q)", ctx).trace() ==
              GaussianRational(pow2(n - 1) * curv.scalar));
    }
}

TEST_CASE("evaluation is linear over sum nodes") {
    CurvaturePoint curv = sample_curvature(4, 9, 3);
    EvalContext ctx = ctx_for(curv);
    ExtEndo sum = eval("Ric[p,q]*Lp(p)*Lm(q) - 2*Rs*Id", ctx);
    ExtEndo first = eval("Ric[p,q]*Lp(p)*Lm(q)", ctx);
    ExtEndo second = eval("2*Rs*Id", ctx);
    CHECK(sum == first - second);
}

TEST_CASE("alpha equivalence") {
    CurvaturePoint curv = sample_curvature(4, 11, 3);
    EvalContext ctx = ctx_for(curv);
    CHECK(eval("Ric[p,q]*Lp(p)*Lm(q)", ctx) == eval("Ric[x,y]*Lp(x)*Lm(y)", ctx));
}

TEST_CASE("free indices require bindings") {
    CurvaturePoint curv = sample_curvature(4, 13, 2);
    EvalContext ctx = ctx_for(curv);
    auto expr = parse_expr("Ric[a,b]*Id");
    CHECK(expr->free_indices == std::set<char>{'a', 'b'});
    CHECK_THROWS_AS(evaluate_expr(*expr, ctx), EvalError);
    ctx.bindings = {{'a', 2}, {'b', 3}};
    ExtEndo e = evaluate_expr(*expr, ctx);
    CHECK(e.entry(0, 0) == GaussianRational(curv.ric(1, 2)));
}

TEST_CASE("concrete numeric indices") {
    CurvaturePoint curv = sample_curvature(4, 17, 2);
    EvalContext ctx = ctx_for(curv);
    const GeneratorTable& gen = GeneratorTable::get(4);
    CHECK(eval("G(1)", ctx) == gen.clifford(1));
    CHECK(eval("Ric[1,2]*Id", ctx) ==
          ExtEndo::scalar(4, GaussianRational(curv.ric(0, 1))));
}

TEST_CASE("one-form references") {
    CurvaturePoint curv = sample_curvature(4, 19, 2);
    EvalContext ctx = ctx_for(curv);
    CHECK_THROWS_AS(eval("u[a]*G(a)", ctx), EvalError);
    OneFormJet u = OneFormJet::constant({Rational(1), Rational(2), Rational(0), rat(-1, 2)});
    ctx.u = &u;
    const GeneratorTable& gen = GeneratorTable::get(4);
    ExtEndo expected(4);
    for (int p = 0; p < 4; ++p)
        if (sgn(u.value[p]) != 0)
            expected += gen.clifford(p + 1).scaled(GaussianRational(u.value[p]));
    CHECK(eval("u[a]*G(a)", ctx) == expected);
}

TEST_CASE("matrix factors multiply in written order") {
    CurvaturePoint curv = flat_curvature(4);
    EvalContext ctx = ctx_for(curv);
    const GeneratorTable& gen = GeneratorTable::get(4);
    CHECK(eval("Lp(1)*Lm(1)", ctx) == gen.raising(1) * gen.lowering(1));
    CHECK(eval("Lm(1)*Lp(1)", ctx) == gen.lowering(1) * gen.raising(1));
    CHECK(eval("Lp(1)*Lm(1)", ctx) + eval("Lm(1)*Lp(1)", ctx) == ExtEndo::identity(4));
}
