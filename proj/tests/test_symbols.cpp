#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hodge/curvature.hpp"
#include "hodge/symbol.hpp"

using namespace hodge;

namespace {

Monomial xi1(int a) { return Monomial{exp_bump(0, a, 1), 0}; }
Monomial xi1x1(int a, int b) { return Monomial{exp_bump(0, a, 1), exp_bump(0, b, 1)}; }
Monomial xi2(int a, int b) { return Monomial{exp_bump(exp_bump(0, a, 1), b, 1), 0}; }
Monomial x1(int a) { return Monomial{0, exp_bump(0, a, 1)}; }
Monomial xi2x2(int a, int b, int c, int d) {
    return Monomial{exp_bump(exp_bump(0, a, 1), b, 1), exp_bump(exp_bump(0, c, 1), d, 1)};
}

/// The three homogeneous symbols of the Dirac square, transcribed term by term.
GradedSymbol expected_dirac_square(const CurvaturePoint& curv) {
    const int n = curv.n;
    const GeneratorTable& gen = GeneratorTable::get(n);
    GradedSymbol out = make_symbol(n, 2);

    // (delta_ab + 1/3 R_acbd x^c x^d) xi_a xi_b
    for (int a = 0; a < n; ++a) add_term(out, 0, xi2(a, a), ExtEndo::identity(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    const Rational& r = curv.riem(a, c, b, d);
                    if (sgn(r) != 0)
                        add_term(out, 0, xi2x2(a, b, c, d), ExtEndo::scalar(n, GaussianRational(r / 3)));
                }

    // (2/3) i Ric_ab xi_a x^b - (2/3) i lambda_+^p lambda_-^r (R_rpab + R_rapb) x^b xi_a
    const GaussianRational i23(Rational(0), rat(2, 3));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            ExtEndo coeff = ExtEndo::scalar(n, GaussianRational(curv.ric(a, b)));
            for (int p = 0; p < n; ++p)
                for (int r = 0; r < n; ++r) {
                    Rational c = curv.riem(r, p, a, b) + curv.riem(r, a, p, b);
                    if (sgn(c) == 0) continue;
                    coeff -= (gen.raising(p + 1) * gen.lowering(r + 1)).scaled(GaussianRational(c));
                }
            add_term(out, 0, xi1x1(a, b), coeff.scaled(i23));
        }

    // (2/3) lambda_+^p lambda_-^r Ric_pr
    //   + (1/3) lambda_+^p lambda_+^r lambda_-^s lambda_-^t (R_tsrp + R_trsp)
    ExtEndo order0(n);
    for (int p = 0; p < n; ++p)
        for (int r = 0; r < n; ++r)
            if (sgn(curv.ric(p, r)) != 0)
                order0 += (gen.raising(p + 1) * gen.lowering(r + 1))
                              .scaled(GaussianRational(Rational(2) * curv.ric(p, r) / 3));
    for (int p = 0; p < n; ++p)
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s)
                for (int t = 0; t < n; ++t) {
                    Rational c = curv.riem(t, s, r, p) + curv.riem(t, r, s, p);
                    if (sgn(c) == 0) continue;
                    order0 += (gen.raising(p + 1) * gen.raising(r + 1) * gen.lowering(s + 1) *
                               gen.lowering(t + 1))
                                  .scaled(GaussianRational(c / 3));
                }
    add_term(out, 0, Monomial{}, order0);
    return out;
}

/// Printed parametrix levels for a Laplace-type symbol with data (W, P, Q).
GradedSymbol expected_parametrix(const CurvaturePoint& curv, const GradedSymbol& dirac_sq) {
    const int n = curv.n;
    LaplaceTypeData data = extract_laplace_data(dirac_sq);
    GradedSymbol out = make_symbol(n, -2);
    // ||xi||^{-4} (delta_ab - 1/3 R_acbd x^c x^d) xi_a xi_b
    for (int a = 0; a < n; ++a) add_term(out, 2, xi2(a, a), ExtEndo::identity(n));
    for (const auto& [mono, coeff] : data.w) add_term(out, 2, mono, coeff.scaled(GaussianRational(rat(-1, 1))));
    // -i ||xi||^{-4} P_ab xi_a x^b
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            add_term(out, 2, xi1x1(a, b), data.p_ab[a * n + b].scaled(GaussianRational(Rational(0), Rational(-1))));
    // -||xi||^{-4} Q + 2 ||xi||^{-6} (P_ab - 1/3 Ric_ab) xi_a xi_b
    add_term(out, 2, Monomial{}, data.q.scaled(GaussianRational(Rational(-1))));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            ExtEndo coeff = data.p_ab[a * n + b];
            coeff -= ExtEndo::scalar(n, GaussianRational(data.ricci[a * n + b] / 3));
            add_term(out, 3, xi2(a, b), coeff.scaled(GaussianRational(Rational(2))));
        }
    return out;
}

}  // namespace

TEST_CASE("flat Dirac symbol is the constant Clifford contraction") {
    CurvaturePoint flat = flat_curvature(4);
    GradedSymbol d = hodge_dirac_symbol(flat);
    CHECK(symbol_is_x_independent(d));
    GradedSymbol expected = make_symbol(4, 1);
    const GeneratorTable& gen = GeneratorTable::get(4);
    for (int p = 0; p < 4; ++p)
        add_term(expected, 0, xi1(p), gen.clifford(p + 1).scaled(GaussianRational(Rational(-1))));
    CHECK(symbols_equal(d, expected));
}

TEST_CASE("squaring the Dirac symbol reproduces the transcribed homogeneous symbols") {
    for (std::uint64_t seed : {1, 2, 5}) {
        CurvaturePoint curv = sample_curvature(4, seed, 3);
        GradedSymbol d = hodge_dirac_symbol(curv);
        GradedSymbol sq = compose(d, d);
        CHECK(sq.top_order == 2);
        CHECK(symbols_equal(sq, expected_dirac_square(curv)));
    }
    CurvaturePoint curv6 = sample_curvature(6, 11, 2);
    GradedSymbol d6 = hodge_dirac_symbol(curv6);
    CHECK(symbols_equal(compose(d6, d6), expected_dirac_square(curv6)));
}

TEST_CASE("grading law of composition") {
    CurvaturePoint curv = sample_curvature(4, 4, 2);
    GradedSymbol d = hodge_dirac_symbol(curv);
    GradedSymbol sq = compose(d, d);
    CHECK(sq.top_order == d.top_order * 2);
    for (const auto& [h, buckets] : sq.levels) {
        CHECK(h <= sq.top_order);
        CHECK(h >= sq.top_order - 2);
        for (const auto& [s, poly] : buckets)
            for (const auto& [mono, coeff] : poly) {
                CHECK(total_degree(mono.xi) - 2 * s == h);
                CHECK(total_degree(mono.x) <= sq.x_budget(h));
            }
    }
}

TEST_CASE("composition with a constant factor is the plain product") {
    CurvaturePoint curv = sample_curvature(4, 9, 2);
    GradedSymbol d = hodge_dirac_symbol(curv);
    const GeneratorTable& gen = GeneratorTable::get(4);
    ExtEndo t = gen.clifford(1) * gen.clifford(3) + ExtEndo::scalar(4, GaussianRational(rat(5, 2)));
    GradedSymbol left = compose(constant_symbol(t), d);

    GradedSymbol expected = make_symbol(4, 1);
    for (const auto& [h, buckets] : d.levels)
        for (const auto& [s, poly] : buckets)
            for (const auto& [mono, coeff] : poly) add_term(expected, s, mono, t * coeff);
    CHECK(symbols_equal(left, expected));
}

TEST_CASE("flat parametrix is the inverse norm square") {
    CurvaturePoint flat = flat_curvature(4);
    GradedSymbol sq = compose(hodge_dirac_symbol(flat), hodge_dirac_symbol(flat));
    GradedSymbol inv = parametrix(sq);
    GradedSymbol expected = make_symbol(4, -2);
    add_term(expected, 1, Monomial{}, ExtEndo::identity(4));
    CHECK(symbols_equal(inv, expected));
}

TEST_CASE("parametrix matches the transcribed inverse levels") {
    for (std::uint64_t seed : {3, 8}) {
        CurvaturePoint curv = sample_curvature(4, seed, 3);
        GradedSymbol sq = compose(hodge_dirac_symbol(curv), hodge_dirac_symbol(curv));
        CHECK(symbols_equal(parametrix(sq), expected_parametrix(curv, sq)));
    }
}

TEST_CASE("composing with the parametrix gives the identity symbol") {
    CurvaturePoint curv = sample_curvature(4, 21, 3);
    GradedSymbol sq = compose(hodge_dirac_symbol(curv), hodge_dirac_symbol(curv));
    GradedSymbol inv = parametrix(sq);
    GradedSymbol prod = compose(sq, inv);
    CHECK(symbols_equal(prod, identity_symbol(4)));
}

TEST_CASE("extracted smooth data matches the curvature point") {
    CurvaturePoint curv = sample_curvature(4, 33, 3);
    GradedSymbol sq = compose(hodge_dirac_symbol(curv), hodge_dirac_symbol(curv));
    LaplaceTypeData data = extract_laplace_data(sq);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK(data.ricci[a * 4 + b] == curv.ric(a, b));
}

TEST_CASE("closed-form inverse powers match iterated parametrix composition") {
    for (std::uint64_t seed : {1, 6}) {
        CurvaturePoint curv = sample_curvature(4, seed, 3);
        GradedSymbol sq = compose(hodge_dirac_symbol(curv), hodge_dirac_symbol(curv));
        GradedSymbol first = parametrix(sq);
        CHECK(symbols_equal(inverse_power(sq, 1), first));
        GradedSymbol iterated = first;
        for (int k = 2; k <= 3; ++k) {
            iterated = compose(iterated, first);
            CHECK(symbols_equal(inverse_power(sq, k), iterated));
        }
    }
}

TEST_CASE("inverse powers invert iterated composition within the retained grading") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        CurvaturePoint curv = sample_curvature(4, 40 + seed, 3);
        GradedSymbol sq = compose(hodge_dirac_symbol(curv), hodge_dirac_symbol(curv));
        GradedSymbol power = sq;
        for (int k = 1; k <= 3; ++k) {
            if (k > 1) power = compose(power, sq);
            CHECK(symbols_equal(compose(inverse_power(sq, k), power), identity_symbol(4)));
        }
    }
}

TEST_CASE("inverse power rejects bad input") {
    CurvaturePoint curv = sample_curvature(4, 1, 1);
    GradedSymbol sq = compose(hodge_dirac_symbol(curv), hodge_dirac_symbol(curv));
    CHECK_THROWS_AS(inverse_power(sq, 0), std::invalid_argument);
    CHECK_THROWS_AS(parametrix(hodge_dirac_symbol(curv)), std::invalid_argument);
}

TEST_CASE("flat pipeline stays x-independent") {
    CurvaturePoint flat = flat_curvature(4);
    GradedSymbol d = hodge_dirac_symbol(flat);
    GradedSymbol sq = compose(d, d);
    GradedSymbol inv = inverse_power(sq, 2);
    CHECK(symbol_is_x_independent(d));
    CHECK(symbol_is_x_independent(sq));
    CHECK(symbol_is_x_independent(inv));
}

TEST_CASE("one-form symbols") {
    const int n = 4;
    const GeneratorTable& gen = GeneratorTable::get(n);
    OneFormJet dx1 = OneFormJet::constant({Rational(1), Rational(0), Rational(0), Rational(0)});
    CHECK(symbols_equal(one_form_symbol(dx1, n), constant_symbol(gen.clifford(1))));

    OneFormJet jet_only;
    jet_only.value.assign(n, Rational(0));
    jet_only.jet.assign(n * n, Rational(0));
    jet_only.jet[0 * n + 2] = Rational(5);  // w_{1,3} x^3 gamma^1
    GradedSymbol expected = make_symbol(n, 0);
    add_term(expected, 0, x1(2), gen.clifford(1).scaled(GaussianRational(Rational(5))));
    CHECK(symbols_equal(one_form_symbol(jet_only, n), expected));

    // product of constant images: gamma^p gamma^r u_p w_r
    OneFormJet u = OneFormJet::constant({rat(1, 2), Rational(3), Rational(0), Rational(-1)});
    OneFormJet w = OneFormJet::constant({Rational(2), Rational(0), rat(-1, 3), Rational(1)});
    GradedSymbol prod = compose(one_form_symbol(u, n), one_form_symbol(w, n));
    ExtEndo direct(n);
    for (int p = 0; p < n; ++p)
        for (int r = 0; r < n; ++r) {
            Rational c = u.value[p] * w.value[r];
            if (sgn(c) != 0)
                direct += (gen.clifford(p + 1) * gen.clifford(r + 1)).scaled(GaussianRational(c));
        }
    CHECK(symbols_equal(prod, constant_symbol(direct)));
}
