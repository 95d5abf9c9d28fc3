#include "hodge/functionals.hpp"

#include <sstream>
#include <stdexcept>

namespace hodge {

namespace {

std::string fmt_vec(const std::vector<Rational>& v) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i].get_str();
    }
    os << "]";
    return os.str();
}

ResidueDensity closed_form_density(GaussianRational value, int n) {
    ResidueDensity d;
    d.value = std::move(value);
    d.n = n;
    d.has_minus_n_part = true;
    return d;
}

FunctionalReport make_report(std::string name, ResidueDensity lhs, ResidueDensity rhs,
                             std::string inputs) {
    FunctionalReport r;
    r.name = std::move(name);
    r.match = (lhs.value == rhs.value);
    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
    r.inputs = std::move(inputs);
    return r;
}

void require_functional_dimension(int n) {
    if (n < 4)
        throw std::invalid_argument(
            "spectral functionals need even dimension >= 4: the (n-2) prefactors "
            "annihilate every curvature term at n = 2");
    if (n % 2 != 0) throw std::invalid_argument("dimension must be even");
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational acc(0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

}  // namespace

SpectralSetup::SpectralSetup(CurvaturePoint curv)
    : curv_(std::move(curv)),
      dirac_(hodge_dirac_symbol(curv_)),
      dirac_squared_(compose(dirac_, dirac_)) {}

const GradedSymbol& SpectralSetup::inverse_power_of_square(int k) {
    auto it = inv_cache_.find(k);
    if (it == inv_cache_.end()) it = inv_cache_.emplace(k, inverse_power(dirac_squared_, k)).first;
    return it->second;
}

GaussianRational LambdaDecomposition::coeff_trace() const {
    GaussianRational acc;
    for (int p = 0; p < n; ++p) acc += coeff[p * n + p];
    return acc;
}

std::optional<GammaDecomposition> decompose_gamma(const ExtEndo& e, int n) {
    const GeneratorTable& gen = GeneratorTable::get(n);
    const Rational two_n = pow2(n);
    GammaDecomposition dec;
    dec.n = n;
    dec.scalar = e.trace();
    dec.scalar.re /= two_n;
    dec.scalar.im /= two_n;
    dec.pair.assign(static_cast<std::size_t>(n) * n, GaussianRational{});

    ExtEndo rebuilt = ExtEndo::scalar(n, dec.scalar);
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            ExtEndo gg = gen.clifford(p + 1) * gen.clifford(q + 1);
            GaussianRational c = (gg * e).trace();
            c = GaussianRational(-c.re / two_n, -c.im / two_n);
            dec.pair[p * n + q] = c;
            if (!c.is_zero()) rebuilt += gg.scaled(c);
        }
    if (!(rebuilt == e)) return std::nullopt;
    return dec;
}

std::optional<LambdaDecomposition> decompose_lambda(const ExtEndo& e, int n) {
    if (n < 3) return std::nullopt;  // the linear solve below needs 2n - 4 != 0
    const GeneratorTable& gen = GeneratorTable::get(n);
    const Rational scale = pow2(n - 2);

    auto normalized_trace = [&](const ExtEndo& m) {
        GaussianRational t = m.trace();
        return GaussianRational(t.re / scale, t.im / scale);
    };

    // Tr(E) and the diagonal pair traces determine the scalar part:
    //   Tr E / 2^{n-2} = 4 e0 + 2 S,   sum_a Tr(l+^a l-^a E) / 2^{n-2} = 2n e0 + (n+1) S.
    GaussianRational t0 = normalized_trace(e);
    GaussianRational d_sum;
    std::vector<GaussianRational> d(n);
    for (int a = 0; a < n; ++a) {
        d[a] = normalized_trace(gen.raising(a + 1) * gen.lowering(a + 1) * e);
        d_sum += d[a];
    }
    const Rational quarter = rat(1, 4);
    GaussianRational e0 = (GaussianRational(Rational(n + 1)) * t0 - GaussianRational(Rational(2)) * d_sum);
    e0 = GaussianRational(e0.re * quarter, e0.im * quarter);
    GaussianRational s_total = t0 - GaussianRational(Rational(4)) * e0;
    s_total = GaussianRational(s_total.re / 2, s_total.im / 2);

    LambdaDecomposition dec;
    dec.n = n;
    dec.scalar = e0;
    dec.coeff.assign(static_cast<std::size_t>(n) * n, GaussianRational{});
    for (int a = 0; a < n; ++a)
        dec.coeff[a * n + a] = d[a] - GaussianRational(Rational(2)) * e0 - s_total;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            // Tr(l+^a l-^b E) / 2^{n-2} = coeff_{ba} for a != b.
            dec.coeff[b * n + a] = normalized_trace(gen.raising(a + 1) * gen.lowering(b + 1) * e);
        }

    ExtEndo rebuilt = ExtEndo::scalar(n, dec.scalar);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            if (!dec.coeff[p * n + q].is_zero())
                rebuilt += (gen.raising(p + 1) * gen.lowering(q + 1)).scaled(dec.coeff[p * n + q]);
    if (!(rebuilt == e)) return std::nullopt;
    return dec;
}

FunctionalReport metric_functional(const OneFormJet& u, const OneFormJet& w, SpectralSetup& setup) {
    const int n = setup.dimension();
    require_functional_dimension(n);
    if (static_cast<int>(u.value.size()) != n || static_cast<int>(w.value.size()) != n)
        throw std::invalid_argument("one-form dimension does not match the curvature point");
    const GradedSymbol& inv = setup.inverse_power_of_square(n / 2);
    GradedSymbol pipeline =
        compose_density_slice(compose(one_form_symbol(u, n), one_form_symbol(w, n)), inv);
    ResidueDensity lhs = wres_density(pipeline);
    ResidueDensity rhs = closed_form_density(GaussianRational(pow2(n) * dot(u.value, w.value)), n);
    return make_report("metric", std::move(lhs), std::move(rhs),
                       "u=" + fmt_vec(u.value) + " w=" + fmt_vec(w.value));
}

std::vector<FunctionalReport> einstein_functional(const std::vector<Rational>& u, const OneFormJet& w,
                                                  SpectralSetup& setup) {
    const int n = setup.dimension();
    require_functional_dimension(n);
    if (static_cast<int>(u.size()) != n || static_cast<int>(w.value.size()) != n)
        throw std::invalid_argument("one-form dimension does not match the curvature point");
    const CurvaturePoint& curv = setup.curvature();
    const int m = n / 2;
    const GradedSymbol& inv_m = setup.inverse_power_of_square(m);
    const GradedSymbol& inv_m1 = setup.inverse_power_of_square(m - 1);
    GradedSymbol u_hat = one_form_symbol(OneFormJet::constant(u), n);
    GradedSymbol w_hat = one_form_symbol(w, n);
    const GradedSymbol& dirac = setup.dirac();

    // (a) direct: u {D, w} D |D|^{-n}
    GradedSymbol anti = symbol_add(compose(dirac, w_hat), compose(w_hat, dirac));
    GradedSymbol direct_factor = compose_x_independent(compose(u_hat, anti), dirac);
    ResidueDensity lhs_direct = wres_density(compose_density_slice(direct_factor, inv_m));

    // (b) split: u D w D against D^{-2m} plus u w against D^{-2m+2}
    GradedSymbol quad = compose_x_independent(compose(u_hat, dirac), compose(w_hat, dirac));
    ResidueDensity part1 = wres_density(compose_density_slice(quad, inv_m));
    ResidueDensity part2 = wres_density(compose_density_slice(compose(u_hat, w_hat), inv_m1));
    ResidueDensity lhs_split;
    lhs_split.n = n;
    lhs_split.value = part1.value + part2.value;
    lhs_split.has_minus_n_part = part1.has_minus_n_part || part2.has_minus_n_part;

    Rational g_uw(0);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) g_uw += curv.ein(p, q) * u[p] * w.value[q];
    ResidueDensity rhs = closed_form_density(GaussianRational(pow2(n) * g_uw / 6), n);

    std::string inputs = "u=" + fmt_vec(u) + " w=" + fmt_vec(w.value);
    std::vector<FunctionalReport> out;
    out.push_back(make_report("einstein/direct", std::move(lhs_direct), rhs, inputs));
    out.push_back(make_report("einstein/split", std::move(lhs_split), std::move(rhs), inputs));
    return out;
}

std::vector<FunctionalReport> cancellation_check(const std::vector<Rational>& u,
                                                 const std::vector<Rational>& w, SpectralSetup& setup) {
    const int n = setup.dimension();
    require_functional_dimension(n);
    const CurvaturePoint& curv = setup.curvature();
    const int m = n / 2;
    GradedSymbol u_hat = one_form_symbol(OneFormJet::constant(u), n);
    GradedSymbol w_hat = one_form_symbol(OneFormJet::constant(w), n);
    const GradedSymbol& dirac = setup.dirac();

    // Endomorphism contribution u w against D^{-2m+2}.
    ResidueDensity e_lhs = wres_density(
        compose_density_slice(compose(u_hat, w_hat), setup.inverse_power_of_square(m - 1)));
    Rational prefactor = Rational(n - 2) * pow2(n) / 24 * curv.scalar * dot(u, w);
    ResidueDensity e_rhs = closed_form_density(GaussianRational(-prefactor), n);

    // Quadratic contribution: the xi xi part of u D w D against D^{-2m}.
    GradedSymbol quad = compose_x_independent(compose(u_hat, dirac), compose(w_hat, dirac));
    GradedSymbol f_only = make_symbol(n, 2);
    if (auto lvl = quad.levels.find(2); lvl != quad.levels.end())
        for (const auto& [s, poly] : lvl->second)
            for (const auto& [mono, coeff] : poly)
                if (mono.x == 0) add_term(f_only, s, mono, coeff);
    ResidueDensity f_lhs = wres_density(compose_density_slice(f_only, setup.inverse_power_of_square(m)));
    ResidueDensity f_rhs = closed_form_density(GaussianRational(prefactor), n);

    ResidueDensity sum_lhs;
    sum_lhs.n = n;
    sum_lhs.value = e_lhs.value + f_lhs.value;
    sum_lhs.has_minus_n_part = e_lhs.has_minus_n_part || f_lhs.has_minus_n_part;
    ResidueDensity zero = closed_form_density(GaussianRational{}, n);

    std::string inputs = "u=" + fmt_vec(u) + " w=" + fmt_vec(w);
    std::vector<FunctionalReport> out;
    out.push_back(make_report("cancellation/endo-contribution", std::move(e_lhs), std::move(e_rhs), inputs));
    out.push_back(make_report("cancellation/quadratic-contribution", std::move(f_lhs), std::move(f_rhs), inputs));
    out.push_back(make_report("cancellation/sum", std::move(sum_lhs), std::move(zero), inputs));
    return out;
}

FunctionalReport endo_functional(const ExtEndo& e, EndoVariant variant, SpectralSetup& setup) {
    const int n = setup.dimension();
    require_functional_dimension(n);
    const CurvaturePoint& curv = setup.curvature();
    const int m = n / 2;
    ResidueDensity lhs = wres_density(
        compose_density_slice(constant_symbol(e), setup.inverse_power_of_square(m - 1)));

    const Rational pref = Rational(n - 2) * pow2(n) / 24 * curv.scalar;
    GaussianRational rhs_value;
    std::string inputs;
    if (variant == EndoVariant::GammaForm) {
        auto dec = decompose_gamma(e, n);
        if (!dec)
            throw std::invalid_argument("endomorphism is not a combination of the identity and gamma pairs");
        // (n-2)/24 * 2^n * R * (-(e0 + e2_pp)); the scalar of the pair basis
        // already folds the diagonal gamma^p gamma^p terms into e0.
        rhs_value = GaussianRational(-pref) * dec->scalar;
        inputs = "variant=gamma scalar=" + dec->scalar.to_string();
    } else {
        auto dec = decompose_lambda(e, n);
        if (!dec)
            throw std::invalid_argument(
                "endomorphism is not a combination of the identity and raise-lower pairs");
        // Exact closed form: -(n-2)/24 * 2^n * R * (e0 + coeff_pp / 2).
        // The coeff_pp / 2 term is required for consistency with the inverse-power
        // symbols and the trace identities; see the regression tests.
        GaussianRational half_trace = dec->coeff_trace();
        half_trace = GaussianRational(half_trace.re / 2, half_trace.im / 2);
        rhs_value = GaussianRational(-pref) * (dec->scalar + half_trace);
        inputs = "variant=lambda scalar=" + dec->scalar.to_string() +
                 " pair-trace=" + dec->coeff_trace().to_string();
    }
    return make_report("endo-residue", std::move(lhs), closed_form_density(std::move(rhs_value), n),
                       std::move(inputs));
}

std::vector<FunctionalReport> p_functional(const std::vector<ExtEndo>& f, const std::vector<ExtEndo>& g,
                                           const ExtEndo& h, EndoVariant variant, SpectralSetup& setup) {
    const int n = setup.dimension();
    require_functional_dimension(n);
    const CurvaturePoint& curv = setup.curvature();
    const GeneratorTable& gen = GeneratorTable::get(n);
    const int m = n / 2;
    if (static_cast<int>(f.size()) != n * n || static_cast<int>(g.size()) != n)
        throw std::invalid_argument("quadratic symbol needs n*n leading and n subleading matrices");

    GradedSymbol p = make_symbol(n, 2);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            add_term(p, 0, Monomial{exp_bump(exp_bump(0, a, 1), b, 1), 0}, f[a * n + b]);
    for (int a = 0; a < n; ++a) add_term(p, 0, Monomial{exp_bump(0, a, 1), 0}, g[a]);
    add_term(p, 0, Monomial{}, h);

    GradedSymbol composed = compose_density_slice(p, setup.inverse_power_of_square(m));
    ResidueDensity lhs = wres_density(composed);

    GaussianRational rhs_value = h.trace();
    if (variant == EndoVariant::GammaForm) {
        GaussianRational scalar_sum;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                auto dec = decompose_gamma(f[a * n + b], n);
                if (!dec)
                    throw std::invalid_argument("leading coefficient is not in the gamma-pair span");
                if (a == b) scalar_sum += dec->scalar;
            }
        rhs_value += GaussianRational(-pow2(n) / 24 * curv.scalar) * scalar_sum;
    } else {
        GaussianRational diag_scalar, diag_pair_trace, cross;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                auto dec = decompose_lambda(f[a * n + b], n);
                if (!dec)
                    throw std::invalid_argument("leading coefficient is not in the raise-lower span");
                if (a == b) {
                    diag_scalar += dec->scalar;
                    diag_pair_trace += dec->coeff_trace();
                }
                // 2 (f2^{ab}_{pq} + f2^{ba}_{pq}) R_{paqb}; the transposed-field
                // half is folded to 2 f2^{ab}_{pq} R_{pbqa} by relabeling a,b.
                for (int pp = 0; pp < n; ++pp)
                    for (int q = 0; q < n; ++q) {
                        if (dec->coeff[pp * n + q].is_zero()) continue;
                        Rational r = Rational(2) * (curv.riem(pp, a, q, b) + curv.riem(pp, b, q, a));
                        if (sgn(r) == 0) continue;
                        cross += GaussianRational(r) * dec->coeff[pp * n + q];
                    }
            }
        GaussianRational bracket = GaussianRational(Rational(-2) * curv.scalar) * diag_scalar +
                                   GaussianRational(-curv.scalar) * diag_pair_trace + cross;
        rhs_value += GaussianRational(pow2(n) / 48) * bracket;
    }

    // Sphere average of the order -n symbol against its closed matrix form.
    ExtEndo average = sphere_average_minus_n(composed);
    ExtEndo expected(n);
    {
        ExtEndo bracket_diag(n);
        for (int pp = 0; pp < n; ++pp)
            for (int q = 0; q < n; ++q) {
                ExtEndo lw = gen.raising(pp + 1) * gen.lowering(q + 1);
                for (int r = 0; r < n; ++r)
                    for (int s = 0; s < n; ++s) {
                        Rational c = curv.riem(s, r, q, pp) + curv.riem(s, q, r, pp);
                        if (sgn(c) == 0) continue;
                        bracket_diag += (lw * gen.raising(r + 1) * gen.lowering(s + 1))
                                            .scaled(GaussianRational(c));
                    }
                if (sgn(curv.ric(pp, q)) != 0)
                    bracket_diag += lw.scaled(GaussianRational(-curv.ric(pp, q)));
            }
        bracket_diag += ExtEndo::scalar(n, GaussianRational(curv.scalar / 2));

        ExtEndo f_diag(n);
        for (int a = 0; a < n; ++a) f_diag += f[a * n + a];
        expected += (f_diag * bracket_diag).scaled(GaussianRational(rat(1, 6)));

        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                ExtEndo bracket_ab = ExtEndo::scalar(n, GaussianRational(-curv.ric(a, b)));
                for (int pp = 0; pp < n; ++pp)
                    for (int q = 0; q < n; ++q) {
                        Rational c = curv.riem(q, a, pp, b) + curv.riem(pp, a, q, b);
                        if (sgn(c) == 0) continue;
                        bracket_ab += (gen.raising(pp + 1) * gen.lowering(q + 1))
                                          .scaled(GaussianRational(c));
                    }
                if (f[a * n + b].is_zero() || bracket_ab.is_zero()) continue;
                expected += (f[a * n + b] * bracket_ab).scaled(GaussianRational(rat(1, 6)));
            }
        expected += h;
    }

    std::vector<FunctionalReport> out;
    std::string variant_name = variant == EndoVariant::GammaForm ? "gamma" : "lambda";
    out.push_back(make_report("quadratic-residue/" + variant_name, std::move(lhs),
                              closed_form_density(std::move(rhs_value), n), "variant=" + variant_name));
    FunctionalReport avg;
    avg.name = "quadratic-residue/sphere-average";
    avg.match = (average == expected);
    avg.lhs.n = avg.rhs.n = n;
    avg.kind = FunctionalReport::Kind::Identity;
    avg.inputs = "matrix identity for the averaged order -n symbol";
    out.push_back(std::move(avg));
    return out;
}

FunctionalReport closedness(const GradedSymbol& t, SpectralSetup& setup) {
    const int n = setup.dimension();
    require_functional_dimension(n);
    if (t.top_order != 0) throw std::invalid_argument("closedness needs a zero-order operator");
    const GradedSymbol& inv = setup.inverse_power_of_square(n / 2);
    ResidueDensity lhs = wres_density(
        compose_density_slice(compose_x_independent(t, setup.dirac()), inv));
    ResidueDensity rhs;
    rhs.n = n;
    rhs.has_minus_n_part = true;
    return make_report("closedness", std::move(lhs), std::move(rhs), "zero-order operator");
}

GradedSymbol dirac_commutator_with_scalar(const GradedSymbol& dirac, const GradedSymbol& scalar_op) {
    // The order-1 parts of D b and b D agree (scalars commute with the leading
    // coefficients), so the commutator is genuinely order 0; composing with the
    // re-anchored window keeps its full x-budget.
    return symbol_sub(compose(dirac, scalar_op, 0), compose(scalar_op, dirac, 0));
}

GradedSymbol random_zero_order_symbol(SpectralSetup& setup, std::mt19937_64& rng) {
    const int n = setup.dimension();
    const GeneratorTable& gen = GeneratorTable::get(n);
    auto small_rational = [&rng]() {
        return rat(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 2));
    };
    auto random_scalar_jet = [&]() {
        std::vector<Rational> fa(n), fab(static_cast<std::size_t>(n) * n);
        for (auto& v : fa) v = small_rational();
        for (auto& v : fab) v = small_rational();
        return scalar_jet_symbol(small_rational(), fa, fab, n);
    };
    auto random_clifford_constant = [&]() {
        ExtEndo acc = ExtEndo::scalar(n, GaussianRational(small_rational()));
        for (int p = 0; p < n; ++p) acc += gen.clifford(p + 1).scaled(GaussianRational(small_rational()));
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q)
                acc += (gen.clifford(p + 1) * gen.clifford(q + 1))
                           .scaled(GaussianRational(small_rational()));
        return constant_symbol(acc);
    };

    const int factors = 1 + static_cast<int>(rng() % 3);
    GradedSymbol t;
    bool first = true;
    for (int i = 0; i < factors; ++i) {
        GradedSymbol factor;
        if (rng() % 2 == 0) {
            factor = compose(random_scalar_jet(),
                             dirac_commutator_with_scalar(setup.dirac(), random_scalar_jet()));
        } else {
            factor = random_clifford_constant();
        }
        t = first ? std::move(factor) : compose(t, factor);
        first = false;
    }
    return t;
}

}  // namespace hodge
