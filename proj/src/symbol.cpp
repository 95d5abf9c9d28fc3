#include "hodge/symbol.hpp"

#include <stdexcept>

namespace hodge {

int total_degree(PackedExp e) {
    int d = 0;
    while (e) {
        d += static_cast<int>(e & 0xffu);
        e >>= 8;
    }
    return d;
}

GradedSymbol make_symbol(int n, int top_order) {
    GradedSymbol s;
    s.n = n;
    s.top_order = top_order;
    return s;
}

void add_term(GradedSymbol& sym, int s, Monomial mono, const ExtEndo& coeff) {
    if (coeff.is_zero()) return;
    const int h = total_degree(mono.xi) - 2 * s;
    if (h > sym.top_order || h < sym.top_order - 2) return;
    if (total_degree(mono.x) > sym.x_budget(h)) return;
    PolyMap& poly = sym.levels[h][s];
    auto [it, inserted] = poly.try_emplace(mono, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) poly.erase(it);
    }
}

namespace {

void merge_into(GradedSymbol& out, const GradedSymbol& src, const GaussianRational& scale) {
    for (const auto& [h, buckets] : src.levels)
        for (const auto& [s, poly] : buckets)
            for (const auto& [mono, coeff] : poly)
                add_term(out, s, mono, scale == GaussianRational(Rational(1)) ? coeff : coeff.scaled(scale));
}

/// Multiplies a polynomial by (sum_v xi_v^2)^k.
PolyMap times_norm_sq_power(const PolyMap& poly, int k, int n) {
    PolyMap cur = poly;
    for (int round = 0; round < k; ++round) {
        PolyMap next;
        for (const auto& [mono, coeff] : cur) {
            for (int v = 0; v < n; ++v) {
                Monomial m{exp_bump(mono.xi, v, 2), mono.x};
                auto [it, inserted] = next.try_emplace(m, coeff);
                if (!inserted) {
                    it->second += coeff;
                    if (it->second.is_zero()) next.erase(it);
                }
            }
        }
        cur = std::move(next);
    }
    return cur;
}

/// Lifts every bucket of one homogeneity level to the maximal inverse-norm
/// power present and merges. Empty result means the level vanishes.
std::pair<int, PolyMap> canonical_level(const std::map<int, PolyMap>& buckets, int n) {
    int s_max = 0;
    for (const auto& [s, poly] : buckets)
        if (!poly.empty() && s > s_max) s_max = s;
    PolyMap merged;
    for (const auto& [s, poly] : buckets) {
        if (poly.empty()) continue;
        PolyMap lifted = times_norm_sq_power(poly, s_max - s, n);
        for (auto& [mono, coeff] : lifted) {
            auto [it, inserted] = merged.try_emplace(mono, coeff);
            if (!inserted) {
                it->second += coeff;
                if (it->second.is_zero()) merged.erase(it);
            }
        }
    }
    return {s_max, std::move(merged)};
}

struct XiDerivPiece {
    int s;
    PackedExp xi;
    long factor;
};

/// d/d xi_v of xi^e ||xi||^{-2s}: the monomial rule plus the exact quotient
/// rule on the inverse-norm factor.
inline int xi_derivative(int s, PackedExp xi, int v, XiDerivPiece out[2]) {
    int count = 0;
    int e = exp_of(xi, v);
    if (e > 0) out[count++] = {s, exp_bump(xi, v, -1), e};
    if (s > 0) out[count++] = {s + 1, exp_bump(xi, v, +1), -2L * s};
    return count;
}

struct Contribution {
    int s;
    Monomial mono;
    GaussianRational factor;
};

}  // namespace

GradedSymbol symbol_add(const GradedSymbol& a, const GradedSymbol& b) {
    GradedSymbol out = make_symbol(a.n, std::max(a.top_order, b.top_order));
    merge_into(out, a, GaussianRational(Rational(1)));
    merge_into(out, b, GaussianRational(Rational(1)));
    return out;
}

GradedSymbol symbol_sub(const GradedSymbol& a, const GradedSymbol& b) {
    GradedSymbol out = make_symbol(a.n, std::max(a.top_order, b.top_order));
    merge_into(out, a, GaussianRational(Rational(1)));
    merge_into(out, b, GaussianRational(Rational(-1)));
    return out;
}

GradedSymbol symbol_scaled(const GradedSymbol& a, const GaussianRational& z) {
    GradedSymbol out = make_symbol(a.n, a.top_order);
    merge_into(out, a, z);
    return out;
}

namespace {

struct FlatPart {
    int h;
    int s;
    Monomial mono;
    int xdeg;
    const ExtEndo* coeff;
    std::optional<GaussianRational> scalar;  // set when coeff = scalar * id
};

std::vector<FlatPart> flatten(const GradedSymbol& sym) {
    std::vector<FlatPart> out;
    for (const auto& [h, buckets] : sym.levels)
        for (const auto& [s, poly] : buckets)
            for (const auto& [mono, coeff] : poly)
                out.push_back({h, s, mono, total_degree(mono.x), &coeff,
                               coeff.scalar_multiple_of_identity()});
    return out;
}

constexpr int kNoSlice = INT32_MIN;

GradedSymbol compose_impl(const GradedSymbol& a, const GradedSymbol& b, int top_override,
                          int slice_level, bool x0_only) {
    if (a.n != b.n) throw std::invalid_argument("composing symbols of different dimensions");
    const int n = a.n;
    GradedSymbol out = make_symbol(n, top_override);
    const GaussianRational minus_i(Rational(0), Rational(-1));
    const GaussianRational minus_half(rat(-1, 2));

    std::vector<FlatPart> parts_a = flatten(a);
    std::vector<FlatPart> parts_b = flatten(b);
    std::vector<Contribution> contribs;
    XiDerivPiece dpieces[2], dpieces2[2];

    for (const FlatPart& pa : parts_a) {
        for (const FlatPart& pb : parts_b) {
            if (pa.h + pb.h < top_override - 2) continue;  // even alpha=0 lands below the window
            contribs.clear();
            const int xdeg_sum = pa.xdeg + pb.xdeg;

            auto wanted = [&](int h, int xdeg) {
                if (h > top_override || h < top_override - 2) return false;
                if (xdeg > out.x_budget(h)) return false;
                if (slice_level != kNoSlice && h != slice_level) return false;
                if (x0_only && xdeg != 0) return false;
                return true;
            };

            // alpha = 0: plain product.
            if (wanted(pa.h + pb.h, xdeg_sum))
                contribs.push_back({pa.s + pb.s,
                                    {pa.mono.xi + pb.mono.xi, pa.mono.x + pb.mono.x},
                                    GaussianRational(Rational(1))});

            // alpha of order 1: (-i) d_xi^v A . d_x^v B.
            if (pb.xdeg > 0 && wanted(pa.h - 1 + pb.h, xdeg_sum - 1)) {
                for (int v = 0; v < n; ++v) {
                    const int fx = exp_of(pb.mono.x, v);
                    if (fx == 0) continue;
                    PackedExp xb = exp_bump(pb.mono.x, v, -1);
                    int cnt = xi_derivative(pa.s, pa.mono.xi, v, dpieces);
                    for (int i = 0; i < cnt; ++i)
                        contribs.push_back({dpieces[i].s + pb.s,
                                            {dpieces[i].xi + pb.mono.xi, pa.mono.x + xb},
                                            minus_i * GaussianRational(Rational(dpieces[i].factor * fx))});
                }
            }

            // alpha of order 2: -(1/2) sum_{v,w} d_xi^{vw} A . d_x^{vw} B.
            if (pb.xdeg >= 2 && wanted(pa.h - 2 + pb.h, xdeg_sum - 2)) {
                for (int w = 0; w < n; ++w) {
                    const int fw = exp_of(pb.mono.x, w);
                    if (fw == 0) continue;
                    PackedExp xb1 = exp_bump(pb.mono.x, w, -1);
                    for (int v = 0; v < n; ++v) {
                        const int fv = exp_of(xb1, v);
                        if (fv == 0) continue;
                        PackedExp xb2 = exp_bump(xb1, v, -1);
                        int cnt = xi_derivative(pa.s, pa.mono.xi, w, dpieces);
                        for (int i = 0; i < cnt; ++i) {
                            int cnt2 = xi_derivative(dpieces[i].s, dpieces[i].xi, v, dpieces2);
                            for (int j = 0; j < cnt2; ++j) {
                                Rational f = Rational(dpieces[i].factor) * Rational(dpieces2[j].factor) *
                                             Rational(fw) * Rational(fv);
                                contribs.push_back({dpieces2[j].s + pb.s,
                                                    {dpieces2[j].xi + pb.mono.xi, pa.mono.x + xb2},
                                                    minus_half * GaussianRational(f)});
                            }
                        }
                    }
                }
            }

            if (contribs.empty()) continue;
            ExtEndo prod;
            if (pa.scalar && pb.scalar)
                prod = ExtEndo::scalar(n, *pa.scalar * *pb.scalar);
            else if (pa.scalar)
                prod = pb.coeff->scaled(*pa.scalar);
            else if (pb.scalar)
                prod = pa.coeff->scaled(*pb.scalar);
            else
                prod = *pa.coeff * *pb.coeff;
            if (prod.is_zero()) continue;
            for (const Contribution& c : contribs) add_term(out, c.s, c.mono, prod.scaled(c.factor));
        }
    }
    return out;
}

}  // namespace

GradedSymbol compose(const GradedSymbol& a, const GradedSymbol& b) {
    return compose_impl(a, b, a.top_order + b.top_order, kNoSlice, false);
}

GradedSymbol compose(const GradedSymbol& a, const GradedSymbol& b, int top_override) {
    return compose_impl(a, b, top_override, kNoSlice, false);
}

GradedSymbol compose_density_slice(const GradedSymbol& a, const GradedSymbol& b) {
    return compose_impl(a, b, a.top_order + b.top_order, -a.n, true);
}

GradedSymbol compose_x_independent(const GradedSymbol& a, const GradedSymbol& b) {
    return compose_impl(a, b, a.top_order + b.top_order, kNoSlice, true);
}

bool symbol_is_zero(const GradedSymbol& a) {
    for (const auto& [h, buckets] : a.levels) {
        auto [s, poly] = canonical_level(buckets, a.n);
        if (!poly.empty()) return false;
    }
    return true;
}

bool symbols_equal(const GradedSymbol& a, const GradedSymbol& b) {
    if (a.n != b.n || a.top_order != b.top_order) return false;
    return symbol_is_zero(symbol_sub(a, b));
}

bool symbol_is_x_independent(const GradedSymbol& a) {
    for (const auto& [h, buckets] : a.levels)
        for (const auto& [s, poly] : buckets)
            for (const auto& [mono, coeff] : poly)
                if (mono.x != 0) return false;
    return true;
}

GradedSymbol constant_symbol(const ExtEndo& e) {
    GradedSymbol out = make_symbol(e.generators(), 0);
    add_term(out, 0, Monomial{}, e);
    return out;
}

GradedSymbol identity_symbol(int n) { return constant_symbol(ExtEndo::identity(n)); }

GradedSymbol one_form_symbol(const OneFormJet& u, int n) {
    const GeneratorTable& gen = GeneratorTable::get(n);
    GradedSymbol out = make_symbol(n, 0);
    for (int p = 0; p < n; ++p) {
        if (sgn(u.value[p]) != 0)
            add_term(out, 0, Monomial{}, gen.clifford(p + 1).scaled(GaussianRational(u.value[p])));
        if (!u.jet.empty())
            for (int a = 0; a < n; ++a) {
                const Rational& j = u.jet_at(p, a);
                if (sgn(j) != 0)
                    add_term(out, 0, Monomial{0, exp_bump(0, a, 1)},
                             gen.clifford(p + 1).scaled(GaussianRational(j)));
            }
    }
    return out;
}

GradedSymbol scalar_jet_symbol(const Rational& f0, const std::vector<Rational>& fa,
                               const std::vector<Rational>& fab, int n) {
    GradedSymbol out = make_symbol(n, 0);
    if (sgn(f0) != 0) add_term(out, 0, Monomial{}, ExtEndo::scalar(n, GaussianRational(f0)));
    for (int a = 0; a < static_cast<int>(fa.size()); ++a)
        if (sgn(fa[a]) != 0)
            add_term(out, 0, Monomial{0, exp_bump(0, a, 1)}, ExtEndo::scalar(n, GaussianRational(fa[a])));
    if (!fab.empty())
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const Rational& c = fab[a * n + b];
                if (sgn(c) != 0)
                    add_term(out, 0, Monomial{0, exp_bump(exp_bump(0, a, 1), b, 1)},
                             ExtEndo::scalar(n, GaussianRational(c)));
            }
    return out;
}

GradedSymbol hodge_dirac_symbol(const CurvaturePoint& curv) {
    const int n = curv.n;
    const GeneratorTable& gen = GeneratorTable::get(n);
    GradedSymbol out = make_symbol(n, 1);

    // Leading level: -gamma^p xi_p - (1/3) i lambda_-^p R_{sapb} x^a x^b xi_s.
    for (int p = 0; p < n; ++p)
        add_term(out, 0, Monomial{exp_bump(0, p, 1), 0},
                 gen.clifford(p + 1).scaled(GaussianRational(Rational(-1))));
    const GaussianRational minus_i_third(Rational(0), rat(-1, 3));
    for (int s = 0; s < n; ++s)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                ExtEndo acc(n);
                for (int p = 0; p < n; ++p) {
                    const Rational& r = curv.riem(s, a, p, b);
                    if (sgn(r) != 0) acc += gen.lowering(p + 1).scaled(GaussianRational(r));
                }
                if (!acc.is_zero())
                    add_term(out, 0,
                             Monomial{exp_bump(0, s, 1), exp_bump(exp_bump(0, a, 1), b, 1)},
                             acc.scaled(minus_i_third));
            }

    // Order-0 level: -(1/3) lambda_-^p lambda_+^r lambda_-^s (R_{srpa} + R_{spra}) x^a.
    const GaussianRational minus_third(rat(-1, 3));
    for (int a = 0; a < n; ++a) {
        ExtEndo acc(n);
        for (int p = 0; p < n; ++p)
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) {
                    Rational c = curv.riem(s, r, p, a) + curv.riem(s, p, r, a);
                    if (sgn(c) == 0) continue;
                    acc += (gen.lowering(p + 1) * gen.raising(r + 1) * gen.lowering(s + 1))
                               .scaled(GaussianRational(c));
                }
        if (!acc.is_zero())
            add_term(out, 0, Monomial{0, exp_bump(0, a, 1)}, acc.scaled(minus_third));
    }
    return out;
}

LaplaceTypeData extract_laplace_data(const GradedSymbol& L) {
    if (L.top_order != 2) throw std::invalid_argument("Laplace-type symbol must have order 2");
    const int n = L.n;
    LaplaceTypeData data;
    data.n = n;
    data.q = ExtEndo::zero(n);
    data.p_ab.assign(static_cast<std::size_t>(n) * n, ExtEndo::zero(n));
    data.ricci.assign(static_cast<std::size_t>(n) * n, Rational(0));

    for (const auto& [h, buckets] : L.levels)
        for (const auto& [s, poly] : buckets)
            if (s != 0 && !poly.empty())
                throw std::invalid_argument("Laplace-type symbol must be polynomial in xi");

    // Leading level: ||xi||^2 id + scalar x^2 correction; no x-linear part.
    auto it2 = L.levels.find(2);
    PolyMap expected_x0;
    for (int v = 0; v < n; ++v) expected_x0[Monomial{exp_bump(0, v, 2), 0}] = ExtEndo::identity(n);
    PolyMap seen_x0;
    if (it2 != L.levels.end()) {
        auto s0 = it2->second.find(0);
        if (s0 != it2->second.end()) {
            for (const auto& [mono, coeff] : s0->second) {
                const int xd = total_degree(mono.x);
                if (xd == 0) {
                    seen_x0[mono] = coeff;
                } else if (xd == 1) {
                    throw std::invalid_argument("Laplace-type leading symbol has an x-linear part");
                } else {
                    if (!coeff.scalar_multiple_of_identity())
                        throw std::invalid_argument("Laplace-type x^2 correction is not scalar");
                    data.w[mono] = coeff;
                }
            }
        }
    }
    if (seen_x0 != expected_x0)
        throw std::invalid_argument("Laplace-type leading symbol is not ||xi||^2 times the identity");

    // Ricci from the x^2 correction: with W = (1/3) R_{acbd} xi_a xi_b x^c x^d the
    // symmetrized coefficients C satisfy Ric_{bd} = -6 sum_a C_{ab,ad}.
    auto sym_coeff = [&](int a, int b, int c, int d) -> Rational {
        Monomial m{exp_bump(exp_bump(0, a, 1), b, 1), exp_bump(exp_bump(0, c, 1), d, 1)};
        auto it = data.w.find(m);
        if (it == data.w.end()) return Rational(0);
        Rational v = it->second.scalar_multiple_of_identity()->re;
        int mult = (a == b ? 1 : 2) * (c == d ? 1 : 2);
        return v / mult;
    };
    for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d) {
            Rational acc(0);
            for (int a = 0; a < n; ++a) acc += sym_coeff(a, b, a, d);
            data.ricci[b * n + d] = acc * -6;
        }

    // First subleading level: i P_ab xi_a x^b only.
    auto it1 = L.levels.find(1);
    if (it1 != L.levels.end()) {
        auto s0 = it1->second.find(0);
        if (s0 != it1->second.end())
            for (const auto& [mono, coeff] : s0->second) {
                if (total_degree(mono.x) != 1 || total_degree(mono.xi) != 1)
                    throw std::invalid_argument("unexpected part in the subleading Laplace-type level");
                int a = -1, b = -1;
                for (int v = 0; v < n; ++v) {
                    if (exp_of(mono.xi, v) == 1) a = v;
                    if (exp_of(mono.x, v) == 1) b = v;
                }
                data.p_ab[a * n + b] = coeff.scaled(GaussianRational(Rational(0), Rational(-1)));
            }
    }

    // Constant part Q.
    auto it0 = L.levels.find(0);
    if (it0 != L.levels.end()) {
        auto s0 = it0->second.find(0);
        if (s0 != it0->second.end())
            for (const auto& [mono, coeff] : s0->second) {
                if (mono.xi != 0 || mono.x != 0)
                    throw std::invalid_argument("unexpected part in the order-0 Laplace-type level");
                data.q = coeff;
            }
    }
    return data;
}

namespace {

/// Canonicalizes levels in place: one bucket per homogeneity.
void canonicalize(GradedSymbol& sym) {
    std::map<int, std::map<int, PolyMap>> fresh;
    for (auto& [h, buckets] : sym.levels) {
        auto [s, poly] = canonical_level(buckets, sym.n);
        if (!poly.empty()) fresh[h][s] = std::move(poly);
    }
    sym.levels = std::move(fresh);
}

}  // namespace

GradedSymbol parametrix(const GradedSymbol& L) {
    LaplaceTypeData data = extract_laplace_data(L);  // validates ellipticity/shape
    const int n = L.n;

    // Leading inverse by the Neumann series: ||xi||^{-2} (1 - ||xi||^{-2} W),
    // the x^4 tail being outside the retained budget.
    GradedSymbol inv_lead = make_symbol(n, -2);
    add_term(inv_lead, 1, Monomial{}, ExtEndo::identity(n));
    for (const auto& [mono, coeff] : data.w)
        add_term(inv_lead, 2, mono, coeff.scaled(GaussianRational(Rational(-1))));

    GradedSymbol result = inv_lead;
    const GradedSymbol one = identity_symbol(n);
    for (int round = 0; round < 2; ++round) {
        GradedSymbol residual = symbol_sub(one, compose(L, result, 0));
        canonicalize(residual);
        result = symbol_add(result, compose(inv_lead, residual));
    }
    GradedSymbol residual = symbol_sub(one, compose(L, result, 0));
    if (!symbol_is_zero(residual))
        throw std::logic_error("parametrix residual did not vanish in the retained grading");
    return result;
}

GradedSymbol inverse_power(const GradedSymbol& L, int k) {
    if (k <= 0) throw std::invalid_argument("inverse power requires k >= 1");
    LaplaceTypeData data = extract_laplace_data(L);
    const int n = L.n;
    GradedSymbol out = make_symbol(n, -2 * k);

    // ||xi||^{-2k} (1 - k ||xi||^{-2} W)
    add_term(out, k, Monomial{}, ExtEndo::identity(n));
    for (const auto& [mono, coeff] : data.w)
        add_term(out, k + 1, mono, coeff.scaled(GaussianRational(Rational(-k))));

    // -i k ||xi||^{-2k-2} P_ab xi_a x^b
    const GaussianRational minus_ik(Rational(0), Rational(-k));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const ExtEndo& p = data.p_ab[a * n + b];
            if (p.is_zero()) continue;
            add_term(out, k + 1, Monomial{exp_bump(0, a, 1), exp_bump(0, b, 1)}, p.scaled(minus_ik));
        }

    // -k ||xi||^{-2k-2} Q + k(k+1) ||xi||^{-2k-4} (P_ab - (1/3) Ric_ab) xi_a xi_b
    add_term(out, k + 1, Monomial{}, data.q.scaled(GaussianRational(Rational(-k))));
    const GaussianRational kk1(Rational(k) * Rational(k + 1));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            ExtEndo m = data.p_ab[a * n + b];
            const Rational& ric = data.ricci[a * n + b];
            if (sgn(ric) != 0)
                m -= ExtEndo::scalar(n, GaussianRational(ric / 3));
            if (m.is_zero()) continue;
            add_term(out, k + 2, Monomial{exp_bump(exp_bump(0, a, 1), b, 1), 0}, m.scaled(kk1));
        }
    return out;
}

}  // namespace hodge
