#include "hodge/verify.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "hodge/expr.hpp"
#include "hodge/lambda_words.hpp"
#include "hodge/residue.hpp"

namespace hodge {

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
    // splitmix64 step over (seed, trial)
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(trial) + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

int worker_count(int jobs_wanted) {
    if (const char* env = std::getenv("WRES_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return std::min(v, jobs_wanted);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return std::min(jobs_wanted, hw ? static_cast<int>(hw) : 2);
}

FunctionalReport identity_report(std::string name, bool match, std::string inputs, int n) {
    FunctionalReport r;
    r.name = std::move(name);
    r.match = match;
    r.inputs = std::move(inputs);
    r.lhs.n = r.rhs.n = n;
    r.kind = FunctionalReport::Kind::Identity;
    return r;
}

/// Tr(A B) without forming the product.
GaussianRational trace_of_product(const ExtEndo& a, const ExtEndo& b) {
    GaussianRational acc;
    for (int col = 0; col < b.dimension(); ++col)
        for (const auto& [row, value] : b.column(col)) {
            GaussianRational left = a.entry(col, row);
            if (!left.is_zero()) acc += left * value;
        }
    return acc;
}

CurvaturePoint curvature_for_trial(const SuiteOptions& opt, std::uint64_t seed_t) {
    if (opt.curvature) return *opt.curvature;
    return sample_curvature(opt.dim, seed_t, 3);
}

std::string small_rational_text(std::mt19937_64& rng, bool nonzero = false) {
    long num = static_cast<long>(rng() % 9) - 4;
    if (nonzero && num == 0) num = 1;
    long den = 1 + static_cast<long>(rng() % 3);
    Rational q = rat(num, den);
    return q.get_str();
}

/// Joins coefficient/body pairs into expression text, folding signs into the
/// binary +/- structure of the grammar.
std::string build_expression(const std::vector<std::pair<std::string, std::string>>& terms) {
    std::string out;
    for (const auto& [coeff, body] : terms) {
        Rational q = rat_from_string(coeff);
        if (sgn(q) == 0) continue;
        Rational mag_q = abs(q);
        std::string mag = mag_q.get_str();
        if (out.empty())
            out += (sgn(q) < 0 ? "-" : "");
        else
            out += sgn(q) < 0 ? " - " : " + ";
        out += mag + "*" + body;
    }
    if (out.empty()) out = "0*Id";
    return out;
}

// --- transcriptions of the closed-form symbols used as regression targets ---

GradedSymbol dirac_square_reference(const CurvaturePoint& curv) {
    const int n = curv.n;
    const GeneratorTable& gen = GeneratorTable::get(n);
    GradedSymbol out = make_symbol(n, 2);
    for (int a = 0; a < n; ++a)
        add_term(out, 0, Monomial{exp_bump(exp_bump(0, a, 1), a, 1), 0}, ExtEndo::identity(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    const Rational& r = curv.riem(a, c, b, d);
                    if (sgn(r) != 0)
                        add_term(out, 0,
                                 Monomial{exp_bump(exp_bump(0, a, 1), b, 1),
                                          exp_bump(exp_bump(0, c, 1), d, 1)},
                                 ExtEndo::scalar(n, GaussianRational(r / 3)));
                }
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
            if (!coeff.is_zero())
                add_term(out, 0, Monomial{exp_bump(0, a, 1), exp_bump(0, b, 1)}, coeff.scaled(i23));
        }
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

GradedSymbol parametrix_reference(const GradedSymbol& dirac_sq) {
    const int n = dirac_sq.n;
    LaplaceTypeData data = extract_laplace_data(dirac_sq);
    GradedSymbol out = make_symbol(n, -2);
    for (int a = 0; a < n; ++a)
        add_term(out, 2, Monomial{exp_bump(exp_bump(0, a, 1), a, 1), 0}, ExtEndo::identity(n));
    for (const auto& [mono, coeff] : data.w)
        add_term(out, 2, mono, coeff.scaled(GaussianRational(Rational(-1))));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            add_term(out, 2, Monomial{exp_bump(0, a, 1), exp_bump(0, b, 1)},
                     data.p_ab[a * n + b].scaled(GaussianRational(Rational(0), Rational(-1))));
    add_term(out, 2, Monomial{}, data.q.scaled(GaussianRational(Rational(-1))));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            ExtEndo coeff = data.p_ab[a * n + b];
            coeff -= ExtEndo::scalar(n, GaussianRational(data.ricci[a * n + b] / 3));
            if (!coeff.is_zero())
                add_term(out, 3, Monomial{exp_bump(exp_bump(0, a, 1), b, 1), 0},
                         coeff.scaled(GaussianRational(Rational(2))));
        }
    return out;
}

}  // namespace

std::vector<FunctionalReport> parallel_trials(
    int count, const std::function<std::vector<FunctionalReport>(int)>& fn) {
    std::vector<std::vector<FunctionalReport>> slots(count);
    const int workers = worker_count(count);
    if (workers <= 1) {
        for (int t = 0; t < count; ++t) slots[t] = fn(t);
    } else {
        std::atomic<int> next{0};
        std::exception_ptr failure;
        std::mutex failure_mu;
        auto body = [&] {
            for (;;) {
                int t = next.fetch_add(1);
                if (t >= count) return;
                try {
                    slots[t] = fn(t);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mu);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(body);
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }
    std::vector<FunctionalReport> out;
    for (auto& slot : slots)
        for (auto& r : slot) out.push_back(std::move(r));
    return out;
}

std::vector<FunctionalReport> check_algebra(int n) {
    const GeneratorTable& gen = GeneratorTable::get(n);
    std::vector<FunctionalReport> out;
    for (int p = 1; p <= n; ++p)
        for (int r = 1; r <= n; ++r) {
            std::string at = "p=" + std::to_string(p) + " r=" + std::to_string(r);
            bool ok = (gen.raising(p) * gen.raising(r) + gen.raising(r) * gen.raising(p)).is_zero();
            out.push_back(identity_report("algebra/raise-raise", ok, at, n));
            ok = (gen.lowering(p) * gen.lowering(r) + gen.lowering(r) * gen.lowering(p)).is_zero();
            out.push_back(identity_report("algebra/lower-lower", ok, at, n));
            ExtEndo mixed = gen.raising(p) * gen.lowering(r) + gen.lowering(r) * gen.raising(p);
            ok = (p == r) ? (mixed == gen.id()) : mixed.is_zero();
            out.push_back(identity_report("algebra/raise-lower", ok, at, n));
            ExtEndo cliff = gen.clifford(p) * gen.clifford(r) + gen.clifford(r) * gen.clifford(p);
            ok = (p == r) ? (cliff == ExtEndo::scalar(n, GaussianRational(Rational(2)))) : cliff.is_zero();
            out.push_back(identity_report("algebra/clifford", ok, at, n));
        }
    for (int p = 1; p <= n; ++p) {
        std::string at = "p=" + std::to_string(p);
        out.push_back(identity_report("algebra/lower-is-transpose",
                                      gen.lowering(p) == gen.raising(p).transpose(), at, n));
        out.push_back(identity_report("algebra/clifford-self-adjoint",
                                      gen.clifford(p) == gen.clifford(p).conj_transpose(), at, n));
    }
    return out;
}

std::vector<FunctionalReport> check_traces(const SuiteOptions& opt) {
    const int n = opt.dim;
    const GeneratorTable& gen = GeneratorTable::get(n);
    std::vector<FunctionalReport> out;
    std::mt19937_64 rng(trial_seed(opt.seed, 0));

    // recursion vs dense oracle on random words (sorted and alternating)
    {
        bool ok = true;
        for (int i = 0; i < 30 && ok; ++i) {
            int k = 1 + static_cast<int>(rng() % 4);
            std::vector<int> ps(k), qs(k);
            for (int& p : ps) p = 1 + static_cast<int>(rng() % n);
            for (int& q : qs) q = 1 + static_cast<int>(rng() % n);
            LambdaWord sorted, alt;
            for (int p : ps) sorted.push_back({true, p});
            for (int q : qs) sorted.push_back({false, q});
            for (int j = 0; j < k; ++j) {
                alt.push_back({true, ps[j]});
                alt.push_back({false, qs[j]});
            }
            GaussianRational ds = word_matrix(sorted, n).trace();
            GaussianRational da = word_matrix(alt, n).trace();
            ok = ok && ds.is_real() && da.is_real();
            ok = ok && trace_recursive(ps, qs, n) == ds.re && trace_word(alt, n) == da.re;
        }
        out.push_back(identity_report("traces/recursion-vs-oracle", ok, "30 random words, k<=4", n));
    }

    // alternating closed forms, k = 2 and k = 3
    auto kron = [](int a, int b) { return a == b ? 1 : 0; };
    {
        bool ok = true;
        for (int i = 0; i < 40 && ok; ++i) {
            int p1 = 1 + static_cast<int>(rng() % n), q1 = 1 + static_cast<int>(rng() % n);
            int p2 = 1 + static_cast<int>(rng() % n), q2 = 1 + static_cast<int>(rng() % n);
            LambdaWord w{{true, p1}, {false, q1}, {true, p2}, {false, q2}};
            Rational expected =
                pow2(n - 2) * (kron(p1, q1) * kron(p2, q2) + kron(p1, q2) * kron(p2, q1));
            ok = word_matrix(w, n).trace() == GaussianRational(expected);
        }
        out.push_back(identity_report("traces/alternating-pairs", ok, "40 random tuples", n));
    }
    {
        static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        bool ok = true;
        for (int i = 0; i < 40 && ok; ++i) {
            std::vector<int> p(3), q(3);
            for (int& v : p) v = 1 + static_cast<int>(rng() % n);
            for (int& v : q) v = 1 + static_cast<int>(rng() % n);
            LambdaWord w;
            for (int j = 0; j < 3; ++j) {
                w.push_back({true, p[j]});
                w.push_back({false, q[j]});
            }
            Rational pairing(0);
            for (const auto& sig : perms)
                pairing += kron(p[0], q[sig[0]]) * kron(p[1], q[sig[1]]) * kron(p[2], q[sig[2]]);
            Rational cyclic(kron(p[0], q[1]) * kron(p[1], q[2]) * kron(p[2], q[0]));
            Rational expected = pow2(n) * (pairing / 8 - cyclic / 4);
            ok = word_matrix(w, n).trace() == GaussianRational(expected);
        }
        out.push_back(identity_report("traces/alternating-triples", ok, "40 random tuples", n));
    }

    // pair tables
    std::vector<ExtEndo> lam, gam2;
    lam.reserve(n * n);
    gam2.reserve(n * n);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            lam.push_back(gen.raising(p + 1) * gen.lowering(q + 1));
            gam2.push_back(gen.clifford(p + 1) * gen.clifford(q + 1));
        }
    auto eps2 = [&](int p, int q, int r, int s) { return kron(p, r) * kron(q, s) - kron(p, s) * kron(q, r); };

    // Clifford-pair trace identities
    {
        bool ok = true;
        for (int i = 0; i < 60 && ok; ++i) {
            int p = static_cast<int>(rng() % n), q = static_cast<int>(rng() % n);
            int r = static_cast<int>(rng() % n), s = static_cast<int>(rng() % n);
            Rational expected = pow2(n - 2) * (2 * kron(p, q) * kron(r, s) + kron(p, s) * kron(q, r) -
                                               kron(p, r) * kron(q, s));
            ok = trace_of_product(gam2[p * n + q], lam[r * n + s]) == GaussianRational(expected);
        }
        out.push_back(identity_report("traces/clifford-pair-quadratic", ok, "60 random tuples", n));
    }
    {
        bool ok = true;
        for (int i = 0; i < 60 && ok; ++i) {
            int p = static_cast<int>(rng() % n), q = static_cast<int>(rng() % n);
            int r = static_cast<int>(rng() % n), s = static_cast<int>(rng() % n);
            int t = static_cast<int>(rng() % n), z = static_cast<int>(rng() % n);
            ExtEndo word = gam2[p * n + q] * lam[r * n + s];
            Rational expected =
                pow2(n - 2) * kron(p, q) * (kron(r, s) * kron(t, z) + kron(r, z) * kron(s, t)) -
                pow2(n - 3) * (kron(r, s) * eps2(p, q, t, z) + kron(s, t) * eps2(p, q, r, z) +
                               kron(t, z) * eps2(p, q, r, s) + kron(r, z) * eps2(p, q, s, t));
            ok = trace_of_product(word, lam[t * n + z]) == GaussianRational(expected);
        }
        out.push_back(identity_report("traces/clifford-pair-sextic", ok, "60 random tuples", n));
    }

    // quadruple products for the sextic curvature contractions
    std::vector<ExtEndo> quad;
    quad.reserve(static_cast<std::size_t>(n) * n * n * n);
    for (int i = 0; i < n * n; ++i)
        for (int j = 0; j < n * n; ++j) quad.push_back(lam[i] * lam[j]);

    const Rational c1 = pow2(n - 1), c2 = pow2(n - 2), c3 = pow2(n - 3);
    for (int sample = 0; sample < opt.trials; ++sample) {
        std::uint64_t seed_t = trial_seed(opt.seed, sample + 1);
        CurvaturePoint curv = curvature_for_trial(opt, seed_t);
        std::string at = "curvature trial " + std::to_string(sample);

        auto push = [&](const char* name, bool ok) {
            FunctionalReport r = identity_report(name, ok, at, n);
            r.curvature_seed = seed_t;
            out.push_back(std::move(r));
        };

        // 1: sum Ric_pq Tr(l+^p l-^q) = 2^{n-1} R
        {
            GaussianRational acc;
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q)
                    if (sgn(curv.ric(p, q)) != 0)
                        acc += lam[p * n + q].trace() * GaussianRational(curv.ric(p, q));
            push("traces/ricci-pair", acc == GaussianRational(c1 * curv.scalar));
        }
        // 2: sum (R_paqb + R_qapb) Tr(l+^p l-^q) = 2^n Ric_ab
        {
            bool ok = true;
            for (int a = 0; a < n && ok; ++a)
                for (int b = 0; b < n && ok; ++b) {
                    GaussianRational acc;
                    for (int p = 0; p < n; ++p)
                        for (int q = 0; q < n; ++q) {
                            Rational coeff = curv.riem(p, a, q, b) + curv.riem(q, a, p, b);
                            if (sgn(coeff) != 0) acc += lam[p * n + q].trace() * GaussianRational(coeff);
                        }
                    ok = acc == GaussianRational(pow2(n) * curv.ric(a, b));
                }
            push("traces/riemann-pair", ok);
        }
        // M4 = sum Ric_rs l+^r l-^s
        ExtEndo m4(n);
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s)
                if (sgn(curv.ric(r, s)) != 0)
                    m4 += lam[r * n + s].scaled(GaussianRational(curv.ric(r, s)));
        // A8 = sum (R_ztsr + R_zstr) l+^r l-^s l+^t l-^z
        ExtEndo a8(n);
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s)
                for (int t = 0; t < n; ++t)
                    for (int z = 0; z < n; ++z) {
                        Rational coeff = curv.riem(z, t, s, r) + curv.riem(z, s, t, r);
                        if (sgn(coeff) != 0)
                            a8 += quad[(r * n + s) * n * n + (t * n + z)].scaled(GaussianRational(coeff));
                    }
        // 3: sum over all indices of (R_srqp + R_sqrp) Tr(l+^p l-^q l+^r l-^s) = -2^{n-2} R
        {
            GaussianRational acc;
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q)
                    for (int r = 0; r < n; ++r)
                        for (int s = 0; s < n; ++s) {
                            Rational coeff = curv.riem(s, r, q, p) + curv.riem(s, q, r, p);
                            if (sgn(coeff) != 0)
                                acc += quad[(p * n + q) * n * n + (r * n + s)].trace() *
                                       GaussianRational(coeff);
                        }
            push("traces/quartic-full-contraction", acc == GaussianRational(-c2 * curv.scalar));
        }
        // 4 and 5: Ric-weighted quartic traces with pair / Clifford-pair prefix
        {
            bool ok4 = true, ok5 = true;
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q) {
                    GaussianRational t4 = trace_of_product(lam[p * n + q], m4);
                    Rational expected4 = c2 * (kron(p, q) * curv.scalar + curv.ric(p, q));
                    ok4 = ok4 && t4 == GaussianRational(expected4);
                    GaussianRational t5 = trace_of_product(gam2[p * n + q], m4);
                    ok5 = ok5 && t5 == GaussianRational(c1 * kron(p, q) * curv.scalar);
                }
            push("traces/quartic-ricci-pair", ok4);
            push("traces/quartic-ricci-clifford", ok5);
        }
        // 6 and 7: (R_rasb + R_sarb)-weighted quartic traces
        {
            bool ok6 = true, ok7 = true;
            for (int a = 0; a < n && (ok6 || ok7); ++a)
                for (int b = 0; b < n; ++b) {
                    ExtEndo m6(n);
                    for (int r = 0; r < n; ++r)
                        for (int s = 0; s < n; ++s) {
                            Rational coeff = curv.riem(r, a, s, b) + curv.riem(s, a, r, b);
                            if (sgn(coeff) != 0) m6 += lam[r * n + s].scaled(GaussianRational(coeff));
                        }
                    for (int p = 0; p < n; ++p)
                        for (int q = 0; q < n; ++q) {
                            GaussianRational t6 = trace_of_product(lam[p * n + q], m6);
                            Rational expected6 =
                                c2 * (2 * kron(p, q) * curv.ric(a, b) + curv.riem(q, a, p, b) +
                                      curv.riem(p, a, q, b));
                            ok6 = ok6 && t6 == GaussianRational(expected6);
                            GaussianRational t7 = trace_of_product(gam2[p * n + q], m6);
                            ok7 = ok7 && t7 == GaussianRational(pow2(n) * kron(p, q) * curv.ric(a, b));
                        }
                }
            push("traces/quartic-riemann-pair", ok6);
            push("traces/quartic-riemann-clifford", ok7);
        }
        // 8 and 9: sextic contractions
        {
            bool ok8 = true, ok9 = true;
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q) {
                    GaussianRational t8 = trace_of_product(lam[p * n + q], a8);
                    Rational expected8 = c3 * (-curv.scalar * kron(p, q) + 2 * curv.ric(p, q));
                    ok8 = ok8 && t8 == GaussianRational(expected8);
                    GaussianRational t9 = trace_of_product(gam2[p * n + q], a8);
                    ok9 = ok9 && t9 == GaussianRational(-c2 * kron(p, q) * curv.scalar);
                }
            push("traces/sextic-pair", ok8);
            push("traces/sextic-clifford", ok9);
        }
    }
    return out;
}

std::vector<FunctionalReport> check_symbols(const SuiteOptions& opt) {
    return parallel_trials(opt.trials, [&](int trial) {
        std::uint64_t seed_t = trial_seed(opt.seed, trial);
        CurvaturePoint curv = curvature_for_trial(opt, seed_t);
        GradedSymbol d = hodge_dirac_symbol(curv);
        GradedSymbol sq = compose(d, d);
        bool ok = symbols_equal(sq, dirac_square_reference(curv));
        FunctionalReport r = identity_report("symbols/dirac-square", ok,
                                             "trial " + std::to_string(trial), opt.dim);
        r.curvature_seed = seed_t;
        return std::vector<FunctionalReport>{std::move(r)};
    });
}

std::vector<FunctionalReport> check_inverse(const SuiteOptions& opt) {
    return parallel_trials(opt.trials, [&](int trial) {
        std::uint64_t seed_t = trial_seed(opt.seed, trial);
        CurvaturePoint curv = curvature_for_trial(opt, seed_t);
        GradedSymbol sq = compose(hodge_dirac_symbol(curv), hodge_dirac_symbol(curv));
        std::vector<FunctionalReport> reports;
        std::string at = "trial " + std::to_string(trial);

        GradedSymbol first = parametrix(sq);
        reports.push_back(identity_report("inverse/parametrix-levels",
                                          symbols_equal(first, parametrix_reference(sq)), at, opt.dim));
        reports.push_back(identity_report("inverse/left-composition",
                                          symbols_equal(compose(sq, first), identity_symbol(opt.dim)),
                                          at, opt.dim));
        GradedSymbol iterated = first;
        for (int k = 1; k <= 3; ++k) {
            if (k > 1) iterated = compose(iterated, first);
            reports.push_back(identity_report("inverse/closed-form-power-" + std::to_string(k),
                                              symbols_equal(inverse_power(sq, k), iterated), at,
                                              opt.dim));
        }
        for (auto& r : reports) r.curvature_seed = seed_t;
        return reports;
    });
}

std::vector<FunctionalReport> run_metric(const SuiteOptions& opt) {
    return parallel_trials(opt.trials, [&](int trial) {
        std::uint64_t seed_t = trial_seed(opt.seed, trial);
        std::mt19937_64 rng(seed_t);
        SpectralSetup setup(curvature_for_trial(opt, seed_t));
        OneFormJet u = sample_one_form(opt.dim, rng, true);
        OneFormJet w = sample_one_form(opt.dim, rng, true);
        FunctionalReport r = metric_functional(u, w, setup);
        r.curvature_seed = seed_t;
        return std::vector<FunctionalReport>{std::move(r)};
    });
}

std::vector<FunctionalReport> run_einstein(const SuiteOptions& opt) {
    return parallel_trials(opt.trials, [&](int trial) {
        std::uint64_t seed_t = trial_seed(opt.seed, trial);
        std::mt19937_64 rng(seed_t);
        SpectralSetup setup(curvature_for_trial(opt, seed_t));
        OneFormJet u = sample_one_form(opt.dim, rng, false);
        OneFormJet w = sample_one_form(opt.dim, rng, true);
        auto reports = einstein_functional(u.value, w, setup);
        for (auto& r : reports) r.curvature_seed = seed_t;
        return reports;
    });
}

std::vector<FunctionalReport> run_cancellation(const SuiteOptions& opt) {
    return parallel_trials(opt.trials, [&](int trial) {
        std::uint64_t seed_t = trial_seed(opt.seed, trial);
        std::mt19937_64 rng(seed_t);
        SpectralSetup setup(curvature_for_trial(opt, seed_t));
        OneFormJet u = sample_one_form(opt.dim, rng, false);
        OneFormJet w = sample_one_form(opt.dim, rng, false);
        auto reports = cancellation_check(u.value, w.value, setup);
        for (auto& r : reports) r.curvature_seed = seed_t;
        return reports;
    });
}

std::vector<FunctionalReport> run_closedness(const SuiteOptions& opt) {
    return parallel_trials(opt.trials, [&](int trial) {
        std::uint64_t seed_t = trial_seed(opt.seed, trial);
        std::mt19937_64 rng(seed_t);
        SpectralSetup setup(curvature_for_trial(opt, seed_t));
        GradedSymbol t = random_zero_order_symbol(setup, rng);
        FunctionalReport r = closedness(t, setup);
        r.curvature_seed = seed_t;
        r.inputs = "random zero-order operator, trial " + std::to_string(trial);
        return std::vector<FunctionalReport>{std::move(r)};
    });
}

std::vector<FunctionalReport> run_dsl_functionals(const SuiteOptions& opt) {
    const int n = opt.dim;
    return parallel_trials(opt.trials, [&, n](int trial) {
        std::uint64_t seed_t = trial_seed(opt.seed, trial);
        std::mt19937_64 rng(seed_t);
        SpectralSetup setup(curvature_for_trial(opt, seed_t));
        OneFormJet u = sample_one_form(n, rng, false);
        OneFormJet w = sample_one_form(n, rng, false);
        EvalContext ctx;
        ctx.n = n;
        ctx.curvature = &setup.curvature();
        ctx.u = &u;
        ctx.w = &w;
        auto c = [&](bool nonzero = false) { return small_rational_text(rng, nonzero); };
        std::vector<FunctionalReport> reports;

        // endomorphism inputs
        std::string e_gamma = build_expression({{c(true), "Id"},
                                                {c(), "Rs*Id"},
                                                {c(), "Ric[p,q]*G(p)*G(q)"},
                                                {c(), "u[p]*w[q]*G(p)*G(q)"},
                                                {c(), "delta[p,q]*G(p)*G(q)"}});
        FunctionalReport r = endo_functional(evaluate_expr(*parse_expr(e_gamma), ctx),
                                             EndoVariant::GammaForm, setup);
        r.name = "dsl-endo/gamma";
        r.inputs = e_gamma;
        r.curvature_seed = seed_t;
        reports.push_back(std::move(r));

        std::string e_lambda = build_expression({{c(true), "Id"},
                                                 {c(), "Rs*Id"},
                                                 {c(), "Ric[p,q]*Lp(p)*Lm(q)"},
                                                 {c(true), "delta[p,q]*Lp(p)*Lm(q)"},
                                                 {c(), "u[p]*w[q]*Lp(p)*Lm(q)"}});
        r = endo_functional(evaluate_expr(*parse_expr(e_lambda), ctx), EndoVariant::LambdaForm, setup);
        r.name = "dsl-endo/lambda";
        r.inputs = e_lambda;
        r.curvature_seed = seed_t;
        reports.push_back(std::move(r));

        // quadratic-symbol inputs per variant
        auto eval_field = [&](const std::string& text) {
            auto ast = parse_expr(text);
            std::vector<ExtEndo> field(static_cast<std::size_t>(n) * n, ExtEndo::zero(n));
            EvalContext bound = ctx;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    bound.bindings = {{'a', a + 1}, {'b', b + 1}};
                    field[a * n + b] = evaluate_expr(*ast, bound);
                }
            return field;
        };
        auto eval_vector = [&](const std::string& text) {
            auto ast = parse_expr(text);
            std::vector<ExtEndo> vec(n, ExtEndo::zero(n));
            EvalContext bound = ctx;
            for (int a = 0; a < n; ++a) {
                bound.bindings = {{'a', a + 1}};
                vec[a] = evaluate_expr(*ast, bound);
            }
            return vec;
        };

        std::string g_text = build_expression({{c(), "u[a]*Id"}, {c(), "G(a)"}, {c(), "w[a]*Id"}});
        std::string h_text = build_expression({{c(), "u[p]*G(p)*w[q]*G(q)"},
                                               {c(), "Ric[p,q]*Lp(p)*Lm(q)"},
                                               {c(), "Rs*Id"}});
        std::vector<ExtEndo> g_field = eval_vector(g_text);
        ExtEndo h_endo = evaluate_expr(*parse_expr(h_text), ctx);

        std::string f_gamma = build_expression({{c(true), "delta[a,b]*Id"},
                                                {c(), "Ric[a,b]*Id"},
                                                {c(), "R[a,p,b,q]*G(p)*G(q)"},
                                                {c(), "u[a]*w[b]*Id"},
                                                {c(), "delta[a,b]*Ric[p,q]*G(p)*G(q)"}});
        auto reports_g = p_functional(eval_field(f_gamma), g_field, h_endo, EndoVariant::GammaForm, setup);
        reports_g[0].name = "dsl-quadratic/gamma";
        reports_g[0].inputs = "F=" + f_gamma + " G=" + g_text + " H=" + h_text;
        reports_g[1].name = "dsl-quadratic/gamma-sphere-average";
        for (auto& rep : reports_g) {
            rep.curvature_seed = seed_t;
            reports.push_back(std::move(rep));
        }

        std::string f_lambda = build_expression({{c(true), "delta[a,b]*Id"},
                                                 {c(), "Ric[a,b]*Id"},
                                                 {c(), "R[p,a,q,b]*Lp(p)*Lm(q)"},
                                                 {c(), "u[a]*w[b]*Id"},
                                                 {c(true), "delta[a,b]*delta[p,q]*Lp(p)*Lm(q)"}});
        auto reports_l = p_functional(eval_field(f_lambda), g_field, h_endo, EndoVariant::LambdaForm, setup);
        reports_l[0].name = "dsl-quadratic/lambda";
        reports_l[0].inputs = "F=" + f_lambda + " G=" + g_text + " H=" + h_text;
        reports_l[1].name = "dsl-quadratic/lambda-sphere-average";
        for (auto& rep : reports_l) {
            rep.curvature_seed = seed_t;
            reports.push_back(std::move(rep));
        }
        return reports;
    });
}

std::vector<FunctionalReport> run_expression_functional(const SuiteOptions& opt,
                                                        const std::string& expr_text,
                                                        const std::string& f_expr_text,
                                                        const std::string& g_expr_text, int power,
                                                        EndoVariant variant,
                                                        const std::optional<OneFormJet>& u,
                                                        const std::optional<OneFormJet>& w) {
    const int n = opt.dim;
    const int m = n / 2;
    std::uint64_t seed_t = opt.curvature ? 0 : trial_seed(opt.seed, 0);
    SpectralSetup setup(curvature_for_trial(opt, seed_t));
    EvalContext ctx;
    ctx.n = n;
    ctx.curvature = &setup.curvature();
    if (u) ctx.u = &*u;
    if (w) ctx.w = &*w;

    std::vector<FunctionalReport> reports;
    if (power == m - 1) {
        if (!f_expr_text.empty() || !g_expr_text.empty())
            throw std::invalid_argument("xi-dependent parts need the full power n/2");
        ExtEndo e = evaluate_expr(*parse_expr(expr_text), ctx);
        FunctionalReport r = endo_functional(e, variant, setup);
        r.inputs = expr_text;
        r.curvature_seed = seed_t;
        reports.push_back(std::move(r));
    } else if (power == m) {
        std::vector<ExtEndo> f(static_cast<std::size_t>(n) * n, ExtEndo::zero(n));
        std::vector<ExtEndo> g(n, ExtEndo::zero(n));
        if (!f_expr_text.empty()) {
            auto ast = parse_expr(f_expr_text);
            EvalContext bound = ctx;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    bound.bindings = {{'a', a + 1}, {'b', b + 1}};
                    f[a * n + b] = evaluate_expr(*ast, bound);
                }
        }
        if (!g_expr_text.empty()) {
            auto ast = parse_expr(g_expr_text);
            EvalContext bound = ctx;
            for (int a = 0; a < n; ++a) {
                bound.bindings = {{'a', a + 1}};
                g[a] = evaluate_expr(*ast, bound);
            }
        }
        ExtEndo h = expr_text.empty() ? ExtEndo::zero(n) : evaluate_expr(*parse_expr(expr_text), ctx);
        reports = p_functional(f, g, h, variant, setup);
        for (auto& r : reports) {
            r.curvature_seed = seed_t;
            if (r.inputs.empty() || r.inputs.rfind("variant=", 0) == 0)
                r.inputs = "H=" + expr_text + " F=" + f_expr_text + " G=" + g_expr_text;
        }
    } else {
        throw std::invalid_argument("power must be n/2 - 1 (endomorphism form) or n/2 (quadratic form)");
    }
    return reports;
}

std::vector<FunctionalReport> run_all(const SuiteOptions& opt) {
    std::vector<FunctionalReport> out;
    auto append = [&out](std::vector<FunctionalReport> v) {
        for (auto& r : v) out.push_back(std::move(r));
    };
    append(check_algebra(opt.dim));
    append(check_traces(opt));
    append(check_symbols(opt));
    append(check_inverse(opt));
    append(run_metric(opt));
    append(run_einstein(opt));
    append(run_cancellation(opt));
    append(run_closedness(opt));
    append(run_dsl_functionals(opt));
    return out;
}

bool all_match(const std::vector<FunctionalReport>& reports) {
    for (const auto& r : reports)
        if (!r.match) return false;
    return true;
}

}  // namespace hodge
