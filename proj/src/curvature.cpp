#include "hodge/curvature.hpp"

#include <stdexcept>

namespace hodge {

namespace {

inline std::size_t idx4(int n, int a, int b, int c, int d) {
    return ((static_cast<std::size_t>(a) * n + b) * n + c) * n + d;
}

int rand_entry(std::mt19937_64& rng) {
    return static_cast<int>(rng() % 11) - 5;  // uniform-ish in [-5, 5]
}

std::vector<std::vector<int>> random_symmetric(int n, std::mt19937_64& rng) {
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m[i][j] = m[j][i] = rand_entry(rng);
    return m;
}

void add_kulkarni_nomizu(std::vector<Rational>& out, int n, const std::vector<std::vector<int>>& h,
                         const std::vector<std::vector<int>>& k) {
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    out[idx4(n, a, b, c, d)] +=
                        Rational(h[a][c] * k[b][d] + h[b][d] * k[a][c] - h[a][d] * k[b][c] -
                                 h[b][c] * k[a][d]);
}

void pair_symmetrize(std::vector<Rational>& r, int n) {
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    if (idx4(n, a, b, c, d) > idx4(n, c, d, a, b)) continue;
                    Rational avg = (r[idx4(n, a, b, c, d)] + r[idx4(n, c, d, a, b)]) / 2;
                    r[idx4(n, a, b, c, d)] = avg;
                    r[idx4(n, c, d, a, b)] = avg;
                }
}

void require_even_dimension(int n) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("dimension must be even and >= 2");
}

}  // namespace

bool CurvaturePoint::is_flat() const {
    for (const Rational& v : riemann)
        if (sgn(v) != 0) return false;
    return true;
}

const Rational& OneFormJet::jet_at(int p, int a) const {
    static const Rational zero(0);
    if (jet.empty()) return zero;
    return jet[static_cast<std::size_t>(p) * value.size() + a];
}

void require_curvature_symmetries(const std::vector<Rational>& r, int n) {
    if (r.size() != static_cast<std::size_t>(n) * n * n * n)
        throw std::invalid_argument("curvature array has wrong size");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    const Rational& v = r[idx4(n, a, b, c, d)];
                    if (v != -r[idx4(n, b, a, c, d)] || v != -r[idx4(n, a, b, d, c)])
                        throw std::invalid_argument("curvature violates index antisymmetry");
                    if (v != r[idx4(n, c, d, a, b)])
                        throw std::invalid_argument("curvature violates pair symmetry");
                    Rational bianchi = v + r[idx4(n, a, c, d, b)] + r[idx4(n, a, d, b, c)];
                    if (sgn(bianchi) != 0)
                        throw std::invalid_argument("curvature violates the first Bianchi identity");
                }
}

std::vector<Rational> ricci_of(const std::vector<Rational>& riemann, int n) {
    require_curvature_symmetries(riemann, n);
    std::vector<Rational> ric(static_cast<std::size_t>(n) * n, Rational(0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) ric[a * n + b] += riemann[idx4(n, c, a, c, b)];
    return ric;
}

Rational scalar_of(const std::vector<Rational>& ricci, int n) {
    Rational r(0);
    for (int a = 0; a < n; ++a) r += ricci[a * n + a];
    return r;
}

std::vector<Rational> einstein_of(const std::vector<Rational>& ricci, const Rational& scalar, int n) {
    std::vector<Rational> g = ricci;
    Rational half_r = scalar / 2;
    for (int a = 0; a < n; ++a) g[a * n + a] -= half_r;
    return g;
}

CurvaturePoint make_curvature(int n, std::vector<Rational> riemann) {
    require_even_dimension(n);
    CurvaturePoint out;
    out.n = n;
    out.riemann = std::move(riemann);
    out.ricci = ricci_of(out.riemann, n);
    out.scalar = scalar_of(out.ricci, n);
    out.einstein = einstein_of(out.ricci, out.scalar, n);
    return out;
}

CurvaturePoint sample_curvature(int n, std::uint64_t seed, int terms) {
    require_even_dimension(n);
    if (terms < 0) throw std::invalid_argument("terms must be >= 0");
    std::mt19937_64 rng(seed);
    std::vector<Rational> r(static_cast<std::size_t>(n) * n * n * n, Rational(0));
    for (int t = 0; t < terms; ++t) {
        auto h = random_symmetric(n, rng);
        auto k = random_symmetric(n, rng);
        add_kulkarni_nomizu(r, n, h, k);
    }
    pair_symmetrize(r, n);
    return make_curvature(n, std::move(r));
}

CurvaturePoint sample_curvature_bianchi(int n, std::uint64_t seed, int terms) {
    require_even_dimension(n);
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL);
    std::vector<Rational> s(static_cast<std::size_t>(n) * n * n * n, Rational(0));
    for (int t = 0; t < std::max(terms, 1); ++t) {
        // Raw random tensor, made bi-antisymmetric and pair-symmetric.
        std::vector<int> w(s.size());
        for (auto& v : w) v = rand_entry(rng);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        int v = w[idx4(n, a, b, c, d)] - w[idx4(n, b, a, c, d)] -
                                w[idx4(n, a, b, d, c)] + w[idx4(n, b, a, d, c)] +
                                w[idx4(n, c, d, a, b)] - w[idx4(n, d, c, a, b)] -
                                w[idx4(n, c, d, b, a)] + w[idx4(n, d, c, b, a)];
                        s[idx4(n, a, b, c, d)] += Rational(v);
                    }
    }
    // Remove the totally antisymmetric obstruction: the Bianchi symmetrization
    // b(S)_{abcd} = (S_{abcd} + S_{acdb} + S_{adbc}) / 3 is idempotent on this
    // symmetry class, and S - b(S) satisfies the first Bianchi identity.
    std::vector<Rational> r(s.size());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    Rational bianchi = (s[idx4(n, a, b, c, d)] + s[idx4(n, a, c, d, b)] +
                                        s[idx4(n, a, d, b, c)]) /
                                       3;
                    r[idx4(n, a, b, c, d)] = s[idx4(n, a, b, c, d)] - bianchi;
                }
    return make_curvature(n, std::move(r));
}

CurvaturePoint flat_curvature(int n) {
    require_even_dimension(n);
    return make_curvature(n, std::vector<Rational>(static_cast<std::size_t>(n) * n * n * n, Rational(0)));
}

CurvaturePoint space_form_curvature(int n) {
    require_even_dimension(n);
    std::vector<Rational> r(static_cast<std::size_t>(n) * n * n * n, Rational(0));
    std::vector<std::vector<int>> delta(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) delta[i][i] = 1;
    add_kulkarni_nomizu(r, n, delta, delta);
    return make_curvature(n, std::move(r));
}

OneFormJet sample_one_form(int n, std::mt19937_64& rng, bool with_jet) {
    auto small_rational = [&rng]() {
        long num = static_cast<long>(rng() % 11) - 5;
        long den = 1 + static_cast<long>(rng() % 3);
        return rat(num, den);
    };
    OneFormJet u;
    u.value.reserve(n);
    for (int p = 0; p < n; ++p) u.value.push_back(small_rational());
    if (with_jet) {
        u.jet.reserve(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n * n; ++i) u.jet.push_back(small_rational());
    }
    return u;
}

}  // namespace hodge
