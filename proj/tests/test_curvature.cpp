#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "hodge/curvature.hpp"
#include "hodge/ext_endo.hpp"

using namespace hodge;

namespace {

/// Exact rank by Gaussian elimination over Q.
int rational_rank(std::vector<std::vector<Rational>> rows) {
    int rank = 0;
    const int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (sgn(rows[r][c]) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || sgn(rows[r][c]) == 0) continue;
            Rational f = rows[r][c] / rows[rank][c];
            for (int cc = c; cc < cols; ++cc) rows[r][cc] -= f * rows[rank][cc];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

TEST_CASE("space form curvature") {
    CurvaturePoint cp = space_form_curvature(4);
    // R_{abcd} = 2(d_ac d_bd - d_ad d_bc)
    CHECK(cp.riem(0, 1, 0, 1) == Rational(2));
    CHECK(cp.riem(0, 1, 1, 0) == Rational(-2));
    CHECK(cp.riem(0, 0, 1, 1) == Rational(0));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            CHECK(cp.ric(a, b) == (a == b ? Rational(6) : Rational(0)));
    CHECK(cp.scalar == Rational(24));
    for (int a = 0; a < 4; ++a) CHECK(cp.ein(a, a) == Rational(-6));
}

TEST_CASE("flat curvature") {
    CurvaturePoint cp = sample_curvature(4, 123, 0);
    CHECK(cp.is_flat());
    CHECK(cp.scalar == 0);
    for (const Rational& v : cp.einstein) CHECK(sgn(v) == 0);
}

TEST_CASE("sampled tensors satisfy all symmetries") {
    for (int n : {4, 6})
        for (std::uint64_t seed : {1, 7, 42}) {
            CurvaturePoint cp = sample_curvature(n, seed, 3);
            CHECK_NOTHROW(require_curvature_symmetries(cp.riemann, n));
            // Ricci symmetric, Einstein trace = (1 - n/2) R
            Rational gtrace(0);
            for (int a = 0; a < n; ++a) {
                gtrace += cp.ein(a, a);
                for (int b = 0; b < n; ++b) CHECK(cp.ric(a, b) == cp.ric(b, a));
            }
            CHECK(gtrace == (Rational(1) - Rational(n) / 2) * cp.scalar);
        }
}

TEST_CASE("bianchi projector generator agrees on the invariants") {
    for (std::uint64_t seed : {3, 9}) {
        CurvaturePoint cp = sample_curvature_bianchi(4, seed, 2);
        CHECK_NOTHROW(require_curvature_symmetries(cp.riemann, 4));
        CHECK(!cp.is_flat());
    }
}

TEST_CASE("rejects invalid input") {
    CHECK_THROWS_AS(sample_curvature(3, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_curvature(0, 0, 1), std::invalid_argument);
    std::vector<Rational> bad(4 * 4 * 4 * 4, Rational(0));
    bad[0] = Rational(1);  // R_0000 nonzero violates antisymmetry
    CHECK_THROWS_AS(make_curvature(4, bad), std::invalid_argument);
}

TEST_CASE("ricci contraction convention matches the trace identities") {
    // Tr(lambda_+^p lambda_-^q) Ric_pq = 2^{n-1} R ties the contraction
    // convention to the exterior-algebra traces.
    for (int n : {4, 6}) {
        CurvaturePoint cp = sample_curvature(n, 2024, 3);
        const GeneratorTable& gen = GeneratorTable::get(n);
        GaussianRational acc;
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                if (sgn(cp.ric(p, q)) == 0) continue;
                acc += (gen.raising(p + 1) * gen.lowering(q + 1)).trace() *
                       GaussianRational(cp.ric(p, q));
            }
        CHECK(acc == GaussianRational(pow2(n - 1) * cp.scalar));
    }
}

TEST_CASE("sampling spans the space of algebraic curvature tensors") {
    // dim = n^2 (n^2 - 1) / 12 = 20 at n = 4.
    const int n = 4;
    std::vector<std::vector<Rational>> rows;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        rows.push_back(sample_curvature(n, seed, 3).riemann);
    CHECK(rational_rank(std::move(rows)) == 20);
}
