#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hodge/ext_endo.hpp"
#include "hodge/multi_index.hpp"

using namespace hodge;

namespace {

MultiIndex mask(std::initializer_list<int> members) {
    MultiIndex m = 0;
    for (int p : members) m |= MultiIndex{1} << (p - 1);
    return m;
}

GaussianRational g(long num, long den = 1) { return GaussianRational(rat(num, den)); }

}  // namespace

TEST_CASE("signed insertion") {
    auto r = eps_insert(1, mask({}));
    CHECK(r.sign == 1);
    CHECK(r.index == mask({1}));

    r = eps_insert(1, mask({2}));
    CHECK(r.sign == 1);
    CHECK(r.index == mask({1, 2}));

    r = eps_insert(2, mask({1, 3}));
    CHECK(r.sign == -1);
    CHECK(r.index == mask({1, 2, 3}));

    CHECK(eps_insert(2, mask({2})).sign == 0);
}

TEST_CASE("signed removal") {
    auto r = eps_remove(1, mask({1}));
    CHECK(r.sign == 1);
    CHECK(r.index == mask({}));

    r = eps_remove(2, mask({1, 2}));
    CHECK(r.sign == -1);
    CHECK(r.index == mask({1}));

    CHECK(eps_remove(3, mask({1, 2})).sign == 0);
}

TEST_CASE("removal is the transpose of insertion") {
    for (int n : {3, 5}) {
        for (int p = 1; p <= n; ++p)
            CHECK(lambda_minus(p, n) == lambda_plus(p, n).transpose());
    }
}

TEST_CASE("basis order groups degrees") {
    const ExtBasis& b = ExtBasis::get(3);
    CHECK(b.dimension() == 8);
    CHECK(b.mask_at(0) == mask({}));
    // degree-1 block in index order
    CHECK(b.mask_at(1) == mask({1}));
    CHECK(b.mask_at(2) == mask({2}));
    CHECK(b.mask_at(3) == mask({3}));
    // degree-2 block lexicographic on sequences
    CHECK(b.mask_at(4) == mask({1, 2}));
    CHECK(b.mask_at(5) == mask({1, 3}));
    CHECK(b.mask_at(6) == mask({2, 3}));
    CHECK(b.mask_at(7) == mask({1, 2, 3}));
    for (int pos = 0; pos < b.dimension(); ++pos) CHECK(b.position_of(b.mask_at(pos)) == pos);
}

TEST_CASE("raising operator at n=2 maps the full basis") {
    const ExtBasis& b = ExtBasis::get(2);
    ExtEndo lp1 = lambda_plus(1, 2);
    CHECK(lp1.nnz() == 2);
    CHECK(lp1.entry(b.position_of(mask({1})), b.position_of(mask({}))) == g(1));
    CHECK(lp1.entry(b.position_of(mask({1, 2})), b.position_of(mask({2}))) == g(1));
    // annihilates forms already containing dx^1
    CHECK(lp1.column(b.position_of(mask({1}))).empty());
    CHECK(lp1.column(b.position_of(mask({1, 2}))).empty());
}

TEST_CASE("anticommutation relations hold exactly") {
    for (int n : {2, 4, 6}) {
        for (int p = 1; p <= n; ++p)
            for (int r = 1; r <= n; ++r) {
                ExtEndo lp_p = lambda_plus(p, n), lp_r = lambda_plus(r, n);
                ExtEndo lm_p = lambda_minus(p, n), lm_r = lambda_minus(r, n);
                CHECK((lp_p * lp_r + lp_r * lp_p).is_zero());
                CHECK((lm_p * lm_r + lm_r * lm_p).is_zero());
                ExtEndo mixed = lp_p * lm_r + lm_r * lp_p;
                if (p == r)
                    CHECK(mixed == ExtEndo::identity(n));
                else
                    CHECK(mixed.is_zero());
            }
    }
}

TEST_CASE("Clifford relation and self-adjointness") {
    for (int n : {2, 4}) {
        for (int p = 1; p <= n; ++p) {
            ExtEndo gp = gamma(p, n);
            CHECK(gp == gp.conj_transpose());
            for (int r = 1; r <= n; ++r) {
                ExtEndo anti = gp * gamma(r, n) + gamma(r, n) * gp;
                if (p == r)
                    CHECK(anti == ExtEndo::scalar(n, g(2)));
                else
                    CHECK(anti.is_zero());
            }
        }
    }
}

TEST_CASE("gamma entries are purely imaginary units") {
    ExtEndo gp = gamma(2, 4);
    for (int col = 0; col < gp.dimension(); ++col)
        for (const auto& [row, v] : gp.column(col)) {
            CHECK(sgn(v.re) == 0);
            CHECK((v.im == 1 || v.im == -1));
        }
}

TEST_CASE("trace basics") {
    CHECK(ExtEndo::identity(4).trace() == g(16));
    for (int n : {4, 6})
        for (int p = 1; p <= n; ++p)
            for (int q = 1; q <= n; ++q) {
                GaussianRational t = (lambda_plus(p, n) * lambda_minus(q, n)).trace();
                CHECK(t == (p == q ? GaussianRational(pow2(n - 1)) : GaussianRational{}));
            }
}

TEST_CASE("scalar detection") {
    CHECK(ExtEndo::identity(3).scalar_multiple_of_identity().value() == g(1));
    CHECK(ExtEndo::zero(3).scalar_multiple_of_identity().value() == g(0));
    CHECK(!lambda_plus(1, 3).scalar_multiple_of_identity().has_value());
    ExtEndo almost = ExtEndo::scalar(3, g(5));
    almost.add_entry(2, 2, g(1));
    CHECK(!almost.scalar_multiple_of_identity().has_value());
}
