#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace hodge {

/// Exact rational scalar. All arithmetic in the library is exact; no floating
/// point ever enters a production code path.
using Rational = mpq_class;

/// Builds a canonicalized rational from numerator/denominator.
inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input.
Rational rat_from_string(const std::string& text);

/// 2^k as an exact rational, k >= 0.
inline Rational pow2(int k) {
    mpz_class z(1);
    z <<= k;
    return Rational(z);
}

inline std::string rat_to_string(const Rational& q) { return q.get_str(); }

/// Element a + b*i of Q(i), the coefficient field of every endomorphism here.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational unit_i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }

    GaussianRational conj() const { return {re, -im}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

    /// Multiplicative inverse; throws on zero.
    GaussianRational inverse() const {
        Rational norm = re * re + im * im;
        if (sgn(norm) == 0) throw std::domain_error("inverse of zero in Q(i)");
        return {re / norm, -im / norm};
    }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    std::string to_string() const;
};

}  // namespace hodge
