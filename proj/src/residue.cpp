#include "hodge/residue.hpp"

namespace hodge {

std::string ResidueDensity::to_string() const {
    return value.to_string() + " * v_" + std::to_string(n - 1);
}

Rational sphere_moment(const std::vector<int>& exponents) {
    const int n = static_cast<int>(exponents.size());
    long a_total = 0;
    Rational num(1);
    for (int e : exponents) {
        if (e % 2 != 0) return Rational(0);
        a_total += e / 2;
        for (int f = e - 1; f >= 3; f -= 2) num *= f;  // (e-1)!!
    }
    Rational den(1);
    for (long i = 1; i <= a_total; ++i) den *= Rational(n + 2 * i - 2);
    return num / den;
}

ExtEndo sphere_average_minus_n(const GradedSymbol& p) {
    const int n = p.n;
    ExtEndo acc(n);
    auto level = p.levels.find(-n);
    if (level == p.levels.end()) return acc;
    std::vector<int> exps(n);
    for (const auto& [s, poly] : level->second)
        for (const auto& [mono, coeff] : poly) {
            if (mono.x != 0) continue;  // evaluate at x = 0
            for (int v = 0; v < n; ++v) exps[v] = exp_of(mono.xi, v);
            Rational m = sphere_moment(exps);
            if (sgn(m) == 0) continue;
            acc += coeff.scaled(GaussianRational(m));
        }
    return acc;
}

ResidueDensity wres_density(const GradedSymbol& p) {
    ResidueDensity out;
    out.n = p.n;
    auto level = p.levels.find(-p.n);
    bool has_content = false;
    if (level != p.levels.end())
        for (const auto& [s, poly] : level->second)
            if (!poly.empty()) has_content = true;
    out.has_minus_n_part = has_content;
    if (has_content) out.value = sphere_average_minus_n(p).trace();
    return out;
}

}  // namespace hodge
