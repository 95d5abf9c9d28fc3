#include "hodge/json_io.hpp"

#include <stdexcept>

namespace hodge {

Json density_to_json(const ResidueDensity& d) {
    Json j;
    j["num"] = d.value.re.get_num().get_str();
    j["den"] = d.value.re.get_den().get_str();
    j["unit"] = "v_" + std::to_string(d.n - 1);
    if (!d.value.is_real()) j["imaginary"] = d.value.im.get_str();
    if (!d.has_minus_n_part) j["no_order_minus_n_part"] = true;
    return j;
}

Json report_to_json(const FunctionalReport& r) {
    Json j;
    j["name"] = r.name;
    j["lhs_density"] = density_to_json(r.lhs);
    j["rhs_density"] = density_to_json(r.rhs);
    j["match"] = r.match;
    j["curvature_seed"] = r.curvature_seed;
    j["inputs"] = r.inputs;
    return j;
}

Json curvature_to_json(const CurvaturePoint& cp) {
    const int n = cp.n;
    Json riem = Json::array();
    for (int a = 0; a < n; ++a) {
        Json ja = Json::array();
        for (int b = 0; b < n; ++b) {
            Json jb = Json::array();
            for (int c = 0; c < n; ++c) {
                Json jc = Json::array();
                for (int d = 0; d < n; ++d) jc.push_back(cp.riem(a, b, c, d).get_str());
                jb.push_back(std::move(jc));
            }
            ja.push_back(std::move(jb));
        }
        riem.push_back(std::move(ja));
    }
    return Json{{"n", n}, {"riemann", std::move(riem)}};
}

namespace {

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    throw std::invalid_argument("curvature entries must be \"p/q\" strings or integers");
}

}  // namespace

CurvaturePoint curvature_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("riemann"))
        throw std::invalid_argument("curvature document needs fields 'n' and 'riemann'");
    const int n = j.at("n").get<int>();
    if (n < 2 || n % 2 != 0 || n > kMaxGenerators)
        throw std::invalid_argument("curvature dimension must be even and between 2 and 10");
    const Json& riem = j.at("riemann");
    std::vector<Rational> entries;
    entries.reserve(static_cast<std::size_t>(n) * n * n * n);
    if (!riem.is_array() || static_cast<int>(riem.size()) != n)
        throw std::invalid_argument("riemann array has the wrong shape");
    for (int a = 0; a < n; ++a) {
        const Json& ja = riem.at(a);
        if (!ja.is_array() || static_cast<int>(ja.size()) != n)
            throw std::invalid_argument("riemann array has the wrong shape");
        for (int b = 0; b < n; ++b) {
            const Json& jb = ja.at(b);
            if (!jb.is_array() || static_cast<int>(jb.size()) != n)
                throw std::invalid_argument("riemann array has the wrong shape");
            for (int c = 0; c < n; ++c) {
                const Json& jc = jb.at(c);
                if (!jc.is_array() || static_cast<int>(jc.size()) != n)
                    throw std::invalid_argument("riemann array has the wrong shape");
                for (int d = 0; d < n; ++d) entries.push_back(rational_from_json(jc.at(d)));
            }
        }
    }
    return make_curvature(n, std::move(entries));  // re-validates the symmetries
}

Json symbol_to_json(const GradedSymbol& sym) {
    Json parts = Json::array();
    for (const auto& [h, buckets] : sym.levels)
        for (const auto& [s, poly] : buckets)
            for (const auto& [mono, coeff] : poly) {
                Json part;
                part["homogeneity"] = h;
                part["inv_norm_power"] = s;
                Json xi = Json::array(), x = Json::array();
                for (int v = 0; v < sym.n; ++v) {
                    xi.push_back(exp_of(mono.xi, v));
                    x.push_back(exp_of(mono.x, v));
                }
                part["xi"] = std::move(xi);
                part["x"] = std::move(x);
                Json entries = Json::array();
                for (int col = 0; col < coeff.dimension(); ++col)
                    for (const auto& [row, value] : coeff.column(col))
                        entries.push_back(Json::array(
                            {row, col, value.re.get_str(), value.im.get_str()}));
                part["entries"] = std::move(entries);
                parts.push_back(std::move(part));
            }
    return Json{{"n", sym.n}, {"top_order", sym.top_order}, {"parts", std::move(parts)}};
}

}  // namespace hodge
