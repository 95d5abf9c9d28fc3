#include "hodge/rational.hpp"

namespace hodge {

Rational rat_from_string(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    Rational q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("malformed rational literal: " + text);
    if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
}

std::string GaussianRational::to_string() const {
    if (is_real()) return re.get_str();
    if (sgn(re) == 0) return im.get_str() + "i";
    std::string s = re.get_str();
    if (sgn(im) > 0) s += "+";
    s += im.get_str() + "i";
    return s;
}

}  // namespace hodge
