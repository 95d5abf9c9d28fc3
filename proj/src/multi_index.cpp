#include "hodge/multi_index.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace hodge {

EpsResult eps_insert(int p, MultiIndex J) {
    if (contains(J, p)) return {0, 0};
    // Parity of moving p past the members of J smaller than p.
    MultiIndex below = J & ((MultiIndex{1} << (p - 1)) - 1);
    int sign = (__builtin_popcount(below) % 2 == 0) ? 1 : -1;
    return {sign, J | (MultiIndex{1} << (p - 1))};
}

EpsResult eps_remove(int p, MultiIndex J) {
    if (!contains(J, p)) return {0, 0};
    MultiIndex I = J & ~(MultiIndex{1} << (p - 1));
    MultiIndex below = I & ((MultiIndex{1} << (p - 1)) - 1);
    int sign = (__builtin_popcount(below) % 2 == 0) ? 1 : -1;
    return {sign, I};
}

namespace {

std::vector<int> members(MultiIndex J) {
    std::vector<int> out;
    for (int p = 1; J; ++p, J >>= 1)
        if (J & 1u) out.push_back(p);
    return out;
}

}  // namespace

ExtBasis::ExtBasis(int n) : n_(n) {
    const int dim = 1 << n;
    order_.resize(dim);
    for (int m = 0; m < dim; ++m) order_[m] = static_cast<MultiIndex>(m);
    std::sort(order_.begin(), order_.end(), [](MultiIndex a, MultiIndex b) {
        int ca = cardinality(a), cb = cardinality(b);
        if (ca != cb) return ca < cb;
        return members(a) < members(b);
    });
    position_.resize(dim);
    for (int pos = 0; pos < dim; ++pos) position_[order_[pos]] = pos;
}

const ExtBasis& ExtBasis::get(int n) {
    if (n < 1 || n > kMaxGenerators) throw std::invalid_argument("basis dimension out of range");
    static const std::array<ExtBasis, kMaxGenerators> tables = [] {
        return std::array<ExtBasis, kMaxGenerators>{
            ExtBasis(1), ExtBasis(2), ExtBasis(3), ExtBasis(4),  ExtBasis(5),
            ExtBasis(6), ExtBasis(7), ExtBasis(8), ExtBasis(9), ExtBasis(10)};
    }();
    return tables[n - 1];
}

}  // namespace hodge
