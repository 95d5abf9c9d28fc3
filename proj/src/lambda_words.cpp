#include "hodge/lambda_words.hpp"

#include <stdexcept>

namespace hodge {

namespace {

void normal_order_rec(LambdaWord word, Rational coeff, std::map<SortedWord, Rational>& out) {
    // Find the leftmost lowering factor standing before a raising factor.
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
        if (!word[i].raising && word[i + 1].raising) {
            // lower(q) raise(p) = delta_{pq} - raise(p) lower(q)
            if (word[i].index == word[i + 1].index) {
                LambdaWord contracted;
                contracted.reserve(word.size() - 2);
                contracted.insert(contracted.end(), word.begin(), word.begin() + i);
                contracted.insert(contracted.end(), word.begin() + i + 2, word.end());
                normal_order_rec(std::move(contracted), coeff, out);
            }
            std::swap(word[i], word[i + 1]);
            normal_order_rec(std::move(word), -coeff, out);
            return;
        }
    }
    SortedWord sorted;
    for (const LambdaOp& op : word)
        (op.raising ? sorted.raises : sorted.lowers).push_back(op.index);
    // A repeated index within the raising (or lowering) block annihilates.
    for (const auto* block : {&sorted.raises, &sorted.lowers})
        for (std::size_t i = 0; i < block->size(); ++i)
            for (std::size_t j = i + 1; j < block->size(); ++j)
                if ((*block)[i] == (*block)[j]) return;
    auto [it, inserted] = out.try_emplace(std::move(sorted), coeff);
    if (!inserted) {
        it->second += coeff;
        if (sgn(it->second) == 0) out.erase(it);
    }
}

}  // namespace

std::map<SortedWord, Rational> normal_order(const LambdaWord& word) {
    std::map<SortedWord, Rational> out;
    normal_order_rec(word, Rational(1), out);
    return out;
}

Rational trace_recursive(const std::vector<int>& ps, const std::vector<int>& qs, int n) {
    if (ps.size() != qs.size())
        throw std::invalid_argument("trace recursion needs equally many raising and lowering factors");
    if (ps.empty()) return pow2(n);  // trace of the identity
    const int k = static_cast<int>(ps.size());
    std::vector<int> rest_p(ps.begin() + 1, ps.end());
    Rational total(0);
    for (int j = 1; j <= k; ++j) {
        if (ps[0] != qs[j - 1]) continue;
        std::vector<int> rest_q;
        rest_q.reserve(qs.size() - 1);
        for (int t = 0; t < k; ++t)
            if (t != j - 1) rest_q.push_back(qs[t]);
        Rational sub = trace_recursive(rest_p, rest_q, n);
        if ((k - j) % 2 != 0) sub = -sub;
        total += sub;
    }
    return total / 2;
}

Rational trace_word(const LambdaWord& word, int n) {
    Rational total(0);
    for (const auto& [sorted, coeff] : normal_order(word)) {
        if (sorted.raises.size() != sorted.lowers.size()) continue;  // off-diagonal blocks
        total += coeff * trace_recursive(sorted.raises, sorted.lowers, n);
    }
    return total;
}

ExtEndo word_matrix(const LambdaWord& word, int n) {
    ExtEndo acc = ExtEndo::identity(n);
    for (const LambdaOp& op : word)
        acc = acc * (op.raising ? lambda_plus(op.index, n) : lambda_minus(op.index, n));
    return acc;
}

}  // namespace hodge
