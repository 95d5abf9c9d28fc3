#pragma once

#include <map>
#include <vector>

#include "hodge/ext_endo.hpp"
#include "hodge/rational.hpp"

namespace hodge {

/// One factor of a word in the raising/lowering generators.
struct LambdaOp {
    bool raising = true;  // true: degree-raising, false: degree-lowering
    int index = 1;        // 1..n
    friend bool operator==(const LambdaOp&, const LambdaOp&) = default;
};

using LambdaWord = std::vector<LambdaOp>;

/// A word with every raising factor before every lowering factor.
struct SortedWord {
    std::vector<int> raises;
    std::vector<int> lowers;
    friend auto operator<=>(const SortedWord&, const SortedWord&) = default;
};

/// Rewrites an arbitrary word as an exact linear combination of sorted words
/// using the canonical anticommutation relations. Words with a repeated
/// raising (or lowering) index vanish and are dropped.
std::map<SortedWord, Rational> normal_order(const LambdaWord& word);

/// Trace of the sorted word lambda_+^{p1}..lambda_+^{pk} lambda_-^{q1}..lambda_-^{qk}
/// on the 2^n-dimensional exterior algebra, evaluated by the contraction
/// recursion Tr = 1/2 sum_j (-1)^{k-j} delta^{p1 qj} Tr(shorter word) with the
/// empty word tracing to 2^n. Throws on length mismatch.
Rational trace_recursive(const std::vector<int>& ps, const std::vector<int>& qs, int n);

/// Trace of an arbitrary word: normal-orders first, then applies the
/// recursion to each sorted word.
Rational trace_word(const LambdaWord& word, int n);

/// Dense oracle: multiplies the generator matrices out and takes the trace.
ExtEndo word_matrix(const LambdaWord& word, int n);

}  // namespace hodge
