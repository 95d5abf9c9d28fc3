#include "hodge/ext_endo.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace hodge {

ExtEndo::ExtEndo(int n) : n_(n), dim_(1 << n), cols_(dim_) {
    if (n < 1 || n > kMaxGenerators) throw std::invalid_argument("endomorphism dimension out of range");
}

ExtEndo ExtEndo::identity(int n) { return scalar(n, GaussianRational(Rational(1))); }

ExtEndo ExtEndo::scalar(int n, const GaussianRational& z) {
    ExtEndo m(n);
    if (!z.is_zero())
        for (int j = 0; j < m.dim_; ++j) m.cols_[j].emplace_back(j, z);
    return m;
}

bool ExtEndo::is_zero() const {
    for (const auto& c : cols_)
        if (!c.empty()) return false;
    return true;
}

std::size_t ExtEndo::nnz() const {
    std::size_t total = 0;
    for (const auto& c : cols_) total += c.size();
    return total;
}

void ExtEndo::add_entry(int row, int col, const GaussianRational& z) {
    if (z.is_zero()) return;
    auto& c = cols_[col];
    auto it = std::lower_bound(c.begin(), c.end(), row,
                               [](const auto& e, int r) { return e.first < r; });
    if (it != c.end() && it->first == row) {
        it->second += z;
        if (it->second.is_zero()) c.erase(it);
    } else {
        c.insert(it, {row, z});
    }
}

GaussianRational ExtEndo::entry(int row, int col) const {
    const auto& c = cols_[col];
    auto it = std::lower_bound(c.begin(), c.end(), row,
                               [](const auto& e, int r) { return e.first < r; });
    if (it != c.end() && it->first == row) return it->second;
    return {};
}

ExtEndo& ExtEndo::operator+=(const ExtEndo& o) {
    for (int j = 0; j < dim_; ++j)
        for (const auto& [r, v] : o.cols_[j]) add_entry(r, j, v);
    return *this;
}

ExtEndo& ExtEndo::operator-=(const ExtEndo& o) {
    for (int j = 0; j < dim_; ++j)
        for (const auto& [r, v] : o.cols_[j]) add_entry(r, j, -v);
    return *this;
}

ExtEndo operator*(const ExtEndo& a, const ExtEndo& b) {
    ExtEndo out(a.n_);
    // Accumulate column j of the product as a * b.col(j) into a dense scratch.
    std::vector<GaussianRational> scratch(a.dim_);
    std::vector<int> touched;
    touched.reserve(64);
    for (int j = 0; j < a.dim_; ++j) {
        for (const auto& [k, bv] : b.cols_[j]) {
            for (const auto& [r, av] : a.cols_[k]) {
                if (scratch[r].is_zero()) touched.push_back(r);
                scratch[r] += av * bv;
            }
        }
        if (touched.empty()) continue;
        std::sort(touched.begin(), touched.end());
        auto& col = out.cols_[j];
        for (int r : touched) {
            if (!scratch[r].is_zero()) col.emplace_back(r, scratch[r]);
            scratch[r] = GaussianRational{};
        }
        touched.clear();
    }
    return out;
}

bool operator==(const ExtEndo& a, const ExtEndo& b) {
    return a.n_ == b.n_ && a.cols_ == b.cols_;
}

ExtEndo ExtEndo::scaled(const GaussianRational& z) const {
    ExtEndo out(n_);
    if (z.is_zero()) return out;
    for (int j = 0; j < dim_; ++j) {
        out.cols_[j].reserve(cols_[j].size());
        for (const auto& [r, v] : cols_[j]) out.cols_[j].emplace_back(r, v * z);
    }
    return out;
}

ExtEndo ExtEndo::transpose() const {
    ExtEndo out(n_);
    for (int j = 0; j < dim_; ++j)
        for (const auto& [r, v] : cols_[j]) out.add_entry(j, r, v);
    return out;
}

ExtEndo ExtEndo::conj_transpose() const {
    ExtEndo out(n_);
    for (int j = 0; j < dim_; ++j)
        for (const auto& [r, v] : cols_[j]) out.add_entry(j, r, v.conj());
    return out;
}

GaussianRational ExtEndo::trace() const {
    GaussianRational t;
    for (int j = 0; j < dim_; ++j) t += entry(j, j);
    return t;
}

std::optional<GaussianRational> ExtEndo::scalar_multiple_of_identity() const {
    GaussianRational c = entry(0, 0);
    for (int j = 0; j < dim_; ++j) {
        const auto& col = cols_[j];
        if (c.is_zero()) {
            if (!col.empty()) return std::nullopt;
        } else {
            if (col.size() != 1 || col[0].first != j || !(col[0].second == c)) return std::nullopt;
        }
    }
    return c;
}

ExtEndo lambda_plus(int p, int n) {
    const ExtBasis& basis = ExtBasis::get(n);
    ExtEndo m(n);
    for (int col = 0; col < basis.dimension(); ++col) {
        EpsResult e = eps_insert(p, basis.mask_at(col));
        if (e.sign != 0)
            m.add_entry(basis.position_of(e.index), col, GaussianRational(Rational(e.sign)));
    }
    return m;
}

ExtEndo lambda_minus(int p, int n) {
    const ExtBasis& basis = ExtBasis::get(n);
    ExtEndo m(n);
    for (int col = 0; col < basis.dimension(); ++col) {
        EpsResult e = eps_remove(p, basis.mask_at(col));
        if (e.sign != 0)
            m.add_entry(basis.position_of(e.index), col, GaussianRational(Rational(e.sign)));
    }
    return m;
}

ExtEndo gamma(int p, int n) {
    ExtEndo diff = lambda_plus(p, n) - lambda_minus(p, n);
    return diff.scaled(GaussianRational(Rational(0), Rational(-1)));
}

GeneratorTable::GeneratorTable(int n) : identity_(ExtEndo::identity(n)) {
    raising_.reserve(n);
    lowering_.reserve(n);
    clifford_.reserve(n);
    for (int p = 1; p <= n; ++p) {
        raising_.push_back(lambda_plus(p, n));
        lowering_.push_back(lambda_minus(p, n));
        clifford_.push_back(gamma(p, n));
    }
}

const GeneratorTable& GeneratorTable::get(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GeneratorTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) slot.reset(new GeneratorTable(n));
    return *slot;
}

}  // namespace hodge
