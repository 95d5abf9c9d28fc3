#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hodge/multi_index.hpp"
#include "hodge/rational.hpp"

namespace hodge {

/// Sparse endomorphism of the 2^n-dimensional complex exterior algebra,
/// entries in Q(i). Column-major: cols[c] holds (row, value) pairs sorted by
/// row, only nonzero values stored. Immutable by convention once built, so
/// instances can be shared freely across threads.
class ExtEndo {
  public:
    ExtEndo() = default;
    explicit ExtEndo(int n);

    static ExtEndo zero(int n) { return ExtEndo(n); }
    static ExtEndo identity(int n);
    static ExtEndo scalar(int n, const GaussianRational& z);

    int generators() const { return n_; }
    int dimension() const { return dim_; }
    bool is_zero() const;
    std::size_t nnz() const;

    /// Adds z to entry (row, col); erases the entry if the sum vanishes.
    void add_entry(int row, int col, const GaussianRational& z);
    GaussianRational entry(int row, int col) const;
    const std::vector<std::pair<int, GaussianRational>>& column(int col) const { return cols_[col]; }

    ExtEndo& operator+=(const ExtEndo& o);
    ExtEndo& operator-=(const ExtEndo& o);
    friend ExtEndo operator+(ExtEndo a, const ExtEndo& b) { return a += b; }
    friend ExtEndo operator-(ExtEndo a, const ExtEndo& b) { return a -= b; }
    friend ExtEndo operator*(const ExtEndo& a, const ExtEndo& b);
    friend bool operator==(const ExtEndo& a, const ExtEndo& b);

    ExtEndo scaled(const GaussianRational& z) const;
    ExtEndo transpose() const;
    ExtEndo conj_transpose() const;

    /// Exact sum of diagonal entries.
    GaussianRational trace() const;

    /// Returns c when the matrix equals c * identity (including c = 0 for the
    /// zero matrix), otherwise nullopt.
    std::optional<GaussianRational> scalar_multiple_of_identity() const;

  private:
    int n_ = 0;
    int dim_ = 0;
    std::vector<std::vector<std::pair<int, GaussianRational>>> cols_;
};

/// Degree-raising operator with components given by signed insertion.
ExtEndo lambda_plus(int p, int n);
/// Degree-lowering operator, the transpose of lambda_plus.
ExtEndo lambda_minus(int p, int n);
/// Clifford generator -i(lambda_plus - lambda_minus); entries in {0, ±i}.
ExtEndo gamma(int p, int n);

/// Immutable per-dimension cache of the generator matrices; safe to share
/// across threads after first use.
class GeneratorTable {
  public:
    static const GeneratorTable& get(int n);
    const ExtEndo& raising(int p) const { return raising_[p - 1]; }
    const ExtEndo& lowering(int p) const { return lowering_[p - 1]; }
    const ExtEndo& clifford(int p) const { return clifford_[p - 1]; }
    const ExtEndo& id() const { return identity_; }

  private:
    explicit GeneratorTable(int n);
    std::vector<ExtEndo> raising_, lowering_, clifford_;
    ExtEndo identity_;
};

}  // namespace hodge
