#pragma once

#include <cstdint>
#include <vector>

namespace hodge {

/// Increasing multi-index J ⊆ {1..n} of a basis form dx^J, encoded as an
/// n-bit mask: bit p-1 set means p ∈ J. The increasing ordering makes each
/// subset's representative unique.
using MultiIndex = std::uint32_t;

constexpr int kMaxGenerators = 10;

inline bool contains(MultiIndex J, int p) { return (J >> (p - 1)) & 1u; }
inline int cardinality(MultiIndex J) { return __builtin_popcount(J); }

struct EpsResult {
    int sign = 0;        // +1, -1, or 0 when the operation annihilates
    MultiIndex index = 0;
};

/// Signed insertion of p into J: sign is the parity of moving p from the
/// front of the juxtaposed sequence pJ into its increasing slot.
/// Returns sign 0 when p ∈ J.
EpsResult eps_insert(int p, MultiIndex J);

/// Signed removal of p from J, the transpose counterpart of eps_insert.
/// Returns sign 0 when p ∉ J.
EpsResult eps_remove(int p, MultiIndex J);

/// Fixed basis enumeration of the 2^n subsets, sorted by (cardinality,
/// lexicographic on the increasing index sequence) so the degree blocks of an
/// endomorphism are contiguous.
class ExtBasis {
  public:
    static const ExtBasis& get(int n);

    int generators() const { return n_; }
    int dimension() const { return static_cast<int>(order_.size()); }
    MultiIndex mask_at(int position) const { return order_[position]; }
    int position_of(MultiIndex mask) const { return position_[mask]; }

  private:
    explicit ExtBasis(int n);
    int n_;
    std::vector<MultiIndex> order_;
    std::vector<int> position_;
};

}  // namespace hodge
