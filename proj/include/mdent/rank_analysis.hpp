#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mdent/tensor_core.hpp"

namespace mdent {

/// Per-party marginal ranks sorted non-increasing; every entry ≥ 1.
class RankVector {
 public:
  explicit RankVector(std::vector<int> ranks);

  const std::vector<int>& ranks() const { return ranks_; }
  int size() const { return static_cast<int>(ranks_.size()); }
  int operator[](int i) const { return ranks_[static_cast<std::size_t>(i)]; }

  friend bool operator==(const RankVector&, const RankVector&) = default;

 private:
  std::vector<int> ranks_;
};

/// Single-party marginal linear entropies sorted non-increasing, with the
/// party index realizing each sorted slot. Ties break by party index.
struct EntropyVector {
  std::vector<double> values;
  std::vector<int> party_of;
};

enum class OrderRelation { Equal, StrictlyBelow, StrictlyAbove, Incomparable };

struct ConjectureReport {
  bool holds = false;
  std::array<int, 3> single_ranks{};  // ranks of ρ_A, ρ_B, ρ_C
  std::array<int, 3> pair_ranks{};    // ranks of ρ_AB, ρ_AC, ρ_BC
  std::int64_t lhs = 0;               // r_AB·r_AC·r_BC
  std::int64_t rhs = 0;               // r_A·r_B·r_C
};

// Numerical ranks of all single-party marginals, sorted non-increasing.
RankVector schmidt_rank_vector(const PureState& psi, double rel_tol = kDefaultRankTol);

EntropyVector entropy_vector(const PureState& psi);

/// ⌈2/(2−E²)⌉ clamped to ≥ 1; a lower bound on the marginal rank that can
/// produce linear entropy E. Non-positive E certifies nothing (returns 1);
/// E ≥ √2 is outside the entropy range and throws. Values that sit exactly
/// on a threshold √(2(1−1/r)) must map to r, not r+1, so the ceiling is
/// guarded against FP noise.
int dim_bound_from_entropy(double entropy);

// True iff, sorted non-increasing as (r1,r2,r3), r1 ≤ r2·r3: necessary and
// sufficient for realizability by a tripartite pure state.
bool feasible_tripartite(int r_a, int r_b, int r_c);

// Evaluates r_AB·r_AC·r_BC ≥ r_A·r_B·r_C on the tripartite reduction of a
// 4-party pure state (parties 0,1,2 kept, party 3 traced out).
ConjectureReport conjecture_check_4party(const PureState& psi, double rel_tol = kDefaultRankTol);

OrderRelation compare_rank_vectors(const RankVector& a, const RankVector& b);

}  // namespace mdent
