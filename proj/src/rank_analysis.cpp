#include "mdent/rank_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace mdent {

RankVector::RankVector(std::vector<int> ranks) : ranks_(std::move(ranks)) {
  if (ranks_.empty()) throw std::invalid_argument("RankVector: at least one entry required");
  for (int r : ranks_) {
    if (r < 1) throw std::invalid_argument("RankVector: entries must be >= 1");
  }
  std::sort(ranks_.begin(), ranks_.end(), std::greater<int>());
}

RankVector schmidt_rank_vector(const PureState& psi, double rel_tol) {
  std::vector<int> ranks;
  ranks.reserve(static_cast<std::size_t>(psi.structure().num_parties()));
  for (int j = 0; j < psi.structure().num_parties(); ++j) {
    ranks.push_back(numerical_rank(marginal(psi, {j}), rel_tol));
  }
  return RankVector(std::move(ranks));
}

EntropyVector entropy_vector(const PureState& psi) {
  const int n = psi.structure().num_parties();
  std::vector<double> entropies(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    entropies[static_cast<std::size_t>(j)] = linear_entropy(marginal(psi, {j}));
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return entropies[static_cast<std::size_t>(a)] > entropies[static_cast<std::size_t>(b)];
  });
  EntropyVector result;
  result.values.reserve(order.size());
  result.party_of = order;
  for (int party : order) result.values.push_back(entropies[static_cast<std::size_t>(party)]);
  return result;
}

int dim_bound_from_entropy(double entropy) {
  if (entropy <= 0.0) return 1;
  const double remainder = 2.0 - entropy * entropy;
  if (entropy >= std::numbers::sqrt2 || remainder <= 0.0) {
    throw std::invalid_argument("dim_bound_from_entropy: value outside the entropy range [0,√2)");
  }
  // An entropy exactly at a rank-r threshold certifies r, not r+1; the small
  // backoff keeps FP noise at those thresholds from over-certifying.
  double bound = std::ceil(2.0 / remainder - 1e-9);
  bound = std::clamp(bound, 1.0, static_cast<double>(std::numeric_limits<int>::max()));
  return static_cast<int>(bound);
}

bool feasible_tripartite(int r_a, int r_b, int r_c) {
  if (r_a < 1 || r_b < 1 || r_c < 1) {
    throw std::invalid_argument("feasible_tripartite: ranks must be positive");
  }
  std::array<std::int64_t, 3> sorted{r_a, r_b, r_c};
  std::sort(sorted.begin(), sorted.end(), std::greater<std::int64_t>());
  return sorted[0] <= sorted[1] * sorted[2];
}

ConjectureReport conjecture_check_4party(const PureState& psi, double rel_tol) {
  if (psi.structure().num_parties() != 4) {
    throw std::invalid_argument("conjecture_check_4party: state must have exactly 4 parties");
  }
  ConjectureReport report;
  const std::array<std::vector<int>, 3> singles{{{0}, {1}, {2}}};
  const std::array<std::vector<int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  for (std::size_t i = 0; i < 3; ++i) {
    report.single_ranks[i] = numerical_rank(marginal(psi, singles[i]), rel_tol);
    report.pair_ranks[i] = numerical_rank(marginal(psi, pairs[i]), rel_tol);
  }
  report.lhs = static_cast<std::int64_t>(report.pair_ranks[0]) * report.pair_ranks[1] *
               report.pair_ranks[2];
  report.rhs = static_cast<std::int64_t>(report.single_ranks[0]) * report.single_ranks[1] *
               report.single_ranks[2];
  report.holds = report.lhs >= report.rhs;
  return report;
}

OrderRelation compare_rank_vectors(const RankVector& a, const RankVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("compare_rank_vectors: vectors must have equal length");
  }
  bool any_less = false;
  bool any_greater = false;
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) any_less = true;
    if (a[i] > b[i]) any_greater = true;
  }
  if (any_less && any_greater) return OrderRelation::Incomparable;
  if (any_less) return OrderRelation::StrictlyBelow;
  if (any_greater) return OrderRelation::StrictlyAbove;
  return OrderRelation::Equal;
}

}  // namespace mdent
