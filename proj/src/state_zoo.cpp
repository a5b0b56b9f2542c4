#include "mdent/state_zoo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "mdent/random.hpp"
#include "mdent/tensor_core.hpp"

namespace mdent {

namespace {
constexpr double kSimplexSlack = 1e-12;
}

NoiseParams::NoiseParams(double p_in, double q_in) : p(p_in), q(q_in) {
  if (!(p >= 0.0) || !(q >= 0.0)) {
    throw std::invalid_argument("NoiseParams: weights must be non-negative");
  }
  if (p + q > 1.0 + kSimplexSlack) {
    throw std::invalid_argument("NoiseParams: p+q = " + std::to_string(p + q) + " exceeds 1");
  }
}

PureState state_from_terms(const PartyStructure& structure,
                           const std::vector<std::pair<MultiIndex, Complex>>& terms) {
  if (terms.empty()) throw std::invalid_argument("state_from_terms: at least one term required");
  Eigen::VectorXcd amplitudes = Eigen::VectorXcd::Zero(structure.total_dim());
  std::set<FlatIndex> seen;
  for (const auto& [idx, coefficient] : terms) {
    const FlatIndex flat = structure.flat_index(idx);
    if (!seen.insert(flat).second) {
      throw std::invalid_argument("state_from_terms: duplicate index at flat position " +
                                  std::to_string(flat));
    }
    amplitudes(flat) = coefficient;
  }
  const double norm = amplitudes.norm();
  if (norm <= 0.0) throw std::invalid_argument("state_from_terms: all amplitudes vanish");
  return PureState(structure, amplitudes / norm);
}

PureState psi_332() {
  const PartyStructure qudits({7, 7, 7});
  return state_from_terms(qudits, {{{0, 0, 0}, 1.0}, {{1, 1, 1}, 1.0}, {{1, 2, 2}, 1.0}});
}

PureState psi_422() {
  const PartyStructure qudits({7, 7, 7});
  return state_from_terms(
      qudits, {{{3, 3, 3}, 1.0}, {{3, 4, 4}, 1.0}, {{4, 3, 5}, 1.0}, {{4, 4, 6}, 1.0}});
}

PureState psi_432() {
  const PartyStructure qudits({4, 4, 4});
  return state_from_terms(
      qudits, {{{0, 0, 0}, 1.0}, {{1, 1, 1}, 1.0}, {{0, 1, 2}, 1.0}, {{1, 2, 3}, 1.0}});
}

PureState canonical_rank_state(int r_b, int r_c, int keep_terms) {
  if (r_b < 1 || r_c < 1) {
    throw std::invalid_argument("canonical_rank_state: r_b and r_c must be >= 1");
  }
  const int total = r_b * r_c;
  if (keep_terms < 1 || keep_terms > total) {
    throw std::invalid_argument("canonical_rank_state: keep_terms " + std::to_string(keep_terms) +
                                " outside [1," + std::to_string(total) + "]");
  }
  // Coverage-first order: the diagonal transversal hits every B and C level
  // within the first max(r_b, r_c) terms, so keeping the first r terms
  // realizes the sorted rank vector (r, r_b, r_c) whenever r >= max(r_b,r_c).
  std::vector<std::pair<int, int>> order;
  order.reserve(static_cast<std::size_t>(total));
  std::set<std::pair<int, int>> used;
  for (int j = 0; j < std::max(r_b, r_c); ++j) {
    const std::pair<int, int> diag{j % r_b, j % r_c};
    if (used.insert(diag).second) order.push_back(diag);
  }
  for (int m = 0; m < r_b; ++m) {
    for (int n = 0; n < r_c; ++n) {
      const std::pair<int, int> cell{m, n};
      if (used.insert(cell).second) order.push_back(cell);
    }
  }

  const PartyStructure structure({total, r_b, r_c});
  std::vector<std::pair<MultiIndex, Complex>> terms;
  terms.reserve(static_cast<std::size_t>(keep_terms));
  for (int t = 0; t < keep_terms; ++t) {
    const auto [m, n] = order[static_cast<std::size_t>(t)];
    terms.push_back({MultiIndex{m * r_c + n, m, n}, Complex(1.0, 0.0)});
  }
  return state_from_terms(structure, terms);
}

DensityMatrix dephase(const DensityMatrix& rho) {
  Eigen::MatrixXcd diagonal = rho.entries().diagonal().asDiagonal();
  return DensityMatrix(rho.structure(), std::move(diagonal));
}

DensityMatrix test_state(const NoiseParams& params) {
  const DensityMatrix target = projector(psi_432());
  const DensityMatrix dephased = dephase(target);
  const FlatIndex d = target.structure().total_dim();
  const double white = 1.0 - params.p - params.q;
  Eigen::MatrixXcd entries =
      params.p * target.entries() + params.q * dephased.entries() +
      (white / static_cast<double>(d)) * Eigen::MatrixXcd::Identity(d, d);
  return DensityMatrix(target.structure(), std::move(entries));
}

DensityMatrix orthogonal_mixture(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("orthogonal_mixture: p must lie strictly inside (0,1)");
  }
  const DensityMatrix a = projector(psi_332());
  const DensityMatrix b = projector(psi_422());
  return DensityMatrix(a.structure(), p * a.entries() + (1.0 - p) * b.entries());
}

PureState random_pure_state(const PartyStructure& structure, std::uint64_t seed,
                            const std::optional<std::vector<MultiIndex>>& support) {
  std::vector<FlatIndex> positions;
  if (support.has_value()) {
    if (support->empty()) {
      throw std::invalid_argument("random_pure_state: support must be nonempty");
    }
    std::set<FlatIndex> unique;
    for (const auto& idx : *support) unique.insert(structure.flat_index(idx));
    positions.assign(unique.begin(), unique.end());
  } else {
    positions.resize(static_cast<std::size_t>(structure.total_dim()));
    for (FlatIndex f = 0; f < structure.total_dim(); ++f) {
      positions[static_cast<std::size_t>(f)] = f;
    }
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd amplitudes = Eigen::VectorXcd::Zero(structure.total_dim());
  for (FlatIndex f : positions) {
    const double re = normal(rng);
    const double im = normal(rng);
    amplitudes(f) = Complex(re, im);
  }
  const double norm = amplitudes.norm();
  return PureState(structure, amplitudes / norm);
}

}  // namespace mdent
