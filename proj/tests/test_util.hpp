#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "mdent/random.hpp"
#include "mdent/state_zoo.hpp"
#include "mdent/states.hpp"

namespace mdent_test {

// Independent oracle for the nonlinear witness: evaluates the defining
// expression with explicit enumeration of all k-element party subsets. Kept
// free of the library's per-pair k-smallest shortcut on purpose.
inline double brute_force_witness(
    const mdent::DensityMatrix& rho,
    const std::vector<std::pair<mdent::MultiIndex, mdent::MultiIndex>>& pairs, int k,
    bool tight) {
  const int n = rho.structure().num_parties();
  std::vector<std::vector<int>> subsets;
  std::vector<int> current;
  std::function<void(int)> enumerate = [&](int start) {
    if (static_cast<int>(current.size()) == k) {
      subsets.push_back(current);
      return;
    }
    for (int j = start; j < n; ++j) {
      current.push_back(j);
      enumerate(j + 1);
      current.pop_back();
    }
  };
  enumerate(0);

  double sum = 0.0;
  for (const auto& [eta, eta2] : pairs) {
    const double off = std::abs(rho.entry(eta, eta2));
    double best = std::numeric_limits<double>::infinity();
    for (const auto& subset : subsets) {
      double total = 0.0;
      for (int party : subset) {
        mdent::MultiIndex a = eta;
        mdent::MultiIndex b = eta2;
        const int tmp = a[party];
        a[party] = b[party];
        b[party] = tmp;
        const double da = std::max(0.0, rho.diagonal(a));
        const double db = std::max(0.0, rho.diagonal(b));
        total += std::sqrt(da * db);
      }
      best = std::min(best, total);
    }
    sum += off - best;
  }
  const double numerator = tight ? 2.0 : std::sqrt(2.0);
  return numerator / std::sqrt(static_cast<double>(pairs.size())) * sum;
}

// Naive partial trace over explicit multiindex loops; independent of the
// offset-table implementation.
inline Eigen::MatrixXcd naive_partial_trace(const mdent::DensityMatrix& rho,
                                            const std::vector<int>& keep_sorted) {
  const auto& s = rho.structure();
  std::vector<int> kept_dims;
  for (int party : keep_sorted) kept_dims.push_back(s.dim(party));
  mdent::PartyStructure kept(kept_dims);

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kept.total_dim(), kept.total_dim());
  for (mdent::FlatIndex fi = 0; fi < s.total_dim(); ++fi) {
    const mdent::MultiIndex mi = s.multi_index(fi);
    for (mdent::FlatIndex fj = 0; fj < s.total_dim(); ++fj) {
      const mdent::MultiIndex mj = s.multi_index(fj);
      bool traced_equal = true;
      for (int party = 0; party < s.num_parties(); ++party) {
        const bool is_kept =
            std::find(keep_sorted.begin(), keep_sorted.end(), party) != keep_sorted.end();
        if (!is_kept && mi[party] != mj[party]) {
          traced_equal = false;
          break;
        }
      }
      if (!traced_equal) continue;
      std::vector<int> ri;
      std::vector<int> rj;
      for (int party : keep_sorted) {
        ri.push_back(mi[party]);
        rj.push_back(mj[party]);
      }
      out(kept.flat_index(mdent::MultiIndex(ri)), kept.flat_index(mdent::MultiIndex(rj))) +=
          rho.entries()(fi, fj);
    }
  }
  return out;
}

// Mixture of `components` seeded random pure states with random weights.
inline mdent::DensityMatrix random_mixture(const mdent::PartyStructure& structure, int components,
                                           std::uint64_t seed) {
  std::mt19937_64 rng(mdent::mix_seed(seed, 77));
  std::uniform_real_distribution<double> uniform(0.1, 1.0);
  std::vector<double> weights;
  double total = 0.0;
  for (int c = 0; c < components; ++c) {
    weights.push_back(uniform(rng));
    total += weights.back();
  }
  Eigen::MatrixXcd entries =
      Eigen::MatrixXcd::Zero(structure.total_dim(), structure.total_dim());
  for (int c = 0; c < components; ++c) {
    const mdent::PureState psi =
        mdent::random_pure_state(structure, mdent::mix_seed(seed, static_cast<std::uint64_t>(c)));
    entries += (weights[static_cast<std::size_t>(c)] / total) * psi.amplitudes() *
               psi.amplitudes().adjoint();
  }
  return mdent::DensityMatrix(structure, std::move(entries));
}

// Random subset of unordered index pairs over the full index space.
inline std::vector<std::pair<mdent::MultiIndex, mdent::MultiIndex>> random_pairs(
    const mdent::PartyStructure& structure, int count, std::mt19937_64& rng) {
  std::uniform_int_distribution<mdent::FlatIndex> pick(0, structure.total_dim() - 1);
  std::vector<std::pair<mdent::MultiIndex, mdent::MultiIndex>> pairs;
  while (static_cast<int>(pairs.size()) < count) {
    const mdent::FlatIndex a = pick(rng);
    const mdent::FlatIndex b = pick(rng);
    if (a == b) continue;
    pairs.push_back({structure.multi_index(a), structure.multi_index(b)});
  }
  return pairs;
}

}  // namespace mdent_test
