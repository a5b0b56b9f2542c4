#include "mdent/witness_engine.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "mdent/errors.hpp"
#include "mdent/random.hpp"
#include "mdent/state_zoo.hpp"

namespace mdent {

namespace {

constexpr double kSupportTol = 1e-12;

std::pair<MultiIndex, MultiIndex> canonical_pair(const PartyStructure& structure,
                                                 const MultiIndex& a, const MultiIndex& b) {
  const FlatIndex fa = structure.flat_index(a);
  const FlatIndex fb = structure.flat_index(b);
  if (fa == fb) {
    throw std::invalid_argument("PairSet: pair with equal multiindices is not allowed");
  }
  return fa < fb ? std::pair{a, b} : std::pair{b, a};
}

}  // namespace

PairSet::PairSet(PartyStructure structure,
                 const std::vector<std::pair<MultiIndex, MultiIndex>>& pairs)
    : structure_(std::move(structure)) {
  std::vector<std::pair<FlatIndex, FlatIndex>> seen;
  for (const auto& [a, b] : pairs) {
    auto canonical = canonical_pair(structure_, a, b);
    const std::pair<FlatIndex, FlatIndex> key{structure_.flat_index(canonical.first),
                                              structure_.flat_index(canonical.second)};
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);
    pairs_.push_back(std::move(canonical));
  }
  // Canonical listing order: sorted by flat index pair.
  std::vector<std::size_t> order(pairs_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return seen[i] < seen[j]; });
  std::vector<std::pair<MultiIndex, MultiIndex>> sorted;
  sorted.reserve(pairs_.size());
  for (std::size_t i : order) sorted.push_back(std::move(pairs_[i]));
  pairs_ = std::move(sorted);
}

std::pair<MultiIndex, MultiIndex> swap_at_parties(const MultiIndex& eta, const MultiIndex& eta2,
                                                  const std::vector<int>& parties) {
  if (parties.empty()) throw std::invalid_argument("swap_at_parties: party set must be nonempty");
  if (eta.size() != eta2.size()) {
    throw std::invalid_argument("swap_at_parties: multiindices differ in length");
  }
  MultiIndex a = eta;
  MultiIndex b = eta2;
  for (int party : parties) {
    if (party < 0 || party >= eta.size()) {
      throw std::out_of_range("swap_at_parties: party " + std::to_string(party) +
                              " out of range");
    }
    std::swap(a[party], b[party]);
  }
  return {a, b};
}

double subtraction_term(const DensityMatrix& rho, const MultiIndex& eta, const MultiIndex& eta2,
                        int party) {
  const auto [swapped_a, swapped_b] = swap_at_parties(eta, eta2, {party});
  const double da = std::max(0.0, rho.diagonal(swapped_a));
  const double db = std::max(0.0, rho.diagonal(swapped_b));
  return std::sqrt(da * db);
}

double pair_bracket(const DensityMatrix& rho, const MultiIndex& eta, const MultiIndex& eta2,
                    int k) {
  const int n = rho.structure().num_parties();
  if (k < 1 || k > n) throw std::invalid_argument("pair_bracket: k must lie in [1,N]");
  const double off_diagonal = std::abs(rho.entry(eta, eta2));
  // The min over k-element party subsets separates: sum the k smallest
  // per-party swap terms.
  std::vector<double> terms(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    terms[static_cast<std::size_t>(j)] = subtraction_term(rho, eta, eta2, j);
  }
  std::partial_sort(terms.begin(), terms.begin() + k, terms.end());
  double subtracted = 0.0;
  for (int j = 0; j < k; ++j) subtracted += terms[static_cast<std::size_t>(j)];
  return off_diagonal - subtracted;
}

double witness_value(const DensityMatrix& rho, const PairSet& pairs, int k,
                     WitnessConvention convention) {
  if (pairs.empty()) throw std::invalid_argument("witness_value: pair set must be nonempty");
  if (pairs.structure() != rho.structure()) {
    throw std::invalid_argument("witness_value: pair set and state structures differ");
  }
  const int n = rho.structure().num_parties();
  if (k < 1 || k > n) throw std::invalid_argument("witness_value: k must lie in [1,N]");
  double sum = 0.0;
  for (const auto& [a, b] : pairs.pairs()) sum += pair_bracket(rho, a, b, k);
  const double numerator = convention == WitnessConvention::Tight ? 2.0 : std::numbers::sqrt2;
  return numerator / std::sqrt(static_cast<double>(pairs.size())) * sum;
}

CertificationReport certify(const DensityMatrix& rho, const std::vector<PairSet>& sets,
                            WitnessConvention convention) {
  const int n = rho.structure().num_parties();
  if (static_cast<int>(sets.size()) != n) {
    throw std::invalid_argument("certify: need exactly one pair set per party count k=1..N");
  }
  CertificationReport report;
  report.convention = convention;
  report.sets = sets;
  for (int k = 1; k <= n; ++k) {
    const double w = witness_value(rho, sets[static_cast<std::size_t>(k - 1)], k, convention);
    report.witness_values.push_back(w);
    report.certified.push_back(dim_bound_from_entropy(std::max(w, 0.0)));
  }
  return report;
}

namespace {

std::vector<MultiIndex> support_indices(const PureState& psi) {
  std::vector<MultiIndex> support;
  for (FlatIndex f = 0; f < psi.structure().total_dim(); ++f) {
    if (std::abs(psi.amplitudes()(f)) > kSupportTol) {
      support.push_back(psi.structure().multi_index(f));
    }
  }
  return support;
}

PairSet all_support_pairs(const PureState& psi) {
  const auto support = support_indices(psi);
  std::vector<std::pair<MultiIndex, MultiIndex>> pairs;
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (std::size_t j = i + 1; j < support.size(); ++j) {
      pairs.push_back({support[i], support[j]});
    }
  }
  return PairSet(psi.structure(), pairs);
}

bool is_psi_432(const PureState& target) {
  const PureState reference = psi_432();
  if (target.structure() != reference.structure()) return false;
  return (target.amplitudes() - reference.amplitudes()).cwiseAbs().maxCoeff() <= kSupportTol;
}

PairSet paper_c1() {
  const PartyStructure s({4, 4, 4});
  return PairSet(s, {{{0, 0, 0}, {1, 1, 1}}, {{0, 0, 0}, {1, 2, 3}}, {{0, 1, 2}, {1, 2, 3}}});
}

PairSet paper_c2() {
  const PartyStructure s({4, 4, 4});
  return PairSet(s, {{{0, 0, 0}, {1, 1, 1}},
                     {{0, 0, 0}, {1, 2, 3}},
                     {{0, 1, 2}, {1, 2, 3}},
                     {{0, 0, 0}, {0, 1, 2}},
                     {{1, 1, 1}, {1, 2, 3}}});
}

PairSet paper_c3() {
  const PartyStructure s({4, 4, 4});
  return PairSet(s, {{{0, 0, 0}, {1, 1, 1}},
                     {{0, 0, 0}, {1, 2, 3}},
                     {{0, 1, 2}, {1, 2, 3}},
                     {{0, 0, 0}, {0, 1, 2}},
                     {{1, 1, 1}, {1, 2, 3}},
                     {{1, 1, 1}, {0, 1, 2}}});
}

}  // namespace

std::vector<PairSet> default_pair_sets(const PureState& target, PairSetStrategy strategy) {
  const int n = target.structure().num_parties();
  switch (strategy) {
    case PairSetStrategy::Paper432: {
      if (!is_psi_432(target)) {
        throw std::invalid_argument("default_pair_sets: paper-432 sets require the ψ432 target");
      }
      return {paper_c1(), paper_c2(), paper_c3()};
    }
    case PairSetStrategy::FullSupport: {
      const PairSet pairs = all_support_pairs(target);
      return std::vector<PairSet>(static_cast<std::size_t>(n), pairs);
    }
  }
  throw std::invalid_argument("default_pair_sets: unknown strategy");
}

std::vector<PairSet> noise_432_sets() {
  // k=1 uses the full 6-pair support set: the 3-pair literal C_1 tops out
  // at √3/2 on the pure target, below the √(4/3) threshold for rank 4.
  return {all_support_pairs(psi_432()), paper_c2(), paper_c3()};
}

double ensemble_upper_bound(const DensityMatrix& rho, int k, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("ensemble_upper_bound: samples must be >= 1");
  const int n = rho.structure().num_parties();
  if (k < 1 || k > n) throw std::invalid_argument("ensemble_upper_bound: k must lie in [1,N]");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.entries());
  const Eigen::VectorXd& eigenvalues = solver.eigenvalues();
  const double largest = eigenvalues(eigenvalues.size() - 1);
  if (largest <= 0.0) {
    throw std::invalid_argument("ensemble_upper_bound: state has no positive spectrum");
  }

  // Square-root ensemble: columns φ_i = √λ_i e_i for the retained spectrum.
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues(i) > kSupportTol * largest) kept.push_back(i);
  }
  const int rank = static_cast<int>(kept.size());
  Eigen::MatrixXcd sqrt_ensemble(rho.structure().total_dim(), rank);
  for (int i = 0; i < rank; ++i) {
    sqrt_ensemble.col(i) =
        solver.eigenvectors().col(kept[static_cast<std::size_t>(i)]) *
        std::sqrt(eigenvalues(kept[static_cast<std::size_t>(i)]));
  }

  const auto ensemble_entropy = [&](const Eigen::MatrixXcd& members) {
    double total = 0.0;
    for (Eigen::Index j = 0; j < members.cols(); ++j) {
      const double weight = members.col(j).squaredNorm();
      if (weight <= kSupportTol) continue;
      const PureState member(rho.structure(), members.col(j) / std::sqrt(weight));
      total += weight * entropy_vector(member).values[static_cast<std::size_t>(k - 1)];
    }
    return total;
  };

  // The eigenensemble itself is always a candidate decomposition.
  double best = ensemble_entropy(sqrt_ensemble);
  std::mt19937_64 rng(mix_seed(seed, 0));
  std::uniform_int_distribution<int> extra(0, 4);
  for (int s = 0; s < samples; ++s) {
    const int members = rank + extra(rng);
    // ψ̃_j = Σ_i Q(j,i) φ_i with Q†Q = 𝟙 keeps Σ_j |ψ̃_j⟩⟨ψ̃_j| = ρ.
    const Eigen::MatrixXcd isometry = haar_isometry(members, rank, rng);
    best = std::min(best, ensemble_entropy(sqrt_ensemble * isometry.transpose()));
  }
  return best;
}

void save_pair_set(std::ostream& out, const PairSet& pairs) {
  out << "# pair set: " << pairs.size() << " unordered pairs\n";
  for (const auto& [a, b] : pairs.pairs()) {
    for (int j = 0; j < a.size(); ++j) out << (j > 0 ? "," : "") << a[j];
    out << " | ";
    for (int j = 0; j < b.size(); ++j) out << (j > 0 ? "," : "") << b[j];
    out << "\n";
  }
}

namespace {

MultiIndex parse_multi_index(const std::string& token, int line) {
  std::vector<int> entries;
  std::string piece;
  std::istringstream stream(token);
  while (std::getline(stream, piece, ',')) {
    try {
      std::size_t used = 0;
      const int value = std::stoi(piece, &used);
      if (used != piece.size()) throw std::invalid_argument(piece);
      entries.push_back(value);
    } catch (const std::exception&) {
      throw ParseError(line, "invalid multiindex component '" + piece + "'");
    }
  }
  if (entries.empty()) throw ParseError(line, "empty multiindex");
  return MultiIndex(std::move(entries));
}

std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

PairSet load_pair_set(std::istream& in, const PartyStructure& structure) {
  std::vector<std::pair<MultiIndex, MultiIndex>> pairs;
  std::string raw;
  int line_number = 0;
  while (std::getline(in, raw)) {
    ++line_number;
    std::istringstream line(strip_comment(raw));
    std::string left, bar, right;
    if (!(line >> left)) continue;  // blank or comment-only
    if (!(line >> bar >> right) || bar != "|") {
      throw ParseError(line_number, "expected 'eta | eta2'");
    }
    std::string trailing;
    if (line >> trailing) throw ParseError(line_number, "unexpected trailing token");
    const MultiIndex a = parse_multi_index(left, line_number);
    const MultiIndex b = parse_multi_index(right, line_number);
    try {
      pairs.push_back(canonical_pair(structure, a, b));
    } catch (const std::exception& e) {
      throw ParseError(line_number, e.what());
    }
  }
  return PairSet(structure, pairs);
}

}  // namespace mdent
