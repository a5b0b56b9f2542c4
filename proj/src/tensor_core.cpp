#include "mdent/tensor_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mdent {

namespace {

// Sorted, deduplicated kept parties; errors per the partial_trace contract.
std::vector<int> normalize_keep(const PartyStructure& structure, std::vector<int> keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (int party : keep) {
    if (party < 0 || party >= structure.num_parties()) {
      throw std::out_of_range("partial_trace: party " + std::to_string(party) + " out of range");
    }
  }
  return keep;
}

struct SplitIndexing {
  PartyStructure kept_structure;
  // flat offsets contributed by each kept-flat / traced-flat combination
  std::vector<FlatIndex> kept_offsets;
  std::vector<FlatIndex> rest_offsets;
};

SplitIndexing split_indexing(const PartyStructure& structure, const std::vector<int>& keep) {
  const int n = structure.num_parties();
  std::vector<bool> kept(static_cast<std::size_t>(n), false);
  for (int party : keep) kept[static_cast<std::size_t>(party)] = true;

  std::vector<int> kept_dims;
  std::vector<int> rest_dims;
  std::vector<int> rest_parties;
  for (int j = 0; j < n; ++j) {
    if (kept[static_cast<std::size_t>(j)]) {
      kept_dims.push_back(structure.dim(j));
    } else {
      rest_dims.push_back(structure.dim(j));
      rest_parties.push_back(j);
    }
  }

  PartyStructure kept_structure(kept_dims);
  const FlatIndex dk = kept_structure.total_dim();
  const FlatIndex dr = rest_dims.empty() ? 1 : [&] {
    FlatIndex d = 1;
    for (int dim : rest_dims) d *= dim;
    return d;
  }();

  // Offset tables: full flat index = kept_offsets[kf] + rest_offsets[rf].
  std::vector<FlatIndex> kept_offsets(static_cast<std::size_t>(dk), 0);
  std::vector<FlatIndex> rest_offsets(static_cast<std::size_t>(dr), 0);
  {
    std::vector<int> zeros(static_cast<std::size_t>(n), 0);
    for (FlatIndex kf = 0; kf < dk; ++kf) {
      MultiIndex kmi = kept_structure.multi_index(kf);
      MultiIndex full(zeros);
      for (std::size_t s = 0; s < keep.size(); ++s) full[keep[s]] = kmi[static_cast<int>(s)];
      kept_offsets[static_cast<std::size_t>(kf)] = structure.flat_index(full);
    }
    if (!rest_parties.empty()) {
      PartyStructure rest_structure(rest_dims);
      for (FlatIndex rf = 0; rf < dr; ++rf) {
        MultiIndex rmi = rest_structure.multi_index(rf);
        MultiIndex full(zeros);
        for (std::size_t s = 0; s < rest_parties.size(); ++s) {
          full[rest_parties[s]] = rmi[static_cast<int>(s)];
        }
        rest_offsets[static_cast<std::size_t>(rf)] = structure.flat_index(full);
      }
    }
  }
  return {std::move(kept_structure), std::move(kept_offsets), std::move(rest_offsets)};
}

}  // namespace

PureState basis_ket(const PartyStructure& structure, const MultiIndex& idx) {
  Eigen::VectorXcd amplitudes = Eigen::VectorXcd::Zero(structure.total_dim());
  amplitudes(structure.flat_index(idx)) = Complex(1.0, 0.0);
  return PureState(structure, std::move(amplitudes));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  const auto parties = normalize_keep(rho.structure(), keep);
  const auto split = split_indexing(rho.structure(), parties);
  const FlatIndex dk = split.kept_structure.total_dim();

  Eigen::MatrixXcd reduced = Eigen::MatrixXcd::Zero(dk, dk);
  const auto& m = rho.entries();
  for (FlatIndex i = 0; i < dk; ++i) {
    for (FlatIndex j = 0; j < dk; ++j) {
      Complex acc(0.0, 0.0);
      const FlatIndex oi = split.kept_offsets[static_cast<std::size_t>(i)];
      const FlatIndex oj = split.kept_offsets[static_cast<std::size_t>(j)];
      for (FlatIndex r : split.rest_offsets) acc += m(oi + r, oj + r);
      reduced(i, j) = acc;
    }
  }
  return DensityMatrix(split.kept_structure, std::move(reduced));
}

DensityMatrix marginal(const PureState& psi, const std::vector<int>& keep) {
  const auto parties = normalize_keep(psi.structure(), keep);
  const auto split = split_indexing(psi.structure(), parties);
  const FlatIndex dk = split.kept_structure.total_dim();
  const FlatIndex dr = static_cast<FlatIndex>(split.rest_offsets.size());

  // Gram matrix of the conditional vectors: ρ_K = M M†.
  Eigen::MatrixXcd m(dk, dr);
  for (FlatIndex i = 0; i < dk; ++i) {
    const FlatIndex oi = split.kept_offsets[static_cast<std::size_t>(i)];
    for (FlatIndex r = 0; r < dr; ++r) {
      m(i, r) = psi.amplitudes()(oi + split.rest_offsets[static_cast<std::size_t>(r)]);
    }
  }
  return DensityMatrix(split.kept_structure, m * m.adjoint());
}

Eigen::VectorXd spectrum(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.entries(),
                                                         Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

int numerical_rank(const DensityMatrix& rho, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw std::invalid_argument("numerical_rank: rel_tol must lie in (0,1)");
  }
  const Eigen::VectorXd eigs = spectrum(rho);
  const double largest = eigs(eigs.size() - 1);
  if (largest <= 0.0) return 0;
  const double cutoff = rel_tol * largest;
  int rank = 0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    if (eigs(i) > cutoff) ++rank;
  }
  return rank;
}

double purity(const DensityMatrix& rho) {
  // Tr(ρ²) = ‖ρ‖_F² for Hermitian ρ.
  return rho.entries().squaredNorm();
}

double linear_entropy(const DensityMatrix& rho) {
  return std::sqrt(2.0 * std::max(0.0, 1.0 - purity(rho)));
}

ValidationReport validate(const DensityMatrix& rho) {
  ValidationReport report;
  const auto& m = rho.entries();
  report.hermiticity_deviation = (m - m.adjoint()).cwiseAbs().maxCoeff();
  report.trace_deviation = std::abs(m.trace() - Complex(1.0, 0.0));
  // Eigenvalues of the Hermitian part; meaningful even when the matrix
  // fails the Hermiticity check.
  Eigen::MatrixXcd herm = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
  report.min_eigenvalue = solver.eigenvalues()(0);
  report.hermitian_ok = report.hermiticity_deviation <= kHermitianTol;
  report.trace_ok = report.trace_deviation <= kTraceTol;
  report.psd_ok = report.min_eigenvalue >= -kPsdSlack;
  return report;
}

}  // namespace mdent
