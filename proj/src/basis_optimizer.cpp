#include "mdent/basis_optimizer.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "mdent/random.hpp"

namespace mdent {

namespace {

constexpr double kUnitaryTol = 1e-9;
constexpr int kRejectionStreakLimit = 10;

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// exp(i·scale·H) for Hermitian H, via eigendecomposition; exactly unitary up
// to solver precision.
Eigen::MatrixXcd unitary_exp(const Eigen::MatrixXcd& hermitian, double scale) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian);
  const Eigen::VectorXd phases = solver.eigenvalues() * scale;
  Eigen::VectorXcd diag(phases.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    diag(i) = std::complex<double>(std::cos(phases(i)), std::sin(phases(i)));
  }
  return solver.eigenvectors() * diag.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace

LocalBasis::LocalBasis(PartyStructure structure, std::vector<Eigen::MatrixXcd> unitaries)
    : structure_(std::move(structure)), unitaries_(std::move(unitaries)) {
  if (static_cast<int>(unitaries_.size()) != structure_.num_parties()) {
    throw std::invalid_argument("LocalBasis: need one unitary per party");
  }
  for (int j = 0; j < structure_.num_parties(); ++j) {
    const auto& u = unitaries_[static_cast<std::size_t>(j)];
    const int d = structure_.dim(j);
    if (u.rows() != d || u.cols() != d) {
      throw std::invalid_argument("LocalBasis: unitary for party " + std::to_string(j) +
                                  " has wrong shape");
    }
    const double deviation =
        (u.adjoint() * u - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
    if (deviation > kUnitaryTol) {
      throw std::invalid_argument("LocalBasis: matrix for party " + std::to_string(j) +
                                  " deviates from unitarity by " + std::to_string(deviation));
    }
  }
}

LocalBasis LocalBasis::identity(const PartyStructure& structure) {
  std::vector<Eigen::MatrixXcd> unitaries;
  unitaries.reserve(static_cast<std::size_t>(structure.num_parties()));
  for (int j = 0; j < structure.num_parties(); ++j) {
    unitaries.push_back(Eigen::MatrixXcd::Identity(structure.dim(j), structure.dim(j)));
  }
  return LocalBasis(structure, std::move(unitaries));
}

Eigen::MatrixXcd LocalBasis::full_operator() const {
  Eigen::MatrixXcd out = unitaries_[0];
  for (std::size_t j = 1; j < unitaries_.size(); ++j) out = kron(out, unitaries_[j]);
  return out;
}

DensityMatrix apply_local_basis(const DensityMatrix& rho, const LocalBasis& basis) {
  if (basis.structure() != rho.structure()) {
    throw std::invalid_argument("apply_local_basis: structure mismatch");
  }
  const Eigen::MatrixXcd u = basis.full_operator();
  return DensityMatrix(rho.structure(), u * rho.entries() * u.adjoint());
}

PureState apply_local_basis(const PureState& psi, const LocalBasis& basis) {
  if (basis.structure() != psi.structure()) {
    throw std::invalid_argument("apply_local_basis: structure mismatch");
  }
  return PureState(psi.structure(), basis.full_operator() * psi.amplitudes());
}

LocalBasis random_local_basis(const PartyStructure& structure, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Eigen::MatrixXcd> unitaries;
  unitaries.reserve(static_cast<std::size_t>(structure.num_parties()));
  for (int j = 0; j < structure.num_parties(); ++j) {
    unitaries.push_back(haar_unitary(structure.dim(j), rng));
  }
  return LocalBasis(structure, std::move(unitaries));
}

namespace {

struct RestartOutcome {
  double best_value;
  std::vector<Eigen::MatrixXcd> best_unitaries;
  std::vector<double> improvements;  // accepted values in order
};

RestartOutcome run_restart(const DensityMatrix& rho, const PairSet& pairs, int k,
                           WitnessConvention convention, const OptimizeBudget& budget,
                           std::uint64_t restart_seed, bool identity_start) {
  const PartyStructure& structure = rho.structure();
  const int n = structure.num_parties();
  std::mt19937_64 rng(restart_seed);

  std::vector<Eigen::MatrixXcd> current;
  current.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    current.push_back(identity_start
                          ? Eigen::MatrixXcd::Identity(structure.dim(j), structure.dim(j))
                          : haar_unitary(structure.dim(j), rng));
  }

  const auto evaluate = [&](const std::vector<Eigen::MatrixXcd>& unitaries) {
    Eigen::MatrixXcd u = unitaries[0];
    for (std::size_t j = 1; j < unitaries.size(); ++j) u = kron(u, unitaries[j]);
    const DensityMatrix rotated(structure, u * rho.entries() * u.adjoint());
    return witness_value(rotated, pairs, k, convention);
  };

  RestartOutcome outcome;
  double value = evaluate(current);
  outcome.best_value = value;
  outcome.best_unitaries = current;
  outcome.improvements.push_back(value);

  double scale = budget.step_scale;
  int rejection_streak = 0;
  for (int step = 0; step < budget.steps; ++step) {
    std::vector<Eigen::MatrixXcd> proposal;
    proposal.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      const Eigen::MatrixXcd kick = unitary_exp(gue_matrix(structure.dim(j), rng), scale);
      proposal.push_back(current[static_cast<std::size_t>(j)] * kick);
    }
    const double proposed = evaluate(proposal);
    if (proposed > value) {
      value = proposed;
      current = std::move(proposal);
      rejection_streak = 0;
      if (value > outcome.best_value) {
        outcome.best_value = value;
        outcome.best_unitaries = current;
        outcome.improvements.push_back(value);
      }
    } else {
      if (++rejection_streak >= kRejectionStreakLimit) {
        scale *= 0.5;
        rejection_streak = 0;
      }
    }
  }
  return outcome;
}

}  // namespace

OptimizeResult optimize_witness(const DensityMatrix& rho, const std::vector<PairSet>& sets, int k,
                                const OptimizeBudget& budget, std::uint64_t seed,
                                WitnessConvention convention) {
  const int n = rho.structure().num_parties();
  if (k < 1 || k > n) throw std::invalid_argument("optimize_witness: k must lie in [1,N]");
  if (static_cast<int>(sets.size()) != n) {
    throw std::invalid_argument("optimize_witness: need one pair set per k=1..N");
  }
  if (budget.restarts < 1 || budget.steps < 1 || !(budget.step_scale > 0.0)) {
    throw std::invalid_argument("optimize_witness: budget must be positive");
  }
  const PairSet& pairs = sets[static_cast<std::size_t>(k - 1)];

  // Restarts are independent; each owns a derived seed, so the parallel
  // reduction is deterministic.
  std::vector<std::future<RestartOutcome>> futures;
  futures.reserve(static_cast<std::size_t>(budget.restarts));
  for (int r = 0; r < budget.restarts; ++r) {
    futures.push_back(std::async(std::launch::async, [&, r] {
      return run_restart(rho, pairs, k, convention, budget, mix_seed(seed, static_cast<std::uint64_t>(r)),
                         /*identity_start=*/r == 0);
    }));
  }

  OptimizeResult result{.best_value = -std::numeric_limits<double>::infinity(),
                        .best_basis = LocalBasis::identity(rho.structure()),
                        .identity_value = 0.0,
                        .trajectory = {}};
  bool first = true;
  for (int r = 0; r < budget.restarts; ++r) {
    RestartOutcome outcome = futures[static_cast<std::size_t>(r)].get();
    if (r == 0) result.identity_value = outcome.improvements.front();
    bool took_record = false;
    for (double v : outcome.improvements) {
      if (first || v > result.best_value) {
        result.best_value = v;
        result.trajectory.push_back(v);
        took_record = true;
        first = false;
      }
    }
    // Within a restart the improvements increase, so holding the record at
    // the end means this restart's final basis is the global argmax so far.
    if (took_record) result.best_basis = LocalBasis(rho.structure(), outcome.best_unitaries);
  }
  return result;
}

}  // namespace mdent
