#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mdent/witness_engine.hpp"

namespace mdent {

/// One unitary per party; each must satisfy ‖U†U − 𝟙‖_max ≤ 1e-9.
class LocalBasis {
 public:
  LocalBasis(PartyStructure structure, std::vector<Eigen::MatrixXcd> unitaries);

  static LocalBasis identity(const PartyStructure& structure);

  const PartyStructure& structure() const { return structure_; }
  const std::vector<Eigen::MatrixXcd>& unitaries() const { return unitaries_; }
  // U_1 ⊗ … ⊗ U_N.
  Eigen::MatrixXcd full_operator() const;

 private:
  PartyStructure structure_;
  std::vector<Eigen::MatrixXcd> unitaries_;
};

// (U_1⊗…⊗U_N) ρ (U_1⊗…⊗U_N)†; trace, spectrum and rank vector preserved.
DensityMatrix apply_local_basis(const DensityMatrix& rho, const LocalBasis& basis);
PureState apply_local_basis(const PureState& psi, const LocalBasis& basis);

// Haar-distributed unitary per party (QR of a complex Gaussian with
// phase-fixed diagonal); deterministic per seed.
LocalBasis random_local_basis(const PartyStructure& structure, std::uint64_t seed);

struct OptimizeBudget {
  int restarts = 8;
  int steps = 200;
  double step_scale = 0.3;
};

struct OptimizeResult {
  double best_value = 0.0;
  LocalBasis best_basis;
  double identity_value = 0.0;     // witness in the unrotated basis
  std::vector<double> trajectory;  // running best, non-decreasing
};

/// Maximizes witness_value over local bases by multi-restart stochastic hill
/// climbing. Restart 0 starts from the identity (so the result never falls
/// below the unrotated witness value); later restarts start from Haar
/// samples. Proposals right-multiply each party's unitary by the exp-map of
/// a random anti-Hermitian step of magnitude step_scale, halved after 10
/// consecutive rejections; a step is accepted iff the witness increases.
/// Deterministic per (inputs, seed, budget); restarts run in parallel.
OptimizeResult optimize_witness(const DensityMatrix& rho, const std::vector<PairSet>& sets, int k,
                                const OptimizeBudget& budget, std::uint64_t seed,
                                WitnessConvention convention = WitnessConvention::Tight);

}  // namespace mdent
