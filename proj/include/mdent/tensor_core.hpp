#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mdent/states.hpp"

namespace mdent {

inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kPsdSlack = 1e-8;
inline constexpr double kDefaultRankTol = 1e-9;

struct ValidationReport {
  double hermiticity_deviation = 0.0;  // max elementwise |ρ − ρ†|
  double trace_deviation = 0.0;        // |Tr ρ − 1|
  double min_eigenvalue = 0.0;
  bool hermitian_ok = false;
  bool trace_ok = false;
  bool psd_ok = false;

  bool ok() const { return hermitian_ok && trace_ok && psd_ok; }
};

// Computational basis ket |idx⟩.
PureState basis_ket(const PartyStructure& structure, const MultiIndex& idx);

/// Reduction of rho onto the parties in `keep` (set semantics, any order;
/// result parties stay in ascending party order). Throws
/// std::invalid_argument on an empty set, std::out_of_range on a bad party.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// Same reduction computed directly from a pure state's amplitudes (Gram
// matrix of conditional vectors); avoids forming the D×D projector.
DensityMatrix marginal(const PureState& psi, const std::vector<int>& keep);

// Eigenvalues (ascending) of the Hermitian part of rho.
Eigen::VectorXd spectrum(const DensityMatrix& rho);

/// Number of eigenvalues above rel_tol × the largest eigenvalue; 0 only for
/// the zero matrix. rel_tol must lie in (0,1).
int numerical_rank(const DensityMatrix& rho, double rel_tol = kDefaultRankTol);

// Tr(ρ²).
double purity(const DensityMatrix& rho);

// √(2·max(0, 1 − Tr ρ²)); 0 on pure states, √(2(1−1/d)) on the maximally
// mixed rank-d state.
double linear_entropy(const DensityMatrix& rho);

ValidationReport validate(const DensityMatrix& rho);

}  // namespace mdent
