#pragma once

#include <Eigen/Dense>
#include <complex>

#include "mdent/structure.hpp"

namespace mdent {

using Complex = std::complex<double>;

/// Dense pure state over a PartyStructure. The squared norm must equal 1
/// within 1e-9; construction rejects anything else.
class PureState {
 public:
  PureState(PartyStructure structure, Eigen::VectorXcd amplitudes);

  const PartyStructure& structure() const { return structure_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Complex amplitude(const MultiIndex& idx) const;

 private:
  PartyStructure structure_;
  Eigen::VectorXcd amplitudes_;
};

/// Dense D×D complex matrix over a PartyStructure. Construction checks shape
/// only; Hermiticity, unit trace and positivity are reported by validate(),
/// so deliberately invalid matrices can be built and inspected.
class DensityMatrix {
 public:
  DensityMatrix(PartyStructure structure, Eigen::MatrixXcd entries);

  const PartyStructure& structure() const { return structure_; }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  Complex entry(const MultiIndex& row, const MultiIndex& col) const;
  double diagonal(const MultiIndex& idx) const;

 private:
  PartyStructure structure_;
  Eigen::MatrixXcd entries_;
};

// |ψ⟩⟨ψ| as a DensityMatrix.
DensityMatrix projector(const PureState& psi);

}  // namespace mdent
