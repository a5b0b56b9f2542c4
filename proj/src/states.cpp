#include "mdent/states.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mdent/errors.hpp"

namespace mdent {

namespace {
constexpr double kNormTol = 1e-9;
}

PureState::PureState(PartyStructure structure, Eigen::VectorXcd amplitudes)
    : structure_(std::move(structure)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != structure_.total_dim()) {
    throw std::invalid_argument("PureState: amplitude vector has length " +
                                std::to_string(amplitudes_.size()) + ", structure needs " +
                                std::to_string(structure_.total_dim()));
  }
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTol) {
    throw ValidationError("PureState: squared norm " + std::to_string(norm2) +
                          " deviates from 1 by more than 1e-9");
  }
}

Complex PureState::amplitude(const MultiIndex& idx) const {
  return amplitudes_(structure_.flat_index(idx));
}

DensityMatrix::DensityMatrix(PartyStructure structure, Eigen::MatrixXcd entries)
    : structure_(std::move(structure)), entries_(std::move(entries)) {
  if (entries_.rows() != structure_.total_dim() || entries_.cols() != structure_.total_dim()) {
    throw std::invalid_argument("DensityMatrix: matrix is " + std::to_string(entries_.rows()) +
                                "x" + std::to_string(entries_.cols()) + ", structure needs " +
                                std::to_string(structure_.total_dim()) + " squared");
  }
}

Complex DensityMatrix::entry(const MultiIndex& row, const MultiIndex& col) const {
  return entries_(structure_.flat_index(row), structure_.flat_index(col));
}

double DensityMatrix::diagonal(const MultiIndex& idx) const {
  const FlatIndex f = structure_.flat_index(idx);
  return entries_(f, f).real();
}

DensityMatrix projector(const PureState& psi) {
  return DensityMatrix(psi.structure(), psi.amplitudes() * psi.amplitudes().adjoint());
}

}  // namespace mdent
