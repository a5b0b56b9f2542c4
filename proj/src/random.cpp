#include "mdent/random.hpp"

#include <cmath>
#include <stdexcept>

namespace mdent {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Eigen::MatrixXcd gaussian_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = std::complex<double>(re, im);
    }
  }
  return g;
}

Eigen::MatrixXcd gue_matrix(int n, std::mt19937_64& rng) {
  Eigen::MatrixXcd g = gaussian_matrix(n, n, rng);
  return (g + g.adjoint()) / 2.0;
}

Eigen::MatrixXcd haar_unitary(int n, std::mt19937_64& rng) {
  Eigen::MatrixXcd g = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Rephase columns so the distribution is Haar, not merely unitary.
  for (int j = 0; j < n; ++j) {
    const std::complex<double> d = r(j, j);
    const double mag = std::abs(d);
    const std::complex<double> phase = mag > 0.0 ? d / mag : std::complex<double>(1.0, 0.0);
    q.col(j) *= std::conj(phase);
  }
  return q;
}

Eigen::MatrixXcd haar_isometry(int rows, int cols, std::mt19937_64& rng) {
  if (rows < cols) throw std::invalid_argument("haar_isometry: rows must be >= cols");
  Eigen::MatrixXcd g = gaussian_matrix(rows, cols, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd thin = qr.householderQ() * Eigen::MatrixXcd::Identity(rows, cols);
  Eigen::MatrixXcd r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j) {
    const std::complex<double> d = r(j, j);
    const double mag = std::abs(d);
    const std::complex<double> phase = mag > 0.0 ? d / mag : std::complex<double>(1.0, 0.0);
    thin.col(j) *= std::conj(phase);
  }
  return thin;
}

}  // namespace mdent
