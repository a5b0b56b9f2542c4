#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace mdent {

// splitmix64 step; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Entries i.i.d. standard complex normal.
Eigen::MatrixXcd gaussian_matrix(int rows, int cols, std::mt19937_64& rng);

// Hermitian matrix (G+G†)/2 with G complex Gaussian.
Eigen::MatrixXcd gue_matrix(int n, std::mt19937_64& rng);

// Haar-distributed unitary: QR of a complex Gaussian, columns rephased by
// the sign of R's diagonal.
Eigen::MatrixXcd haar_unitary(int n, std::mt19937_64& rng);

// rows×cols (rows ≥ cols) matrix with orthonormal columns, Haar on the
// Stiefel manifold.
Eigen::MatrixXcd haar_isometry(int rows, int cols, std::mt19937_64& rng);

}  // namespace mdent
