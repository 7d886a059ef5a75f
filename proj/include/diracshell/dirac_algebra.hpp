#pragma once

// The 4x4 Dirac matrices built from the 2x2 Pauli family, plus the bilinear
// Clifford operations used by every kernel and operator in this project.
//
// Conventions: alpha_j = [[0, sigma_j], [sigma_j, 0]], beta = diag(I2, -I2).
// The alpha_j and beta are Hermitian, square to the identity, and pairwise
// anticommute.

#include "diracshell/types.hpp"

namespace diracshell {

// Pauli matrix sigma_j, j in {1,2,3}.
Eigen::Matrix2cd pauli(int j);

// Dirac matrix alpha_j, j in {1,2,3}. Throws std::invalid_argument otherwise.
SpinorMatrix alpha(int j);

// Dirac matrix beta = diag(1, 1, -1, -1).
SpinorMatrix beta();

SpinorMatrix identity4();

// Off-diagonal 2x2-block swap matrix tau = [[0, I2], [I2, 0]]; tau^2 = I4,
// tau anticommutes with beta and commutes with the alpha_j.
SpinorMatrix swap_tau();

// v1*alpha_1 + v2*alpha_2 + v3*alpha_3. Satisfies the Clifford relation
// alpha_dot(u)*alpha_dot(v) + alpha_dot(v)*alpha_dot(u) = 2(u.v) I4.
SpinorMatrix alpha_dot(const Vec3& v);
SpinorMatrix alpha_dot(const Vec3c& v);

}  // namespace diracshell
