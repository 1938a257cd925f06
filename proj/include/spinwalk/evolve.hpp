// SPDX-License-Identifier: MIT
//
// Exact unitary evolution exp(−iHt) via eigendecomposition. The walk
// Hamiltonians act on a handful of basis states out of a possibly large
// space, so evolve/unitary_of restrict the eigenproblem to the support of H
// (H is exactly zero elsewhere, where exp(−iHt) is the identity).

#pragma once

#include <Eigen/Dense>

#include "spinwalk/sparse.hpp"

namespace spinwalk {

struct EigenSystem {
  Eigen::VectorXd values;    ///< real eigenvalues, ascending
  Eigen::MatrixXcd vectors;  ///< orthonormal columns, H = V diag(values) V†
};

/// Full-dimension Hermitian eigendecomposition.
EigenSystem eigh(const SparseHermitian& h);

/// ψ′ = exp(−iHt) ψ, exact up to the eigensolver. Norm is preserved.
StateVector evolve(const SparseHermitian& h, double t, const StateVector& psi);

/// Dense U = exp(−iHt) with ‖U†U − I‖_max at solver precision.
Eigen::MatrixXcd unitary_of(const SparseHermitian& h, double t);

}  // namespace spinwalk
