// SPDX-License-Identifier: MIT

#include "spinwalk/evolve.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinwalk {

namespace {

// Eigendecomposition of the dense submatrix over the support indices.
struct SupportEigen {
  std::vector<BasisIndex> idx;
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

SupportEigen support_eigh(const SparseHermitian& h) {
  SupportEigen out;
  out.idx = h.support();
  const auto n = static_cast<Eigen::Index>(out.idx.size());
  std::vector<Eigen::Index> pos(static_cast<std::size_t>(h.dim()), -1);
  for (Eigen::Index k = 0; k < n; ++k) pos[static_cast<std::size_t>(out.idx[k])] = k;

  Eigen::MatrixXcd sub = Eigen::MatrixXcd::Zero(n, n);
  for (const SparseEntry& e : h.entries()) {
    sub(pos[static_cast<std::size_t>(e.row)], pos[static_cast<std::size_t>(e.col)]) = e.value;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sub);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigh: eigensolver failed to converge");
  }
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
  return out;
}

}  // namespace

EigenSystem eigh(const SparseHermitian& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.to_dense());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigh: eigensolver failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

StateVector evolve(const SparseHermitian& h, double t, const StateVector& psi) {
  if (psi.size() != h.dim()) {
    throw std::invalid_argument("evolve: state dimension " + std::to_string(psi.size()) +
                                " does not match matrix dimension " + std::to_string(h.dim()));
  }
  const SupportEigen se = support_eigh(h);
  const auto n = static_cast<Eigen::Index>(se.idx.size());
  if (n == 0 || t == 0.0) return psi;

  Eigen::VectorXcd sub(n);
  for (Eigen::Index k = 0; k < n; ++k) sub(k) = psi(se.idx[static_cast<std::size_t>(k)]);

  const Eigen::VectorXcd phases =
      (Complex{0.0, -t} * se.values.cast<Complex>().array()).exp().matrix();
  const Eigen::VectorXcd evolved =
      se.vectors * phases.asDiagonal() * (se.vectors.adjoint() * sub);

  StateVector out = psi;
  for (Eigen::Index k = 0; k < n; ++k) out(se.idx[static_cast<std::size_t>(k)]) = evolved(k);
  return out;
}

Eigen::MatrixXcd unitary_of(const SparseHermitian& h, double t) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(h.dim(), h.dim());
  if (t == 0.0) return out;
  const SupportEigen se = support_eigh(h);
  const auto n = static_cast<Eigen::Index>(se.idx.size());
  if (n == 0) return out;

  const Eigen::VectorXcd phases =
      (Complex{0.0, -t} * se.values.cast<Complex>().array()).exp().matrix();
  const Eigen::MatrixXcd block = se.vectors * phases.asDiagonal() * se.vectors.adjoint();
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      out(se.idx[static_cast<std::size_t>(r)], se.idx[static_cast<std::size_t>(c)]) = block(r, c);
    }
  }
  return out;
}

}  // namespace spinwalk
