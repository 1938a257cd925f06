// SPDX-License-Identifier: MIT

#include "spinwalk/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spinwalk {

SparseHermitian SparseHermitian::from_dense(const Eigen::MatrixXcd& h) {
  return from_eigen(h.sparseView(1.0, 0.0));
}

SparseHermitian SparseHermitian::from_eigen(const Eigen::SparseMatrix<Complex>& h) {
  if (h.rows() != h.cols()) {
    throw std::invalid_argument("SparseHermitian: matrix is not square");
  }
  const Eigen::SparseMatrix<Complex> adj = h.adjoint();
  double scale = 1.0;
  for (int k = 0; k < h.outerSize(); ++k) {
    for (Eigen::SparseMatrix<Complex>::InnerIterator it(h, k); it; ++it) {
      scale = std::max(scale, std::abs(it.value()));
    }
  }
  Eigen::SparseMatrix<Complex> anti = h - adj;
  for (int k = 0; k < anti.outerSize(); ++k) {
    for (Eigen::SparseMatrix<Complex>::InnerIterator it(anti, k); it; ++it) {
      if (std::abs(it.value()) > kHermTol * scale) {
        throw std::invalid_argument(
            "SparseHermitian: input is not Hermitian (deviation " +
            std::to_string(std::abs(it.value())) + " at (" + std::to_string(it.row()) + "," +
            std::to_string(it.col()) + "))");
      }
    }
  }
  const Eigen::SparseMatrix<Complex> sym = ((h + adj) * Complex{0.5, 0.0}).pruned();

  std::vector<SparseEntry> entries;
  entries.reserve(static_cast<std::size_t>(sym.nonZeros()));
  for (int k = 0; k < sym.outerSize(); ++k) {
    for (Eigen::SparseMatrix<Complex>::InnerIterator it(sym, k); it; ++it) {
      if (std::abs(it.value()) <= kDropTol) continue;
      entries.push_back({static_cast<BasisIndex>(it.row()), static_cast<BasisIndex>(it.col()),
                         it.value()});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const SparseEntry& a, const SparseEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  return SparseHermitian(static_cast<BasisIndex>(h.rows()), std::move(entries));
}

Eigen::MatrixXcd SparseHermitian::to_dense() const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_, dim_);
  for (const SparseEntry& e : entries_) out(e.row, e.col) = e.value;
  return out;
}

Eigen::SparseMatrix<Complex> SparseHermitian::to_eigen() const {
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(entries_.size());
  for (const SparseEntry& e : entries_) {
    trips.emplace_back(static_cast<int>(e.row), static_cast<int>(e.col), e.value);
  }
  Eigen::SparseMatrix<Complex> out(dim_, dim_);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

double SparseHermitian::norm_max() const {
  double best = 0.0;
  for (const SparseEntry& e : entries_) best = std::max(best, std::abs(e.value));
  return best;
}

std::vector<BasisIndex> SparseHermitian::support() const {
  std::vector<BasisIndex> idx;
  for (const SparseEntry& e : entries_) {
    idx.push_back(e.row);
    idx.push_back(e.col);
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

std::size_t SparseHermitian::max_row_nnz() const {
  std::size_t best = 0, run = 0;
  BasisIndex row = -1;
  for (const SparseEntry& e : entries_) {
    run = (e.row == row) ? run + 1 : 1;
    row = e.row;
    best = std::max(best, run);
  }
  return best;
}

StateVector SparseHermitian::apply(const StateVector& psi) const {
  if (psi.size() != dim_) {
    throw std::invalid_argument("SparseHermitian::apply: dimension mismatch (" +
                                std::to_string(psi.size()) + " vs " + std::to_string(dim_) + ")");
  }
  StateVector out = StateVector::Zero(dim_);
  for (const SparseEntry& e : entries_) out(e.row) += e.value * psi(e.col);
  return out;
}

}  // namespace spinwalk
