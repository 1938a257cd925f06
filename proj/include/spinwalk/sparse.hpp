// SPDX-License-Identifier: MIT
//
// Coordinate-list storage for complex Hermitian matrices over the encoded
// basis. Both triangles are stored explicitly, entries are sorted by
// (row, col), and magnitudes at or below the drop tolerance are pruned, so
// two equal operators assemble to byte-identical entry lists.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "spinwalk/basis.hpp"
#include "spinwalk/elements.hpp"

namespace spinwalk {

/// Complex amplitude vector over encoded basis indices.
using StateVector = Eigen::VectorXcd;

struct SparseEntry {
  BasisIndex row = 0;
  BasisIndex col = 0;
  Complex value{0.0, 0.0};
};

class SparseHermitian {
 public:
  /// Magnitudes at or below this are dropped during assembly.
  static constexpr double kDropTol = 1e-13;
  /// Inputs whose anti-Hermitian part exceeds this (relative to the largest
  /// magnitude present) are rejected rather than silently symmetrized.
  static constexpr double kHermTol = 1e-12;

  SparseHermitian() = default;

  /// Wrap a dense matrix. Checks Hermiticity to kHermTol, then stores the
  /// exactly symmetrized average (H + H†)/2 with small entries dropped.
  static SparseHermitian from_dense(const Eigen::MatrixXcd& h);

  /// Same contract as from_dense for an already-sparse assembly.
  static SparseHermitian from_eigen(const Eigen::SparseMatrix<Complex>& h);

  [[nodiscard]] BasisIndex dim() const { return dim_; }
  [[nodiscard]] const std::vector<SparseEntry>& entries() const { return entries_; }
  [[nodiscard]] std::size_t nnz() const { return entries_.size(); }

  [[nodiscard]] Eigen::MatrixXcd to_dense() const;
  [[nodiscard]] Eigen::SparseMatrix<Complex> to_eigen() const;

  /// Largest entry magnitude (0 for an all-zero matrix).
  [[nodiscard]] double norm_max() const;

  /// Sorted list of basis indices that carry at least one entry.
  [[nodiscard]] std::vector<BasisIndex> support() const;

  /// Largest number of stored entries in any single row.
  [[nodiscard]] std::size_t max_row_nnz() const;

  /// H·ψ without densifying.
  [[nodiscard]] StateVector apply(const StateVector& psi) const;

 private:
  SparseHermitian(BasisIndex dim, std::vector<SparseEntry> entries)
      : dim_(dim), entries_(std::move(entries)) {}

  BasisIndex dim_ = 0;
  std::vector<SparseEntry> entries_;  // sorted by (row, col), both triangles
};

}  // namespace spinwalk
