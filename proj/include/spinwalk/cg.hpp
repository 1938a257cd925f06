// SPDX-License-Identifier: MIT
//
// Classical computation of the product→coupled change-of-basis coefficients
// via the tridiagonal recurrence of the pair-exchange operator restricted to
// one m-plane. This path never touches the walk machinery, so it serves as
// the independent ground truth the walk results are compared against.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "spinwalk/basis.hpp"
#include "spinwalk/elements.hpp"

namespace spinwalk {

struct CGEntry {
  HalfInt j, m;    ///< coupled label
  HalfInt m1, m2;  ///< product label
  double value = 0.0;
};

/// All coefficients of one pair, ordered plane-major (descending m), then
/// descending j, then ascending k (descending m2) within each column. Every
/// structural slot of a column is listed, including accidental zeros.
struct CGTable {
  SpinPair sp;
  std::vector<CGEntry> entries;
};

/// One coupled column |j,m⟩ expanded over its m-plane in k order: solves
/// (T − λ_j I)C = 0 for the plane's tridiagonal pair-exchange matrix T by
/// backward substitution (last component seeded to 1), normalizes, and fixes
/// the sign so the largest-m1 component is positive.
std::vector<double> cg_column(const SpinPair& sp, HalfInt j, HalfInt m);

CGTable cg_full_table(const SpinPair& sp);

/// The number of structural coefficient slots Σ_m M(m)², in closed form.
std::int64_t cg_entry_count(const SpinPair& sp);

/// Dense orthogonal matrix: rows are encoded product indices, columns are
/// coupled labels in the canonical coupled ordering.
Eigen::MatrixXd cg_unitary(const SpinPair& sp);

}  // namespace spinwalk
