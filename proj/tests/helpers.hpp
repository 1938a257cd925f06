// SPDX-License-Identifier: MIT
//
// Shared helpers for the later test files: coupled-basis matrix assembly from
// the closed-form actions, and a terse half-integer literal.

#pragma once

#include <Eigen/Dense>

#include "spinwalk/basis.hpp"
#include "spinwalk/elements.hpp"

namespace test_util {

inline spinwalk::HalfInt h(int twice) { return spinwalk::HalfInt::from_twice(twice); }

/// Full coupled-basis matrix of one closed-form operator kind, indexed by the
/// canonical coupled ordering.
inline Eigen::MatrixXcd coupled_matrix(spinwalk::OpKind kind, const spinwalk::SpinPair& sp) {
  const auto labels = spinwalk::coupled_labels(sp);
  const auto n = static_cast<Eigen::Index>(labels.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const spinwalk::CoupledAction act =
        spinwalk::coupled_action(kind, sp, labels[static_cast<std::size_t>(c)]);
    for (const auto& [tgt, coeff] : act.terms) {
      out(static_cast<Eigen::Index>(spinwalk::coupled_index(sp, tgt)), c) = coeff;
    }
  }
  return out;
}

}  // namespace test_util
